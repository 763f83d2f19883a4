#pragma once

#include <string>
#include <string_view>

#include "rlab/graph.hpp"

namespace rlab {

/// graph6 encoding (McKay): size header, then the upper triangle of the
/// adjacency matrix column by column, six bits per printable byte.
inline std::string to_graph6(const Graph& g) {
  const int n = g.n();
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else {
    out.push_back(static_cast<char>(126));
    out.push_back(static_cast<char>(((n >> 12) & 63) + 63));
    out.push_back(static_cast<char>(((n >> 6) & 63) + 63));
    out.push_back(static_cast<char>((n & 63) + 63));
  }
  int acc = 0, nbits = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
      if (++nbits == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = nbits = 0;
      }
    }
  }
  if (nbits > 0) out.push_back(static_cast<char>((acc << (6 - nbits)) + 63));
  return out;
}

inline Graph from_graph6(std::string_view s) {
  constexpr std::string_view kHeader = ">>graph6<<";
  if (s.substr(0, kHeader.size()) == kHeader) s.remove_prefix(kHeader.size());
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.remove_suffix(1);
  if (s.empty()) throw ParseError("empty graph6 string");
  for (char c : s)
    if (c < 63 || c > 126) throw ParseError("graph6: byte out of range 63..126");

  std::size_t pos = 0;
  long n = 0;
  if (s[0] != 126) {
    n = s[0] - 63;
    pos = 1;
  } else {
    if (s.size() >= 2 && s[1] == 126) throw CapacityError("graph6: vertex count exceeds capacity");
    if (s.size() < 4) throw ParseError("graph6: truncated size field");
    n = (long(s[1] - 63) << 12) | (long(s[2] - 63) << 6) | long(s[3] - 63);
    pos = 4;
  }
  if (n > kMaxVertices)
    throw CapacityError("graph6: " + std::to_string(n) + " vertices exceeds capacity");

  const long total = n * (n - 1) / 2;
  const std::size_t need = static_cast<std::size_t>((total + 5) / 6);
  if (s.size() - pos != need) throw ParseError("graph6: wrong data length");

  Graph g(static_cast<int>(n));
  long k = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++k) {
      int byte = s[pos + k / 6] - 63;
      if ((byte >> (5 - k % 6)) & 1) g.add_edge(i, j);
    }
  }
  return g;
}

}  // namespace rlab
