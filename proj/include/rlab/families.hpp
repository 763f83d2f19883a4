#pragma once

#include <memory>
#include <numeric>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "rlab/graph.hpp"
#include "rlab/graph6.hpp"
#include "rlab/pattern.hpp"

namespace rlab {

struct FamilyDescriptor;

namespace family {
struct Turan { int n; int k; };
struct CompleteMultipartite { std::vector<int> sizes; };
struct Clique { int t; };
struct Cycle { int length; };
struct Path { int vertices; };
/// Five parts of size m; perfect matchings V1-V2 and V3-V4, complete elsewhere.
struct Hm { int m; };
/// 2^r + 1 parts of size m; perfect matchings V_{2i-1}-V_{2i} for i <= 2^(r-1).
struct Hmr { int m; int r; };
struct Blowup { std::shared_ptr<const FamilyDescriptor> base; int m; };
struct Literal { Graph g; };
}  // namespace family

/// Named graph recipe. Build with `build_named`.
struct FamilyDescriptor {
  std::variant<family::Turan, family::CompleteMultipartite, family::Clique, family::Cycle,
               family::Path, family::Hm, family::Hmr, family::Blowup, family::Literal>
      kind;
};

namespace detail {

inline void check_capacity(long n) {
  if (n > kMaxVertices)
    throw CapacityError("family needs " + std::to_string(n) + " vertices, capacity is " +
                        std::to_string(kMaxVertices));
}

inline Graph multipartite(const std::vector<int>& sizes) {
  long total = 0;
  for (int s : sizes) {
    if (s < 1) throw InvalidArgument("multipartite part sizes must be >= 1");
    total += s;
  }
  check_capacity(total);
  Graph g(static_cast<int>(total));
  std::vector<int> label;
  for (int p = 0; p < static_cast<int>(sizes.size()); ++p) label.insert(label.end(), sizes[p], p);
  for (int u = 0; u < g.n(); ++u)
    for (int v = u + 1; v < g.n(); ++v)
      if (label[u] != label[v]) g.add_edge(u, v);
  g.set_parts(std::move(label));
  return g;
}

inline Graph matched_parts(int m, int parts, int matched_pairs) {
  if (m < 1) throw InvalidArgument("part size m must be >= 1");
  check_capacity(static_cast<long>(m) * parts);
  Graph g(m * parts);
  std::vector<int> label(g.n());
  for (int v = 0; v < g.n(); ++v) label[v] = v / m;
  for (int a = 0; a < parts; ++a) {
    for (int b = a + 1; b < parts; ++b) {
      const bool matched = (a % 2 == 0) && b == a + 1 && a / 2 < matched_pairs;
      for (int i = 0; i < m; ++i) {
        if (matched) {
          g.add_edge(a * m + i, b * m + i);
        } else {
          for (int j = 0; j < m; ++j) g.add_edge(a * m + i, b * m + j);
        }
      }
    }
  }
  g.set_parts(std::move(label));
  return g;
}

}  // namespace detail

inline Graph build_named(const FamilyDescriptor& fd) {
  return std::visit(
      [](const auto& f) -> Graph {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, family::Turan>) {
          if (f.k < 1) throw InvalidArgument("Turan graph needs k >= 1");
          if (f.n < 0) throw InvalidArgument("Turan graph needs n >= 0");
          if (f.k > f.n) throw InvalidArgument("Turan graph needs k <= n");
          detail::check_capacity(f.n);
          std::vector<int> sizes(f.k, f.n / f.k);
          for (int i = 0; i < f.n % f.k; ++i) ++sizes[i];
          return detail::multipartite(sizes);
        } else if constexpr (std::is_same_v<F, family::CompleteMultipartite>) {
          if (f.sizes.empty()) throw InvalidArgument("multipartite graph needs at least one part");
          return detail::multipartite(f.sizes);
        } else if constexpr (std::is_same_v<F, family::Clique>) {
          if (f.t < 1) throw InvalidArgument("clique needs t >= 1");
          detail::check_capacity(f.t);
          return Graph::complete(f.t);
        } else if constexpr (std::is_same_v<F, family::Cycle>) {
          if (f.length < 3) throw InvalidArgument("cycle needs length >= 3");
          detail::check_capacity(f.length);
          return PatternSpec::cycle(f.length).graph();
        } else if constexpr (std::is_same_v<F, family::Path>) {
          if (f.vertices < 1) throw InvalidArgument("path needs at least one vertex");
          detail::check_capacity(f.vertices);
          return PatternSpec::path(f.vertices).graph();
        } else if constexpr (std::is_same_v<F, family::Hm>) {
          return detail::matched_parts(f.m, 5, 2);
        } else if constexpr (std::is_same_v<F, family::Hmr>) {
          if (f.r < 1) throw InvalidArgument("H_{m,r} needs r >= 1");
          if (f.r > 6) throw CapacityError("H_{m,r} with r > 6 exceeds capacity");
          const int parts = (1 << f.r) + 1;
          return detail::matched_parts(f.m, parts, 1 << (f.r - 1));
        } else if constexpr (std::is_same_v<F, family::Blowup>) {
          if (!f.base) throw InvalidArgument("blow-up needs a base graph");
          if (f.m < 1) throw InvalidArgument("blow-up factor must be >= 1");
          const Graph base = build_named(*f.base);
          detail::check_capacity(static_cast<long>(base.n()) * f.m);
          Graph g(base.n() * f.m);
          for (const auto& e : base.edges())
            for (int i = 0; i < f.m; ++i)
              for (int j = 0; j < f.m; ++j) g.add_edge(e.u * f.m + i, e.v * f.m + j);
          std::vector<int> label(g.n());
          for (int v = 0; v < g.n(); ++v) label[v] = base.has_parts() ? base.parts()[v / f.m] : v / f.m;
          if (g.n() > 0) g.set_parts(std::move(label));
          return g;
        } else {
          return f.g;
        }
      },
      fd.kind);
}

inline FamilyDescriptor turan(int n, int k) { return {family::Turan{n, k}}; }
inline FamilyDescriptor complete_multipartite(std::vector<int> sizes) {
  return {family::CompleteMultipartite{std::move(sizes)}};
}
inline FamilyDescriptor hm(int m) { return {family::Hm{m}}; }
inline FamilyDescriptor hmr(int m, int r) { return {family::Hmr{m, r}}; }
inline FamilyDescriptor blowup(FamilyDescriptor base, int m) {
  return {family::Blowup{std::make_shared<const FamilyDescriptor>(std::move(base)), m}};
}
inline FamilyDescriptor literal(Graph g) { return {family::Literal{std::move(g)}}; }

// ---------------------------------------------------------------------------
// JSON descriptors: {"family":"turan","n":6,"k":3}, {"graph6":"D?{"}, ...

inline nlohmann::json to_json(const FamilyDescriptor& fd) {
  using nlohmann::json;
  return std::visit(
      [](const auto& f) -> json {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, family::Turan>) return {{"family", "turan"}, {"n", f.n}, {"k", f.k}};
        else if constexpr (std::is_same_v<F, family::CompleteMultipartite>)
          return {{"family", "multipartite"}, {"sizes", f.sizes}};
        else if constexpr (std::is_same_v<F, family::Clique>) return {{"family", "clique"}, {"t", f.t}};
        else if constexpr (std::is_same_v<F, family::Cycle>) return {{"family", "cycle"}, {"length", f.length}};
        else if constexpr (std::is_same_v<F, family::Path>) return {{"family", "path"}, {"vertices", f.vertices}};
        else if constexpr (std::is_same_v<F, family::Hm>) return {{"family", "hm"}, {"m", f.m}};
        else if constexpr (std::is_same_v<F, family::Hmr>) return {{"family", "hmr"}, {"m", f.m}, {"r", f.r}};
        else if constexpr (std::is_same_v<F, family::Blowup>)
          return {{"family", "blowup"}, {"base", to_json(*f.base)}, {"m", f.m}};
        else return {{"graph6", to_graph6(f.g)}};
      },
      fd.kind);
}

inline FamilyDescriptor family_from_json(const nlohmann::json& j) {
  try {
    if (j.contains("graph6")) return literal(from_graph6(j.at("graph6").get<std::string>()));
    const auto name = j.at("family").get<std::string>();
    if (name == "turan") return turan(j.at("n").get<int>(), j.at("k").get<int>());
    if (name == "multipartite") return complete_multipartite(j.at("sizes").get<std::vector<int>>());
    if (name == "clique") return {family::Clique{j.at("t").get<int>()}};
    if (name == "cycle") return {family::Cycle{j.at("length").get<int>()}};
    if (name == "path") return {family::Path{j.at("vertices").get<int>()}};
    if (name == "hm") return hm(j.at("m").get<int>());
    if (name == "hmr") return hmr(j.at("m").get<int>(), j.at("r").get<int>());
    if (name == "blowup") return blowup(family_from_json(j.at("base")), j.at("m").get<int>());
    throw ParseError("unknown family '" + name + "'");
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("family descriptor: ") + e.what());
  }
}

namespace detail {
inline int parse_int(std::string_view s) {
  if (s.empty()) throw ParseError("expected an integer");
  int v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') throw ParseError("expected an integer, got '" + std::string(s) + "'");
    v = v * 10 + (c - '0');
    if (v > 1'000'000) throw ParseError("integer too large");
  }
  return v;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto end = s.find(sep, start);
    out.push_back(s.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}
}  // namespace detail

/// Parses a host description: a JSON descriptor, a short form
/// (turan:6:3, multipartite:2,2,2, hm:2, hmr:1:3, blowup:2:<inner>,
/// K5, C5, P4, g6:<graph6>) or, as a last resort, a bare graph6 string.
inline FamilyDescriptor parse_family(std::string_view s) {
  if (!s.empty() && s.front() == '{') {
    try {
      return family_from_json(nlohmann::json::parse(s));
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("family JSON: ") + e.what());
    }
  }
  if (s.substr(0, 3) == "g6:") return literal(from_graph6(s.substr(3)));
  auto colon = s.find(':');
  const std::string_view head = s.substr(0, colon);
  const std::string_view rest = colon == std::string_view::npos ? std::string_view{} : s.substr(colon + 1);
  if (head == "turan") {
    auto f = detail::split(rest, ':');
    if (f.size() != 2) throw ParseError("expected turan:<n>:<k>");
    return turan(detail::parse_int(f[0]), detail::parse_int(f[1]));
  }
  if (head == "multipartite") {
    std::vector<int> sizes;
    for (auto p : detail::split(rest, ',')) sizes.push_back(detail::parse_int(p));
    return complete_multipartite(sizes);
  }
  if (head == "hm") return hm(detail::parse_int(rest));
  if (head == "hmr") {
    auto f = detail::split(rest, ':');
    if (f.size() != 2) throw ParseError("expected hmr:<m>:<r>");
    return hmr(detail::parse_int(f[0]), detail::parse_int(f[1]));
  }
  if (head == "blowup") {
    auto c2 = rest.find(':');
    if (c2 == std::string_view::npos) throw ParseError("expected blowup:<m>:<base>");
    return blowup(parse_family(rest.substr(c2 + 1)), detail::parse_int(rest.substr(0, c2)));
  }
  if (head == "clique") return {family::Clique{detail::parse_int(rest)}};
  if (head == "cycle") return {family::Cycle{detail::parse_int(rest)}};
  if (head == "path") return {family::Path{detail::parse_int(rest)}};
  if (colon == std::string_view::npos && s.size() >= 2) {
    bool digits = true;
    for (char c : s.substr(1)) digits = digits && c >= '0' && c <= '9';
    if (digits) {
      const int v = detail::parse_int(s.substr(1));
      if (s[0] == 'K') return {family::Clique{v}};
      if (s[0] == 'C') return {family::Cycle{v}};
      if (s[0] == 'P') return {family::Path{v}};
    }
  }
  return literal(from_graph6(s));
}

}  // namespace rlab
