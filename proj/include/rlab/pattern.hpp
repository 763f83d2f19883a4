#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rlab/graph.hpp"
#include "rlab/graph6.hpp"

namespace rlab {

/// Target subgraph of a Ramsey query or density computation.
///
/// `Path(v)` is the path on v vertices (v-1 edges). `Cycle(l)` needs l >= 3.
/// Every kind has a canonical labelled graph (see `graph()`); witnesses are
/// maps from those labels into a host.
class PatternSpec {
 public:
  struct Clique { int t; };
  struct Cycle { int length; };
  struct Path { int vertices; };
  struct Arbitrary { Graph g; };

  static PatternSpec clique(int t) {
    if (t < 1) throw InvalidArgument("clique size must be >= 1");
    return PatternSpec(Clique{t});
  }
  static PatternSpec cycle(int l) {
    if (l < 3) throw InvalidArgument("cycle length must be >= 3");
    return PatternSpec(Cycle{l});
  }
  static PatternSpec path(int v) {
    if (v < 1) throw InvalidArgument("path needs at least one vertex");
    return PatternSpec(Path{v});
  }
  static PatternSpec arbitrary(Graph g) {
    if (g.n() < 1) throw InvalidArgument("arbitrary pattern needs at least one vertex");
    return PatternSpec(Arbitrary{std::move(g)});
  }

  bool is_clique() const { return std::holds_alternative<Clique>(kind_); }
  bool is_cycle() const { return std::holds_alternative<Cycle>(kind_); }
  bool is_path() const { return std::holds_alternative<Path>(kind_); }
  bool is_arbitrary() const { return std::holds_alternative<Arbitrary>(kind_); }

  int clique_size() const { return std::get<Clique>(kind_).t; }
  int cycle_length() const { return std::get<Cycle>(kind_).length; }
  int path_vertices() const { return std::get<Path>(kind_).vertices; }
  const Graph& arbitrary_graph() const { return std::get<Arbitrary>(kind_).g; }

  const auto& kind() const { return kind_; }

  int vertex_count() const {
    return std::visit(
        [](const auto& k) -> int {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, Clique>) return k.t;
          else if constexpr (std::is_same_v<K, Cycle>) return k.length;
          else if constexpr (std::is_same_v<K, Path>) return k.vertices;
          else return k.g.n();
        },
        kind_);
  }

  int edge_count() const { return static_cast<int>(edge_list().size()); }

  /// Canonical labelled graph: K_t on 0..t-1, cycle 0-1-..-(l-1)-0, path 0-1-..-(v-1).
  Graph graph() const { return Graph::from_edges(vertex_count(), edge_list()); }

  std::vector<Edge> edge_list() const {
    std::vector<Edge> out;
    std::visit(
        [&](const auto& k) {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, Clique>) {
            for (int i = 0; i < k.t; ++i)
              for (int j = i + 1; j < k.t; ++j) out.emplace_back(i, j);
          } else if constexpr (std::is_same_v<K, Cycle>) {
            for (int i = 0; i < k.length; ++i) out.emplace_back(i, (i + 1) % k.length);
          } else if constexpr (std::is_same_v<K, Path>) {
            for (int i = 0; i + 1 < k.vertices; ++i) out.emplace_back(i, i + 1);
          } else {
            out = k.g.edges();
          }
        },
        kind_);
    return out;
  }

  /// Short name: K5, C7, P4, or g6:<graph6>.
  std::string name() const {
    return std::visit(
        [](const auto& k) -> std::string {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, Clique>) return "K" + std::to_string(k.t);
          else if constexpr (std::is_same_v<K, Cycle>) return "C" + std::to_string(k.length);
          else if constexpr (std::is_same_v<K, Path>) return "P" + std::to_string(k.vertices);
          else return "g6:" + to_graph6(k.g);
        },
        kind_);
  }

  friend bool operator==(const PatternSpec& a, const PatternSpec& b) {
    if (a.kind_.index() != b.kind_.index()) return false;
    if (a.is_arbitrary()) return a.arbitrary_graph() == b.arbitrary_graph();
    return a.vertex_count() == b.vertex_count();
  }

 private:
  using Kind = std::variant<Clique, Cycle, Path, Arbitrary>;
  explicit PatternSpec(Kind k) : kind_(std::move(k)) {}
  Kind kind_;
};

/// Parses "K5", "C7", "P4", "g6:<graph6>". Whitespace is not allowed.
inline PatternSpec parse_pattern(std::string_view s) {
  if (s.size() >= 3 && s.substr(0, 3) == "g6:") return PatternSpec::arbitrary(from_graph6(s.substr(3)));
  if (s.size() < 2) throw ParseError("bad pattern '" + std::string(s) + "'");
  const char head = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  int value = 0;
  for (char c : s.substr(1)) {
    if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError("bad pattern '" + std::string(s) + "'");
    value = value * 10 + (c - '0');
    if (value > 1000) throw ParseError("pattern size too large");
  }
  switch (head) {
    case 'K': return PatternSpec::clique(value);
    case 'C': return PatternSpec::cycle(value);
    case 'P': return PatternSpec::path(value);
    default: throw ParseError("bad pattern '" + std::string(s) + "'");
  }
}

/// Comma separated list: "C3,C5".
inline std::vector<PatternSpec> parse_pattern_list(std::string_view s) {
  std::vector<PatternSpec> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t end = s.find(',', start);
    if (end == std::string_view::npos) end = s.size();
    out.push_back(parse_pattern(s.substr(start, end - start)));
    start = end + 1;
  }
  return out;
}

inline std::string pattern_list_name(const std::vector<PatternSpec>& list) {
  std::string out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (i) out += ',';
    out += list[i].name();
  }
  return out;
}

}  // namespace rlab
