#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cwasp/error.hpp"
#include "cwasp/program.hpp"

namespace cwasp {

enum class VertexKind { kAtom, kRule };

/// Graph vertex identity: atoms and rules live in separate namespaces.
struct Vertex {
  VertexKind kind = VertexKind::kAtom;
  std::string name;

  static Vertex atom(std::string n) { return {VertexKind::kAtom, std::move(n)}; }
  static Vertex rule(std::string n) { return {VertexKind::kRule, std::move(n)}; }

  friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

inline std::string to_string(const Vertex& v) {
  return (v.kind == VertexKind::kAtom ? "a(" : "r(") + v.name + ")";
}

/// Edge signs: head, positive body, negative body, and the joined label α.
enum class Sign { kHead, kPos, kNeg, kAlpha };

inline std::string_view to_string(Sign s) {
  switch (s) {
    case Sign::kHead: return "h";
    case Sign::kPos: return "p";
    case Sign::kNeg: return "n";
    case Sign::kAlpha: return "alpha";
  }
  return "?";
}

inline std::optional<Sign> parse_sign(std::string_view s) {
  if (s == "h") return Sign::kHead;
  if (s == "p") return Sign::kPos;
  if (s == "n") return Sign::kNeg;
  if (s == "alpha") return Sign::kAlpha;
  return std::nullopt;
}

using VertexIndex = std::size_t;
using VertexPair = std::pair<VertexIndex, VertexIndex>;

namespace detail {

class VertexTable {
 public:
  VertexTable() = default;
  explicit VertexTable(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
    for (VertexIndex i = 0; i < vertices_.size(); ++i) {
      if (!index_.emplace(vertices_[i], i).second) {
        throw ValidationError("duplicate vertex " + to_string(vertices_[i]));
      }
    }
  }

  const std::vector<Vertex>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  const Vertex& vertex(VertexIndex i) const { return vertices_.at(i); }

  std::optional<VertexIndex> find(const Vertex& v) const {
    auto it = index_.find(v);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  VertexIndex index_of(const Vertex& v) const {
    auto i = find(v);
    if (!i) throw ValidationError("unknown vertex " + to_string(v));
    return *i;
  }

  VertexIndex add(Vertex v) {
    if (!index_.emplace(v, vertices_.size()).second) throw ValidationError("duplicate vertex " + to_string(v));
    vertices_.push_back(std::move(v));
    return vertices_.size() - 1;
  }

  void check(VertexIndex i) const {
    if (i >= vertices_.size()) throw ValidationError("vertex index out of range");
  }

 private:
  std::vector<Vertex> vertices_;
  std::map<Vertex, VertexIndex> index_;
};

}  // namespace detail

/// Simple digraph: no self-loops, no parallel arcs.
class Digraph : public detail::VertexTable {
 public:
  Digraph() = default;
  explicit Digraph(std::vector<Vertex> vertices)
      : VertexTable(std::move(vertices)), out_(size()) {}

  VertexIndex add_vertex(Vertex v) {
    VertexIndex i = add(std::move(v));
    out_.emplace_back();
    return i;
  }

  /// Returns false if the arc already exists.
  bool add_arc(VertexIndex from, VertexIndex to) {
    check(from);
    check(to);
    if (from == to) throw ValidationError("self-loop on " + to_string(vertex(from)));
    if (!arcs_.emplace(from, to).second) return false;
    auto& adj = out_[from];
    adj.insert(std::upper_bound(adj.begin(), adj.end(), to), to);
    return true;
  }

  bool has_arc(VertexIndex from, VertexIndex to) const { return arcs_.count({from, to}) != 0; }
  const std::set<VertexPair>& arcs() const { return arcs_; }
  const std::vector<VertexIndex>& out(VertexIndex v) const { return out_.at(v); }

  friend bool operator==(const Digraph& a, const Digraph& b) {
    return a.vertices() == b.vertices() && a.arcs_ == b.arcs_;
  }

 private:
  std::vector<std::vector<VertexIndex>> out_;
  std::set<VertexPair> arcs_;
};

/// Simple undirected graph. Edges are stored with the smaller index first.
class UGraph : public detail::VertexTable {
 public:
  UGraph() = default;
  explicit UGraph(std::vector<Vertex> vertices) : VertexTable(std::move(vertices)) {}

  VertexIndex add_vertex(Vertex v) { return add(std::move(v)); }

  bool add_edge(VertexIndex u, VertexIndex v) {
    check(u);
    check(v);
    if (u == v) throw ValidationError("self-loop on " + to_string(vertex(u)));
    return edges_.emplace(std::min(u, v), std::max(u, v)).second;
  }

  bool has_edge(VertexIndex u, VertexIndex v) const { return edges_.count({std::min(u, v), std::max(u, v)}) != 0; }
  const std::set<VertexPair>& edges() const { return edges_; }

  friend bool operator==(const UGraph& a, const UGraph& b) {
    return a.vertices() == b.vertices() && a.edges_ == b.edges_;
  }

 private:
  std::set<VertexPair> edges_;
};

/// Undirected graph with exactly one sign per edge.
class SignedGraph : public detail::VertexTable {
 public:
  SignedGraph() = default;
  explicit SignedGraph(std::vector<Vertex> vertices) : VertexTable(std::move(vertices)) {}

  VertexIndex add_vertex(Vertex v) { return add(std::move(v)); }

  /// Returns false if the edge already exists with the same sign; throws
  /// EvaluationError if it exists with a different one.
  bool add_edge(VertexIndex u, VertexIndex v, Sign sign) {
    check(u);
    check(v);
    if (u == v) throw ValidationError("self-loop on " + to_string(vertex(u)));
    auto [it, fresh] = edges_.emplace(VertexPair{std::min(u, v), std::max(u, v)}, sign);
    if (!fresh && it->second != sign) {
      throw EvaluationError("sign conflict on edge " + to_string(vertex(u)) + " -- " + to_string(vertex(v)) +
                            ": " + std::string(to_string(it->second)) + " vs " + std::string(to_string(sign)));
    }
    return fresh;
  }

  std::optional<Sign> sign(VertexIndex u, VertexIndex v) const {
    auto it = edges_.find({std::min(u, v), std::max(u, v)});
    if (it == edges_.end()) return std::nullopt;
    return it->second;
  }
  const std::map<VertexPair, Sign>& edges() const { return edges_; }

  /// Every edge joins an atom vertex and a rule vertex.
  bool is_atom_rule_bipartite() const {
    return std::all_of(edges_.begin(), edges_.end(), [this](const auto& e) {
      return vertex(e.first.first).kind != vertex(e.first.second).kind;
    });
  }

  UGraph unsigned_graph() const {
    UGraph g(vertices());
    for (const auto& [e, s] : edges_) g.add_edge(e.first, e.second);
    return g;
  }

  friend bool operator==(const SignedGraph& a, const SignedGraph& b) {
    return a.vertices() == b.vertices() && a.edges_ == b.edges_;
  }

 private:
  std::map<VertexPair, Sign> edges_;
};

/// Vertex labeling L: V -> [k].
using Labeling = std::map<Vertex, int>;

/// A k-graph: signed graph plus a label for every vertex.
struct LabeledSignedGraph {
  SignedGraph graph;
  std::vector<int> labels;  // parallel to graph.vertices()

  Labeling labeling() const {
    Labeling out;
    for (VertexIndex i = 0; i < graph.size(); ++i) out.emplace(graph.vertex(i), labels.at(i));
    return out;
  }
};

inline std::vector<Vertex> program_vertices(const Program& program) {
  std::vector<Vertex> vs;
  for (const auto& a : program.atoms()) vs.push_back(Vertex::atom(a));
  for (const auto& r : program.rules()) vs.push_back(Vertex::rule(r.id));
  return vs;
}

/// depG: arc (x,y) iff some rule has x in its head and y in its body, or x,y
/// both in its head.
inline Digraph build_dependency_graph(const Program& program) {
  std::vector<Vertex> vs;
  for (const auto& a : program.atoms()) vs.push_back(Vertex::atom(a));
  Digraph d(std::move(vs));
  for (const Rule& r : program.rules()) {
    for (AtomId x : r.head) {
      for (AtomId y : r.pos_body) d.add_arc(x, y);
      for (AtomId y : r.neg_body) d.add_arc(x, y);
      for (AtomId y : r.head) {
        if (x != y) d.add_arc(x, y);
      }
    }
  }
  return d;
}

/// sincG: atoms first, then rules; one signed edge per occurrence.
inline SignedGraph build_signed_incidence_graph(const Program& program) {
  SignedGraph g(program_vertices(program));
  const std::size_t base = program.num_atoms();
  for (std::size_t r = 0; r < program.num_rules(); ++r) {
    const Rule& rule = program.rules()[r];
    for (AtomId a : rule.head) g.add_edge(a, base + r, Sign::kHead);
    for (AtomId a : rule.pos_body) g.add_edge(a, base + r, Sign::kPos);
    for (AtomId a : rule.neg_body) g.add_edge(a, base + r, Sign::kNeg);
  }
  return g;
}

inline UGraph build_incidence_graph(const Program& program) {
  return build_signed_incidence_graph(program).unsigned_graph();
}

/// sincG_L: every sign in `joined` is renamed to α.
inline SignedGraph join_signs(const SignedGraph& g, const std::set<Sign>& joined) {
  SignedGraph out(g.vertices());
  for (const auto& [e, s] : g.edges()) out.add_edge(e.first, e.second, joined.count(s) ? Sign::kAlpha : s);
  return out;
}

inline Digraph symmetric_closure(const Digraph& d) {
  Digraph out(d.vertices());
  for (const auto& [u, v] : d.arcs()) {
    out.add_arc(u, v);
    out.add_arc(v, u);
  }
  return out;
}

inline UGraph underlying_undirected(const Digraph& d) {
  UGraph out(d.vertices());
  for (const auto& [u, v] : d.arcs()) out.add_edge(u, v);
  return out;
}

namespace detail {

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

inline std::string dot_vertices(const VertexTable& t, const std::vector<int>* labels = nullptr) {
  std::string out;
  for (VertexIndex i = 0; i < t.size(); ++i) {
    const Vertex& v = t.vertex(i);
    out += "  v" + std::to_string(i) + " [label=" + dot_quote(v.name) + ", kind=" +
           (v.kind == VertexKind::kAtom ? "atom, shape=circle" : "rule, shape=box");
    if (labels) out += ", k=" + std::to_string(labels->at(i));
    out += "];\n";
  }
  return out;
}

}  // namespace detail

inline std::string to_dot(const Digraph& d) {
  std::string out = "digraph G {\n" + detail::dot_vertices(d);
  for (const auto& [u, v] : d.arcs()) out += "  v" + std::to_string(u) + " -> v" + std::to_string(v) + ";\n";
  return out + "}\n";
}

inline std::string to_dot(const UGraph& g) {
  std::string out = "graph G {\n" + detail::dot_vertices(g);
  for (const auto& [u, v] : g.edges()) out += "  v" + std::to_string(u) + " -- v" + std::to_string(v) + ";\n";
  return out + "}\n";
}

inline std::string to_dot(const SignedGraph& g, const std::vector<int>* labels = nullptr) {
  std::string out = "graph G {\n" + detail::dot_vertices(g, labels);
  for (const auto& [e, s] : g.edges()) {
    out += "  v" + std::to_string(e.first) + " -- v" + std::to_string(e.second) + " [sign=" +
           std::string(to_string(s)) + ", label=" + std::string(to_string(s)) + "];\n";
  }
  return out + "}\n";
}

inline std::string to_dot(const LabeledSignedGraph& g) { return to_dot(g.graph, &g.labels); }

}  // namespace cwasp
