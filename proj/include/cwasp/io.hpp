#pragma once

// JSON views of graphs, expressions, DP tables and partitioned-clique
// instances (nlohmann::json, insertion-ordered for byte-stable output).

#include <string>
#include <vector>

#include "json.hpp"

#include "cwasp/dp_asp.hpp"
#include "cwasp/dp_classical.hpp"
#include "cwasp/error.hpp"
#include "cwasp/expression.hpp"
#include "cwasp/generators.hpp"
#include "cwasp/graph.hpp"

namespace cwasp {

using Json = nlohmann::ordered_json;

namespace detail {

inline Json vertices_json(const VertexTable& t) {
  Json vs = Json::array();
  for (const auto& v : t.vertices()) {
    vs.push_back({{"id", v.name}, {"kind", v.kind == VertexKind::kAtom ? "atom" : "rule"}});
  }
  return vs;
}

inline Vertex vertex_from_json(const Json& j) {
  if (j.is_string()) return Vertex::atom(j.get<std::string>());
  std::string kind = j.value("kind", "atom");
  if (kind != "atom" && kind != "rule") throw ValidationError("vertex kind must be 'atom' or 'rule'");
  return {kind == "atom" ? VertexKind::kAtom : VertexKind::kRule, j.at("id").get<std::string>()};
}

}  // namespace detail

inline Json to_json(const Digraph& d) {
  Json adj = Json::array();
  for (VertexIndex v = 0; v < d.size(); ++v) adj.push_back(d.out(v));
  return {{"type", "digraph"}, {"vertices", detail::vertices_json(d)}, {"adjacency", adj}};
}

inline Json to_json(const UGraph& g) {
  std::vector<std::vector<VertexIndex>> adj(g.size());
  for (const auto& [u, v] : g.edges()) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return {{"type", "graph"}, {"vertices", detail::vertices_json(g)}, {"adjacency", adj}};
}

inline Json to_json(const SignedGraph& g) {
  Json adj = Json::array();
  std::vector<Json> rows(g.size(), Json::array());
  for (const auto& [e, s] : g.edges()) {
    rows[e.first].push_back({{"to", e.second}, {"sign", to_string(s)}});
    rows[e.second].push_back({{"to", e.first}, {"sign", to_string(s)}});
  }
  for (auto& r : rows) {
    std::sort(r.begin(), r.end(), [](const Json& a, const Json& b) { return a["to"] < b["to"]; });
    adj.push_back(std::move(r));
  }
  return {{"type", "signed_graph"}, {"vertices", detail::vertices_json(g)}, {"adjacency", adj}};
}

inline Json to_json(const LabeledSignedGraph& g) {
  Json j = to_json(g.graph);
  j["type"] = "labeled_signed_graph";
  j["labels"] = g.labels;
  return j;
}

/// Reads the digraph adjacency format written by to_json(const Digraph&).
/// Vertices may also be given as plain strings (atoms).
inline Digraph digraph_from_json(const Json& j) {
  try {
    std::vector<Vertex> vs;
    for (const auto& v : j.at("vertices")) vs.push_back(detail::vertex_from_json(v));
    Digraph d(std::move(vs));
    const auto& adj = j.at("adjacency");
    if (adj.size() != d.size()) throw ValidationError("adjacency must have one row per vertex");
    for (VertexIndex u = 0; u < d.size(); ++u) {
      for (const auto& w : adj[u]) d.add_arc(u, w.get<VertexIndex>());
    }
    return d;
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed digraph JSON: ") + e.what());
  }
}

/// Mirrors the text grammar: {"op":"eta","sign":"h","i":1,"j":2,"child":{...}}.
inline Json to_json(const Expression& e) {
  std::vector<Json> sub(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    const ExprNode& n = e.node(i);
    switch (n.op) {
      case Op::kIntroduce:
        sub[i] = {{"op", n.vertex.kind == VertexKind::kAtom ? "a" : "r"}, {"label", n.label}, {"id", n.vertex.name}};
        break;
      case Op::kUnion:
        sub[i] = {{"op", "oplus"}, {"left", std::move(sub[n.left])}, {"right", std::move(sub[n.right])}};
        break;
      case Op::kRelabel:
        sub[i] = {{"op", "rho"}, {"from", n.label}, {"to", n.label2}, {"child", std::move(sub[n.left])}};
        break;
      case Op::kEdge:
        sub[i] = {{"op", "eta"},  {"sign", to_string(n.sign)}, {"i", n.label},
                  {"j", n.label2}, {"child", std::move(sub[n.left])}};
        break;
    }
  }
  return sub.back();
}

inline Json to_json(const KTriple& q) { return Json::array({q.t.labels(), q.f.labels(), q.u.labels()}); }

inline Json to_json(const KPair& p) {
  Json gamma = Json::array();
  for (const auto& r : p.gamma) gamma.push_back(to_json(r));
  return {{"q", to_json(p.q)}, {"gamma", gamma}};
}

/// One entry per expression node (post-order): descriptor plus sorted table.
inline Json trace_json(const Expression& e, const std::vector<TripleSet>& trace) {
  Json nodes = Json::array();
  for (std::size_t i = 0; i < trace.size(); ++i) {
    Json triples = Json::array();
    for (const auto& q : trace[i]) triples.push_back(to_json(q));
    nodes.push_back({{"node", i}, {"op", describe(e.node(i))}, {"triples", triples}});
  }
  return {{"mode", "classical"}, {"nodes", nodes}};
}

inline Json trace_json(const Expression& e, const std::vector<PairSet>& trace) {
  Json nodes = Json::array();
  for (std::size_t i = 0; i < trace.size(); ++i) {
    Json pairs = Json::array();
    for (const auto& p : trace[i]) pairs.push_back(to_json(p));
    nodes.push_back({{"node", i}, {"op", describe(e.node(i))}, {"pairs", pairs}});
  }
  return {{"mode", "asp"}, {"nodes", nodes}};
}

/// {"k":2,"part_size":2,"parts":[["v1_1","v2_1"],["v1_2","v2_2"]],"edges":[["v1_1","v1_2"]]}
inline Json to_json(const KPartiteGraph& g) {
  Json parts = Json::array();
  for (std::size_t p = 0; p < g.k; ++p) {
    Json part = Json::array();
    for (std::size_t i = 0; i < g.part_size; ++i) part.push_back(part_vertex_name({p, i}));
    parts.push_back(part);
  }
  Json edges = Json::array();
  for (const auto& [a, b] : g.edges) edges.push_back({part_vertex_name(a), part_vertex_name(b)});
  return {{"k", g.k}, {"part_size", g.part_size}, {"parts", parts}, {"edges", edges}};
}

/// Vertex names in "parts" are arbitrary; their position fixes v_i^j.
inline KPartiteGraph kpartite_from_json(const Json& j) {
  try {
    KPartiteGraph g;
    const auto& parts = j.at("parts");
    g.k = parts.size();
    g.part_size = g.k ? parts[0].size() : 0;
    std::map<std::string, PartVertex> where;
    for (std::size_t p = 0; p < g.k; ++p) {
      if (parts[p].size() != g.part_size) throw ValidationError("parts must have equal size");
      for (std::size_t i = 0; i < g.part_size; ++i) {
        if (!where.emplace(parts[p][i].get<std::string>(), PartVertex{p, i}).second) {
          throw ValidationError("vertex listed twice in parts");
        }
      }
    }
    for (const auto& e : j.at("edges")) {
      auto a = where.find(e.at(0).get<std::string>());
      auto b = where.find(e.at(1).get<std::string>());
      if (a == where.end() || b == where.end()) throw ValidationError("edge references an unknown vertex");
      g.add_edge(a->second, b->second);
    }
    return g;
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed k-partite graph JSON: ") + e.what());
  }
}

inline Json to_json(const GraphMismatch& m) {
  return {{"ok", m.ok()}, {"issues", m.lines()}};
}

}  // namespace cwasp
