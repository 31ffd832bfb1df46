#pragma once

// Test-side reference implementations. These avoid the library's own
// machinery (no bitmasks, no memo tables) so they work as independent oracles.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cwasp/cwasp.hpp"

namespace cwasp::ref {

using Names = std::set<std::string>;

/// A rule spelled with atom names.
struct NamedRule {
  Names head, pos, neg;
};

inline std::vector<NamedRule> named_rules(const Program& p) {
  std::vector<NamedRule> out;
  for (const auto& r : p.rules()) {
    NamedRule n;
    for (AtomId a : r.head) n.head.insert(p.atom_name(a));
    for (AtomId a : r.pos_body) n.pos.insert(p.atom_name(a));
    for (AtomId a : r.neg_body) n.neg.insert(p.atom_name(a));
    out.push_back(n);
  }
  return out;
}

inline bool meets(const Names& a, const Names& b) {
  return std::any_of(a.begin(), a.end(), [&](const std::string& x) { return b.count(x) != 0; });
}

inline bool within(const Names& a, const Names& b) {
  return std::all_of(a.begin(), a.end(), [&](const std::string& x) { return b.count(x) != 0; });
}

inline bool satisfies(const NamedRule& r, const Names& i) {
  bool body = within(r.pos, i) && !meets(r.neg, i);
  return !body || meets(r.head, i);
}

inline bool models(const std::vector<NamedRule>& rules, const Names& i) {
  return std::all_of(rules.begin(), rules.end(), [&](const NamedRule& r) { return satisfies(r, i); });
}

/// Every subset of `atoms` (recursive, no bit masks).
inline std::vector<Names> all_subsets(const std::vector<std::string>& atoms) {
  std::vector<Names> out{{}};
  for (const auto& a : atoms) {
    std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i) {
      Names s = out[i];
      s.insert(a);
      out.push_back(std::move(s));
    }
  }
  return out;
}

inline std::vector<NamedRule> gl_reduct(const std::vector<NamedRule>& rules, const Names& m) {
  std::vector<NamedRule> out;
  for (const auto& r : rules) {
    if (!meets(r.neg, m)) out.push_back({r.head, r.pos, {}});
  }
  return out;
}

inline bool stable(const std::vector<NamedRule>& rules, const std::vector<std::string>& atoms, const Names& m) {
  if (!models(rules, m)) return false;
  auto red = gl_reduct(rules, m);
  std::vector<std::string> inside(m.begin(), m.end());
  for (const auto& n : all_subsets(inside)) {
    if (n.size() < m.size() && models(red, n)) return false;
  }
  (void)atoms;
  return true;
}

inline std::size_t count_models(const Program& p) {
  auto rules = named_rules(p);
  std::size_t c = 0;
  for (const auto& s : all_subsets(p.atoms())) c += models(rules, s) ? 1 : 0;
  return c;
}

inline std::size_t count_answer_sets(const Program& p) {
  auto rules = named_rules(p);
  std::size_t c = 0;
  for (const auto& s : all_subsets(p.atoms())) c += stable(rules, p.atoms(), s) ? 1 : 0;
  return c;
}

inline Names names_of(const Program& p, const AtomSet& s) {
  Names out;
  for (AtomId a : s.members()) out.insert(p.atom_name(a));
  return out;
}

inline AtomSet atom_set_of(const Program& p, const Names& names) {
  AtomSet s(p.num_atoms());
  for (const auto& n : names) s.insert(*p.find_atom(n));
  return s;
}

/// The triple an interpretation I induces under `labels` (atom/rule name → label),
/// with the reduct taken w.r.t. `reduct_of` when given.
inline KTriple realized(const Program& p, const std::map<Vertex, int>& labels, const Names& i,
                        const Names* reduct_of = nullptr) {
  KTriple q;
  for (const auto& a : p.atoms()) (i.count(a) ? q.t : q.f).insert(labels.at(Vertex::atom(a)));
  auto rules = named_rules(p);
  for (std::size_t r = 0; r < rules.size(); ++r) {
    NamedRule rule = rules[r];
    if (reduct_of) {
      if (meets(rule.neg, *reduct_of)) continue;
      rule.neg.clear();
    }
    if (!satisfies(rule, i)) q.u.insert(labels.at(Vertex::rule(p.rules()[r].id)));
  }
  return q;
}

// ---------------------------------------------------------------------------
// Cycle-rank straight from the recursive definition on explicit vertex lists.

using Adjacency = std::vector<std::set<int>>;

inline Adjacency adjacency(const Digraph& d) {
  Adjacency adj(d.size());
  for (const auto& [u, v] : d.arcs()) adj[u].insert(static_cast<int>(v));
  return adj;
}

inline bool reaches(const Adjacency& adj, const std::set<int>& alive, int from, int to) {
  std::set<int> seen{from};
  std::vector<int> stack{from};
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int w : adj[u]) {
      if (!alive.count(w)) continue;
      if (w == to) return true;
      if (seen.insert(w).second) stack.push_back(w);
    }
  }
  return false;
}

/// Strongly connected components of the induced subgraph on `alive`.
inline std::vector<std::set<int>> sccs(const Adjacency& adj, const std::set<int>& alive) {
  std::vector<std::set<int>> out;
  std::set<int> done;
  for (int v : alive) {
    if (done.count(v)) continue;
    std::set<int> comp{v};
    for (int w : alive) {
      if (w != v && reaches(adj, alive, v, w) && reaches(adj, alive, w, v)) comp.insert(w);
    }
    done.insert(comp.begin(), comp.end());
    out.push_back(comp);
  }
  return out;
}

inline bool has_cycle(const Adjacency& adj, const std::set<int>& alive) {
  for (int v : alive) {
    if (reaches(adj, alive, v, v)) return true;
  }
  return false;
}

inline int naive_cycle_rank(const Adjacency& adj, const std::set<int>& alive) {
  if (!has_cycle(adj, alive)) return 0;
  auto comps = sccs(adj, alive);
  if (comps.size() == 1) {
    int best = -1;
    for (int v : alive) {
      std::set<int> rest = alive;
      rest.erase(v);
      int r = naive_cycle_rank(adj, rest);
      if (best < 0 || r < best) best = r;
    }
    return 1 + best;
  }
  int worst = 0;
  for (const auto& c : comps) worst = std::max(worst, naive_cycle_rank(adj, c));
  return worst;
}

inline int naive_cycle_rank(const Digraph& d) {
  std::set<int> all;
  for (std::size_t v = 0; v < d.size(); ++v) all.insert(static_cast<int>(v));
  return naive_cycle_rank(adjacency(d), all);
}

// ---------------------------------------------------------------------------
// Generators (independent of the library's own).

inline Digraph random_digraph(std::mt19937_64& rng, std::size_t n, double p) {
  std::vector<Vertex> vs;
  for (std::size_t i = 0; i < n; ++i) vs.push_back(Vertex::atom("v" + std::to_string(i)));
  Digraph d(vs);
  std::bernoulli_distribution coin(p);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (u != v && coin(rng)) d.add_arc(u, v);
    }
  }
  return d;
}

inline Digraph induced(const Digraph& d, const std::vector<std::size_t>& keep) {
  std::vector<Vertex> vs;
  for (auto v : keep) vs.push_back(d.vertex(v));
  Digraph out(vs);
  for (std::size_t a = 0; a < keep.size(); ++a) {
    for (std::size_t b = 0; b < keep.size(); ++b) {
      if (d.has_arc(keep[a], keep[b])) out.add_arc(a, b);
    }
  }
  return out;
}

/// Random valid program: each atom lands in at most one part of each rule.
inline Program random_program(std::mt19937_64& rng, std::size_t max_atoms, std::size_t max_rules) {
  std::uniform_int_distribution<std::size_t> na(1, max_atoms), nr(0, max_rules), part(0, 4);
  std::size_t atoms = na(rng), rules = nr(rng);
  ProgramBuilder b;
  for (std::size_t a = 0; a < atoms; ++a) b.atom("p" + std::to_string(a));
  for (std::size_t r = 0; r < rules; ++r) {
    std::vector<std::string> h, pos, neg;
    for (std::size_t a = 0; a < atoms; ++a) {
      std::string name = "p" + std::to_string(a);
      switch (part(rng)) {
        case 0: h.push_back(name); break;
        case 1: pos.push_back(name); break;
        case 2: neg.push_back(name); break;
        default: break;
      }
    }
    b.rule(h, pos, neg);
  }
  return b.build();
}

}  // namespace cwasp::ref
