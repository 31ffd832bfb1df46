#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "cwasp/error.hpp"
#include "cwasp/graph.hpp"
#include "cwasp/program.hpp"

namespace cwasp {

namespace detail {

using Mask = std::uint64_t;

/// Digraph as one out-neighbour bitmask per vertex; at most 64 vertices.
class MaskDigraph {
 public:
  explicit MaskDigraph(const Digraph& d) : out_(d.size(), 0) {
    if (d.size() > 64) throw BoundError("bitmask digraph limited to 64 vertices");
    for (const auto& [u, v] : d.arcs()) out_[u] |= Mask{1} << v;
  }

  std::size_t size() const { return out_.size(); }
  Mask all() const { return out_.size() == 64 ? ~Mask{0} : (Mask{1} << out_.size()) - 1; }

  /// Strongly connected components of the subgraph induced by `s`, in Tarjan
  /// completion order.
  std::vector<Mask> components(Mask s) const {
    std::vector<int> index(out_.size(), -1), low(out_.size(), 0);
    std::vector<int> stack;
    Mask on_stack = 0;
    int counter = 0;
    std::vector<Mask> comps;
    std::function<void(int)> visit = [&](int v) {
      index[v] = low[v] = counter++;
      stack.push_back(v);
      on_stack |= Mask{1} << v;
      for (Mask nb = out_[v] & s; nb != 0; nb &= nb - 1) {
        int w = std::countr_zero(nb);
        if (index[w] < 0) {
          visit(w);
          low[v] = std::min(low[v], low[w]);
        } else if ((on_stack >> w) & 1U) {
          low[v] = std::min(low[v], index[w]);
        }
      }
      if (low[v] == index[v]) {
        Mask comp = 0;
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack &= ~(Mask{1} << w);
          comp |= Mask{1} << w;
        } while (w != v);
        comps.push_back(comp);
      }
    };
    for (Mask rest = s; rest != 0; rest &= rest - 1) {
      int v = std::countr_zero(rest);
      if (index[v] < 0) visit(v);
    }
    return comps;
  }

  /// Components that contain a cycle (no self-loops, so size >= 2).
  std::vector<Mask> cyclic_components(Mask s) const {
    auto comps = components(s);
    std::erase_if(comps, [](Mask c) { return std::popcount(c) < 2; });
    std::sort(comps.begin(), comps.end());
    return comps;
  }

 private:
  std::vector<Mask> out_;
};

class ExactCycleRank {
 public:
  explicit ExactCycleRank(const MaskDigraph& g) : g_(g) {}

  int operator()(Mask s) {
    if (auto it = memo_.find(s); it != memo_.end()) return it->second;
    auto cyclic = g_.cyclic_components(s);
    int result = 0;
    if (cyclic.size() == 1 && cyclic.front() == s) {
      // Strongly connected: lowest-index vertex first on ties.
      int best = -1;
      for (Mask rest = s; rest != 0; rest &= rest - 1) {
        int v = std::countr_zero(rest);
        int r = (*this)(s & ~(Mask{1} << v));
        if (best < 0 || r < best) best = r;
        if (best == 0) break;
      }
      result = 1 + best;
    } else {
      for (Mask c : cyclic) result = std::max(result, (*this)(c));
    }
    memo_.emplace(s, result);
    return result;
  }

 private:
  const MaskDigraph& g_;
  std::unordered_map<Mask, int> memo_;
};

class BoundedCycleRank {
 public:
  explicit BoundedCycleRank(const MaskDigraph& g) : g_(g) {}

  bool at_most(Mask s, int w) {
    auto cyclic = g_.cyclic_components(s);
    for (Mask c : cyclic) {
      if (!strongly_connected_at_most(c, w)) return false;
    }
    return true;
  }

 private:
  // c is strongly connected with at least two vertices.
  bool strongly_connected_at_most(Mask c, int w) {
    if (w <= 0) return false;
    if (std::popcount(c) - 1 <= w) return true;
    auto& known = memo_[c];
    if (known.fails_at >= w) return false;
    if (known.holds_at >= 0 && known.holds_at <= w) return true;
    for (Mask rest = c; rest != 0; rest &= rest - 1) {
      int v = std::countr_zero(rest);
      if (at_most(c & ~(Mask{1} << v), w - 1)) {
        auto& k = memo_[c];
        if (k.holds_at < 0 || w < k.holds_at) k.holds_at = w;
        return true;
      }
    }
    auto& k = memo_[c];
    k.fails_at = std::max(k.fails_at, w);
    return false;
  }

  struct Known {
    int fails_at = -1;  // largest w known to fail
    int holds_at = -1;  // smallest w known to hold
  };

  const MaskDigraph& g_;
  std::unordered_map<Mask, Known> memo_;
};

}  // namespace detail

struct CycleRankOptions {
  std::size_t max_vertices = 16;
};

inline bool is_acyclic(const Digraph& d) {
  if (d.size() <= 64) {
    detail::MaskDigraph g(d);
    return g.cyclic_components(g.all()).empty();
  }
  // Kahn's algorithm for larger graphs.
  std::vector<std::size_t> indeg(d.size(), 0);
  for (const auto& [u, v] : d.arcs()) ++indeg[v];
  std::vector<VertexIndex> ready;
  for (VertexIndex v = 0; v < d.size(); ++v) {
    if (indeg[v] == 0) ready.push_back(v);
  }
  std::size_t seen = 0;
  while (!ready.empty()) {
    VertexIndex v = ready.back();
    ready.pop_back();
    ++seen;
    for (VertexIndex w : d.out(v)) {
      if (--indeg[w] == 0) ready.push_back(w);
    }
  }
  return seen == d.size();
}

/// Exact cycle-rank: 0 on DAGs; 1 + the best single-vertex deletion on a
/// strongly connected digraph; the maximum over strongly connected
/// components otherwise. Memoized over vertex subsets.
inline int cycle_rank(const Digraph& d, const CycleRankOptions& options = {}) {
  if (d.size() > options.max_vertices || d.size() > 64) {
    throw BoundError("cycle-rank exact search bound exceeded: " + std::to_string(d.size()) + " vertices > " +
                     std::to_string(std::min<std::size_t>(options.max_vertices, 64)));
  }
  detail::MaskDigraph g(d);
  detail::ExactCycleRank rank(g);
  return rank(g.all());
}

/// Cycle-rank of the symmetric closure.
inline int undirected_cycle_rank(const Digraph& d, const CycleRankOptions& options = {}) {
  return cycle_rank(symmetric_closure(d), options);
}

/// cycle_rank(d) <= bound, by branch and bound; handles up to 64 vertices.
inline bool is_cycle_rank_at_most(const Digraph& d, int bound) {
  if (bound < 0) return false;
  detail::MaskDigraph g(d);
  detail::BoundedCycleRank search(g);
  return search.at_most(g.all(), bound);
}

/// The edges between one rule and the atoms sharing one sign with it; a
/// homogeneous orientation points all of them the same way.
struct IncidenceGroup {
  std::size_t rule = 0;
  Sign sign = Sign::kHead;
  std::vector<AtomId> atoms;
};

inline std::vector<IncidenceGroup> incidence_groups(const Program& program) {
  std::vector<IncidenceGroup> groups;
  for (std::size_t r = 0; r < program.num_rules(); ++r) {
    const Rule& rule = program.rules()[r];
    if (!rule.head.empty()) groups.push_back({r, Sign::kHead, rule.head});
    if (!rule.pos_body.empty()) groups.push_back({r, Sign::kPos, rule.pos_body});
    if (!rule.neg_body.empty()) groups.push_back({r, Sign::kNeg, rule.neg_body});
  }
  return groups;
}

/// `towards_atom[g]` orients group g rule -> atom, otherwise atom -> rule.
/// Vertices are the atoms followed by the rules.
inline Digraph orient_incidence_graph(const Program& program, const std::vector<IncidenceGroup>& groups,
                                      const std::vector<bool>& towards_atom) {
  Digraph d(program_vertices(program));
  const std::size_t base = program.num_atoms();
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (AtomId a : groups[g].atoms) {
      if (towards_atom[g]) {
        d.add_arc(base + groups[g].rule, a);
      } else {
        d.add_arc(a, base + groups[g].rule);
      }
    }
  }
  return d;
}

struct OrientationOptions {
  std::size_t max_enumerated_groups = 14;
  std::size_t samples = 64;
  std::uint64_t seed = 1;
};

struct OrientationSummary {
  std::size_t groups = 0;
  std::size_t visited = 0;
  bool exhaustive = true;
};

/// Streams homogeneous orientations of incG(Π) to `visit`: all 2^groups of
/// them when the group count is within bound, else `samples` seeded ones.
template <typename Visit>
OrientationSummary for_each_homogeneous_orientation(const Program& program, Visit&& visit,
                                                    const OrientationOptions& options = {}) {
  const auto groups = incidence_groups(program);
  OrientationSummary summary;
  summary.groups = groups.size();
  std::vector<bool> towards(groups.size(), false);
  if (groups.size() <= options.max_enumerated_groups && groups.size() < 63) {
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << groups.size()); ++bits) {
      for (std::size_t g = 0; g < groups.size(); ++g) towards[g] = ((bits >> g) & 1U) != 0;
      visit(orient_incidence_graph(program, groups, towards));
      ++summary.visited;
    }
    return summary;
  }
  summary.exhaustive = false;
  std::mt19937_64 rng(options.seed);
  for (std::size_t s = 0; s < options.samples; ++s) {
    for (std::size_t g = 0; g < groups.size(); ++g) towards[g] = (rng() & 1U) != 0;
    visit(orient_incidence_graph(program, groups, towards));
    ++summary.visited;
  }
  return summary;
}

inline std::vector<Digraph> homogeneous_orientations(const Program& program, const OrientationOptions& options = {}) {
  std::vector<Digraph> out;
  for_each_homogeneous_orientation(program, [&](Digraph d) { out.push_back(std::move(d)); }, options);
  return out;
}

}  // namespace cwasp
