#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "cwasp/dp_classical.hpp"
#include "cwasp/expression.hpp"
#include "cwasp/ktriple.hpp"

namespace cwasp {

/// (Q, Γ): Q describes a candidate interpretation I, each member of Γ a
/// proper subset J ⊂ I evaluated against the reduct Π^I.
struct KPair {
  KTriple q;
  TripleSet gamma;  // canonical: sorted, duplicate-free

  friend bool operator==(const KPair&, const KPair&) = default;
  friend auto operator<=>(const KPair& a, const KPair& b) {
    if (auto c = a.q <=> b.q; c != 0) return c;
    return std::lexicographical_compare_three_way(a.gamma.begin(), a.gamma.end(), b.gamma.begin(), b.gamma.end());
  }
};

inline std::string to_string(const KPair& p) {
  std::string out = "(" + to_string(p.q) + ",{";
  for (std::size_t i = 0; i < p.gamma.size(); ++i) out += (i ? "," : "") + to_string(p.gamma[i]);
  return out + "})";
}

/// Sorted, duplicate-free set of pairs.
using PairSet = std::vector<KPair>;

inline void canonicalize(PairSet& s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
}

struct AspResult {
  PairSet root;
  DpStats stats;
  std::vector<PairSet> trace;
};

namespace detail {

inline KPair pair_union(const KPair& a, const KPair& b) {
  KPair out;
  out.q = triple_union(a.q, b.q);
  out.gamma.reserve(a.gamma.size() * b.gamma.size() + a.gamma.size() + b.gamma.size());
  for (const auto& s1 : a.gamma) {
    for (const auto& s2 : b.gamma) out.gamma.push_back(triple_union(s1, s2));
  }
  for (const auto& s : b.gamma) out.gamma.push_back(triple_union(a.q, s));
  for (const auto& s : a.gamma) out.gamma.push_back(triple_union(s, b.q));
  canonicalize(out.gamma);
  return out;
}

inline KPair pair_edge(const KPair& p, Sign sign, int i, int j) {
  KPair out;
  out.q = triple_edge_update(p.q, gate(p.q, sign), i, j);
  out.gamma.reserve(p.gamma.size());
  for (const auto& r : p.gamma) {
    // Negative edges are gated by the outer Q_T: an atom of I in n(r) removes
    // r from the reduct for every J ⊂ I.
    LabelSet g = sign == Sign::kNeg ? p.q.t : gate(r, sign);
    out.gamma.push_back(triple_edge_update(r, g, i, j));
  }
  canonicalize(out.gamma);
  return out;
}

}  // namespace detail

/// The answer-set table g, computed bottom-up; pairs and Γ-sets are
/// deduplicated at every node.
inline AspResult run_dp_asp(const Expression& e, const DpOptions& options = {}) {
  detail::check_dp_input(e);
  AspResult result;
  result.stats.width = width(e);
  const std::size_t gamma_bound = detail::triple_bound(result.stats.width);
  std::vector<PairSet> table(e.size());

  for (std::size_t idx = 0; idx < e.size(); ++idx) {
    const ExprNode& n = e.node(idx);
    PairSet out;
    switch (n.op) {
      case Op::kIntroduce: {
        const LabelSet l = detail::single(n.label);
        if (n.vertex.kind == VertexKind::kAtom) {
          out.push_back({KTriple{l, {}, {}}, {KTriple{{}, l, {}}}});
          out.push_back({KTriple{{}, l, {}}, {}});
        } else {
          out.push_back({KTriple{{}, {}, l}, {}});
        }
        break;
      }
      case Op::kUnion: {
        const auto& left = table[n.left];
        const auto& right = table[n.right];
        out.reserve(left.size() * right.size());
        for (const auto& a : left) {
          for (const auto& b : right) out.push_back(detail::pair_union(a, b));
        }
        break;
      }
      case Op::kRelabel:
        for (const auto& p : table[n.left]) {
          KPair r{triple_relabel(p.q, n.label, n.label2), {}};
          r.gamma.reserve(p.gamma.size());
          for (const auto& s : p.gamma) r.gamma.push_back(triple_relabel(s, n.label, n.label2));
          canonicalize(r.gamma);
          out.push_back(std::move(r));
        }
        break;
      case Op::kEdge:
        for (const auto& p : table[n.left]) out.push_back(detail::pair_edge(p, n.sign, n.label, n.label2));
        break;
    }
    canonicalize(out);
    for (const auto& p : out) {
      if (gamma_bound != 0 && p.gamma.size() > gamma_bound) {
        throw Error("gamma set exceeds 2^(3k) at node " + std::to_string(idx));
      }
      result.stats.max_gamma_size = std::max(result.stats.max_gamma_size, p.gamma.size());
    }
    result.stats.table_sizes.push_back(out.size());
    result.stats.max_table_size = std::max(result.stats.max_table_size, out.size());
    if (!options.trace) {
      if (n.left != kNoChild) PairSet().swap(table[n.left]);
      if (n.right != kNoChild) PairSet().swap(table[n.right]);
    }
    table[idx] = std::move(out);
  }
  if (options.trace) {
    result.root = table.back();
    result.trace = std::move(table);
  } else {
    result.root = std::move(table.back());
  }
  return result;
}

inline PairSet dp_asp(const Expression& e) { return run_dp_asp(e).root; }

/// Some root pair has Q_U = ∅ while every R ∈ Γ keeps R_U ≠ ∅.
inline bool has_answer_set(const PairSet& root) {
  return std::any_of(root.begin(), root.end(), [](const KPair& p) {
    return p.q.u.empty() &&
           std::all_of(p.gamma.begin(), p.gamma.end(), [](const KTriple& r) { return !r.u.empty(); });
  });
}

inline bool has_answer_set_dp(const Expression& e) { return has_answer_set(dp_asp(e)); }

}  // namespace cwasp
