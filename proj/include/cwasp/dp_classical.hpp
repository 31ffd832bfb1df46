#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "cwasp/error.hpp"
#include "cwasp/expression.hpp"
#include "cwasp/ktriple.hpp"

namespace cwasp {

struct DpOptions {
  /// Keep every node's table (indexed like Expression::nodes()).
  bool trace = false;
};

struct DpStats {
  std::vector<std::size_t> table_sizes;  // per node, post-order
  std::size_t max_table_size = 0;
  std::size_t max_gamma_size = 0;  // answer-set DP only
  int width = 0;
};

struct ClassicalResult {
  TripleSet root;
  DpStats stats;
  std::vector<TripleSet> trace;
};

namespace detail {

/// Table-size ceiling 2^(3k) for k labels, or 0 when it does not fit a word.
inline std::size_t triple_bound(int k) {
  return 3 * k < 63 ? std::size_t{1} << (3 * k) : 0;
}

inline void check_dp_input(const Expression& e) {
  for (const auto& n : e.nodes()) {
    if (n.op == Op::kEdge && n.sign == Sign::kAlpha) {
      throw EvaluationError("dynamic programming needs signed edges; found " + describe(n));
    }
    if (n.op == Op::kIntroduce || n.op == Op::kRelabel || n.op == Op::kEdge) LabelSet::check_label(n.label);
    if (n.op == Op::kRelabel || n.op == Op::kEdge) LabelSet::check_label(n.label2);
  }
}

inline LabelSet single(int label) {
  LabelSet s;
  s.insert(label);
  return s;
}

/// The table gate used by an edge insertion: Q_T for h and n, Q_F for p.
inline LabelSet gate(const KTriple& q, Sign s) { return s == Sign::kPos ? q.f : q.t; }

}  // namespace detail

/// The classical-model table f, computed bottom-up and deduplicated at every node.
inline ClassicalResult run_dp_classical(const Expression& e, const DpOptions& options = {}) {
  detail::check_dp_input(e);
  ClassicalResult result;
  result.stats.width = width(e);
  const std::size_t bound = detail::triple_bound(result.stats.width);
  std::vector<TripleSet> table(e.size());

  for (std::size_t idx = 0; idx < e.size(); ++idx) {
    const ExprNode& n = e.node(idx);
    TripleSet out;
    switch (n.op) {
      case Op::kIntroduce:
        if (n.vertex.kind == VertexKind::kAtom) {
          out = {KTriple{detail::single(n.label), {}, {}}, KTriple{{}, detail::single(n.label), {}}};
        } else {
          out = {KTriple{{}, {}, detail::single(n.label)}};
        }
        break;
      case Op::kUnion: {
        const auto& left = table[n.left];
        const auto& right = table[n.right];
        out.reserve(left.size() * right.size());
        for (const auto& a : left) {
          for (const auto& b : right) out.push_back(triple_union(a, b));
        }
        break;
      }
      case Op::kRelabel:
        for (const auto& q : table[n.left]) out.push_back(triple_relabel(q, n.label, n.label2));
        break;
      case Op::kEdge:
        for (const auto& q : table[n.left]) out.push_back(triple_edge_update(q, detail::gate(q, n.sign), n.label, n.label2));
        break;
    }
    canonicalize(out);
    if (bound != 0 && out.size() > bound) {
      throw Error("triple table exceeds 2^(3k) at node " + std::to_string(idx));
    }
    result.stats.table_sizes.push_back(out.size());
    result.stats.max_table_size = std::max(result.stats.max_table_size, out.size());
    if (!options.trace) {
      if (n.left != kNoChild) TripleSet().swap(table[n.left]);
      if (n.right != kNoChild) TripleSet().swap(table[n.right]);
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

inline TripleSet dp_classical(const Expression& e) { return run_dp_classical(e).root; }

/// The program defined by `e` has a classical model iff some root triple has Q_U = ∅.
inline bool has_model_dp(const Expression& e) {
  const auto root = dp_classical(e);
  return std::any_of(root.begin(), root.end(), [](const KTriple& q) { return q.u.empty(); });
}

}  // namespace cwasp
