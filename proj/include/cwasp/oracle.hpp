#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "cwasp/error.hpp"
#include "cwasp/graph.hpp"
#include "cwasp/ktriple.hpp"
#include "cwasp/program.hpp"

// Brute-force semantics. Everything here enumerates subsets directly and is
// meant as the trusted slow path the dynamic programs are checked against.

namespace cwasp {

struct OracleOptions {
  std::size_t max_atoms = 20;
};

namespace detail {

/// Rule parts as atom bitmasks (atom a is bit a).
struct MaskRule {
  std::uint64_t head = 0;
  std::uint64_t pos = 0;
  std::uint64_t neg = 0;
};

inline std::vector<MaskRule> mask_rules(const Program& program) {
  std::vector<MaskRule> out;
  for (const Rule& r : program.rules()) {
    MaskRule m;
    for (AtomId a : r.head) m.head |= std::uint64_t{1} << a;
    for (AtomId a : r.pos_body) m.pos |= std::uint64_t{1} << a;
    for (AtomId a : r.neg_body) m.neg |= std::uint64_t{1} << a;
    out.push_back(m);
  }
  return out;
}

inline bool mask_satisfies(const MaskRule& r, std::uint64_t interpretation) {
  bool body = (r.pos & ~interpretation) == 0 && (r.neg & interpretation) == 0;
  return !body || (r.head & interpretation) != 0;
}

inline bool mask_is_model(const std::vector<MaskRule>& rules, std::uint64_t interpretation) {
  for (const auto& r : rules) {
    if (!mask_satisfies(r, interpretation)) return false;
  }
  return true;
}

/// No proper subset of `m` satisfies every rule of the reduct w.r.t. m.
inline bool mask_is_minimal_for_reduct(const std::vector<MaskRule>& rules, std::uint64_t m) {
  std::vector<MaskRule> reduct;
  for (const auto& r : rules) {
    if ((r.neg & m) == 0) reduct.push_back({r.head, r.pos, 0});
  }
  if (m == 0) return true;
  // Proper submasks of m, from m-1 down to 0.
  for (std::uint64_t n = (m - 1) & m;; n = (n - 1) & m) {
    if (mask_is_model(reduct, n)) return false;
    if (n == 0) break;
  }
  return true;
}

inline void check_bound(const Program& program, const OracleOptions& options) {
  if (program.num_atoms() > options.max_atoms || program.num_atoms() > 62) {
    throw BoundError("oracle enumeration bound exceeded: " + std::to_string(program.num_atoms()) + " atoms > " +
                     std::to_string(std::min<std::size_t>(options.max_atoms, 62)));
  }
}

/// Lexicographic order over characteristic vectors read in atom order
/// (absent < present): the first atom is the most significant position.
inline std::uint64_t lex_rank_to_mask(std::uint64_t rank, std::size_t n) {
  std::uint64_t mask = 0;
  for (std::size_t a = 0; a < n; ++a) {
    if ((rank >> (n - 1 - a)) & 1U) mask |= std::uint64_t{1} << a;
  }
  return mask;
}

template <typename Keep>
std::vector<AtomSet> enumerate_filtered(const Program& program, const OracleOptions& options, Keep keep) {
  check_bound(program, options);
  const std::size_t n = program.num_atoms();
  const auto rules = mask_rules(program);
  std::vector<AtomSet> out;
  for (std::uint64_t rank = 0; rank < (std::uint64_t{1} << n); ++rank) {
    std::uint64_t mask = lex_rank_to_mask(rank, n);
    if (keep(rules, mask)) out.push_back(AtomSet::from_mask(n, mask));
  }
  return out;
}

inline std::uint64_t to_mask(const AtomSet& s) {
  std::uint64_t m = 0;
  for (AtomId a : s.members()) m |= std::uint64_t{1} << a;
  return m;
}

}  // namespace detail

/// All classical models, in lexicographic subset order.
inline std::vector<AtomSet> enumerate_models(const Program& program, const OracleOptions& options = {}) {
  return detail::enumerate_filtered(program, options, [](const auto& rules, std::uint64_t m) {
    return detail::mask_is_model(rules, m);
  });
}

/// M is a model of the program and no N ⊊ M is a model of the reduct w.r.t. M.
inline bool is_answer_set(const Program& program, const AtomSet& m, const OracleOptions& options = {}) {
  if (!is_model(program, m)) return false;
  if (m.count() > options.max_atoms || program.num_atoms() > 62) {
    throw BoundError("answer-set check over " + std::to_string(m.count()) + " atoms exceeds bound");
  }
  // Written against the generic reduct/is_model so it stays independent of the mask path.
  const Program r = reduct(program, m);
  const std::vector<AtomId> members = m.members();
  const std::uint64_t full = (std::uint64_t{1} << members.size()) - 1;
  for (std::uint64_t sub = 0; sub < full; ++sub) {
    AtomSet n(program.num_atoms());
    for (std::size_t b = 0; b < members.size(); ++b) {
      if ((sub >> b) & 1U) n.insert(members[b]);
    }
    if (is_model(r, n)) return false;
  }
  return true;
}

/// Answer sets, in lexicographic subset order.
inline std::vector<AtomSet> enumerate_answer_sets(const Program& program, const OracleOptions& options = {}) {
  return detail::enumerate_filtered(program, options, [](const auto& rules, std::uint64_t m) {
    return detail::mask_is_model(rules, m) && detail::mask_is_minimal_for_reduct(rules, m);
  });
}

namespace detail {

inline int label_of(const Labeling& labeling, const Vertex& v) {
  auto it = labeling.find(v);
  if (it == labeling.end()) throw ValidationError("unlabeled vertex " + to_string(v));
  return it->second;
}

}  // namespace detail

/// The unique triple Q of which I is a Π-interpretation under `labeling`.
inline KTriple interpretation_triple(const Program& program, const Labeling& labeling, const AtomSet& i) {
  KTriple q;
  for (AtomId a = 0; a < program.num_atoms(); ++a) {
    int l = detail::label_of(labeling, Vertex::atom(program.atom_name(a)));
    (i.contains(a) ? q.t : q.f).insert(l);
  }
  for (const Rule& r : program.rules()) {
    int l = detail::label_of(labeling, Vertex::rule(r.id));
    if (!is_model_of_rule(r, i)) q.u.insert(l);
  }
  return q;
}

/// The unique triple R of which J is a Π^I-interpretation under `labeling`.
inline KTriple reduct_interpretation_triple(const Program& program, const Labeling& labeling, const AtomSet& i,
                                            const AtomSet& j) {
  KTriple q;
  for (AtomId a = 0; a < program.num_atoms(); ++a) {
    int l = detail::label_of(labeling, Vertex::atom(program.atom_name(a)));
    (j.contains(a) ? q.t : q.f).insert(l);
  }
  for (const Rule& r : program.rules()) {
    int l = detail::label_of(labeling, Vertex::rule(r.id));
    bool kept = std::none_of(r.neg_body.begin(), r.neg_body.end(), [&](AtomId a) { return i.contains(a); });
    if (!kept) continue;
    Rule plus = r;
    plus.neg_body.clear();
    if (!is_model_of_rule(plus, j)) q.u.insert(l);
  }
  return q;
}

}  // namespace cwasp
