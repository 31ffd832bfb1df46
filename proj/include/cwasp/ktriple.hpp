#pragma once

#include <algorithm>
#include <compare>
#include <ostream>
#include <string>
#include <vector>

#include "cwasp/label_set.hpp"

namespace cwasp {

/// (T, F, U): labels of some true atom, some false atom, some rule not yet
/// satisfied. Ordered by the numeric value of (T, F, U).
struct KTriple {
  LabelSet t;
  LabelSet f;
  LabelSet u;

  friend constexpr bool operator==(const KTriple&, const KTriple&) = default;
  friend constexpr auto operator<=>(const KTriple&, const KTriple&) = default;
};

/// Componentwise union Q ⊕ Q'.
inline KTriple triple_union(const KTriple& a, const KTriple& b) { return {a.t | b.t, a.f | b.f, a.u | b.u}; }

/// Q^{i->j}.
inline KTriple triple_relabel(const KTriple& q, int from, int to) {
  return {q.t.relabeled(from, to), q.f.relabeled(from, to), q.u.relabeled(from, to)};
}

/// Q^{S,i,j}: drops j from Q_U when i is in S.
inline KTriple triple_edge_update(const KTriple& q, LabelSet gate, int i, int j) {
  if (!gate.contains(i)) return q;
  KTriple out = q;
  out.u.erase(j);
  return out;
}

inline std::string to_string(const KTriple& q) {
  return "(" + q.t.to_string() + "," + q.f.to_string() + "," + q.u.to_string() + ")";
}

inline std::ostream& operator<<(std::ostream& os, const KTriple& q) { return os << to_string(q); }

/// Sorted, duplicate-free set of triples.
using TripleSet = std::vector<KTriple>;

inline void canonicalize(TripleSet& s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
}

inline TripleSet make_triple_set(std::vector<KTriple> v) {
  canonicalize(v);
  return v;
}

}  // namespace cwasp
