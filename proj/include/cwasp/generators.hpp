#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cwasp/error.hpp"
#include "cwasp/expression.hpp"
#include "cwasp/program.hpp"

namespace cwasp {

namespace detail {

/// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
inline double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline std::size_t index_draw(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

}  // namespace detail

// ---------------------------------------------------------------------------
// QBF  ∃x ∀y  D_1 ∨ ... ∨ D_r

struct QbfLiteral {
  bool universal = false;  // y-variable if set, x-variable otherwise
  std::size_t index = 0;   // 0-based within its block
  bool negated = false;

  friend bool operator==(const QbfLiteral&, const QbfLiteral&) = default;
};

struct QbfEA {
  std::vector<std::string> exists;
  std::vector<std::string> forall;
  std::vector<std::vector<QbfLiteral>> terms;  // conjunctions of 1-3 literals

  friend bool operator==(const QbfEA&, const QbfEA&) = default;
};

inline void validate_qbf(const QbfEA& q) {
  std::set<std::string> names;
  for (const auto* block : {&q.exists, &q.forall}) {
    for (const auto& n : *block) {
      if (!is_rule_id(n)) throw ValidationError("invalid variable name '" + n + "'");
      if (!names.insert(n).second) throw ValidationError("variable '" + n + "' declared twice");
    }
  }
  for (std::size_t t = 0; t < q.terms.size(); ++t) {
    const auto& term = q.terms[t];
    if (term.empty() || term.size() > 3) {
      throw ValidationError("term " + std::to_string(t + 1) + " must have 1 to 3 literals");
    }
    for (const auto& lit : term) {
      if (lit.index >= (lit.universal ? q.forall.size() : q.exists.size())) {
        throw ValidationError("term " + std::to_string(t + 1) + " uses an undeclared variable");
      }
    }
  }
}

/// "exists x1 x2\nforall y1 y2\nterm x1 -y2\nterm -x2 y2"; '%' starts a comment.
inline QbfEA parse_qbf(std::string_view text) {
  QbfEA q;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  auto lookup = [&q](const std::string& name, QbfLiteral& lit) {
    for (std::size_t i = 0; i < q.exists.size(); ++i) {
      if (q.exists[i] == name) {
        lit.universal = false;
        lit.index = i;
        return true;
      }
    }
    for (std::size_t i = 0; i < q.forall.size(); ++i) {
      if (q.forall[i] == name) {
        lit.universal = true;
        lit.index = i;
        return true;
      }
    }
    return false;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto c = line.find('%'); c != std::string::npos) line.erase(c);
    std::istringstream words(line);
    std::string kw;
    if (!(words >> kw)) continue;
    std::string w;
    if (kw == "exists" || kw == "forall") {
      if (!q.terms.empty()) throw ParseError("quantifier block after terms", line_no, 1);
      if (kw == "exists" && !q.forall.empty()) throw ParseError("exists block after forall block", line_no, 1);
      while (words >> w) (kw == "exists" ? q.exists : q.forall).push_back(w);
    } else if (kw == "term") {
      std::vector<QbfLiteral> term;
      while (words >> w) {
        QbfLiteral lit;
        if (w.front() == '-') {
          lit.negated = true;
          w.erase(0, 1);
        }
        if (!lookup(w, lit)) throw ParseError("undeclared variable '" + w + "'", line_no, 1);
        term.push_back(lit);
      }
      q.terms.push_back(std::move(term));
    } else {
      throw ParseError("unknown keyword '" + kw + "'", line_no, 1);
    }
  }
  try {
    validate_qbf(q);
  } catch (const ValidationError& e) {
    throw ParseError(e.what(), line_no, 1);
  }
  return q;
}

inline std::string serialize_qbf(const QbfEA& q) {
  std::string out = "exists";
  for (const auto& x : q.exists) out += " " + x;
  out += "\nforall";
  for (const auto& y : q.forall) out += " " + y;
  out += "\n";
  for (const auto& term : q.terms) {
    out += "term";
    for (const auto& lit : term) {
      out += std::string(" ") + (lit.negated ? "-" : "") + (lit.universal ? q.forall : q.exists)[lit.index];
    }
    out += "\n";
  }
  return out;
}

struct QbfOptions {
  std::size_t max_variables = 20;
};

/// Brute force: some x-assignment makes the matrix true under every y-assignment.
inline bool qbf_is_valid(const QbfEA& q, const QbfOptions& options = {}) {
  validate_qbf(q);
  const std::size_t n = q.exists.size(), m = q.forall.size();
  if (n + m > options.max_variables || n + m > 62) {
    throw BoundError("QBF enumeration bound exceeded: " + std::to_string(n + m) + " variables");
  }
  auto term_true = [&](const std::vector<QbfLiteral>& term, std::uint64_t xs, std::uint64_t ys) {
    return std::all_of(term.begin(), term.end(), [&](const QbfLiteral& l) {
      bool value = (((l.universal ? ys : xs) >> l.index) & 1U) != 0;
      return value != l.negated;
    });
  };
  for (std::uint64_t xs = 0; xs < (std::uint64_t{1} << n); ++xs) {
    bool all = true;
    for (std::uint64_t ys = 0; all && ys < (std::uint64_t{1} << m); ++ys) {
      all = std::any_of(q.terms.begin(), q.terms.end(), [&](const auto& t) { return term_true(t, xs, ys); });
    }
    if (all) return true;
  }
  return false;
}

/// Saturation encoding: atoms x_i, v_i, y_i, z_i, w; guess rules x_i | v_i and y_i | z_i,
/// saturation rules y_i :- w, z_i :- w, w :- y_i, z_i, one rule w :- D_j
/// per term (¬x_i ↦ v_i, ¬y_i ↦ z_i), and the constraint :- not w.
inline Program reduce_qbf_to_asp(const QbfEA& q) {
  validate_qbf(q);
  auto x = [](std::size_t i) { return "x" + std::to_string(i + 1); };
  auto v = [](std::size_t i) { return "v" + std::to_string(i + 1); };
  auto y = [](std::size_t i) { return "y" + std::to_string(i + 1); };
  auto z = [](std::size_t i) { return "z" + std::to_string(i + 1); };
  ProgramBuilder b;
  for (std::size_t i = 0; i < q.exists.size(); ++i) {
    b.atom(x(i));
    b.atom(v(i));
  }
  for (std::size_t i = 0; i < q.forall.size(); ++i) {
    b.atom(y(i));
    b.atom(z(i));
  }
  b.atom("w");
  for (std::size_t i = 0; i < q.exists.size(); ++i) b.rule({x(i), v(i)}, {}, {});
  for (std::size_t i = 0; i < q.forall.size(); ++i) {
    b.rule({y(i), z(i)}, {}, {});
    b.rule({y(i)}, {"w"}, {});
    b.rule({z(i)}, {"w"}, {});
    b.rule({"w"}, {y(i), z(i)}, {});
  }
  for (const auto& term : q.terms) {
    std::vector<std::string> body;
    for (const auto& lit : term) {
      if (lit.universal) {
        body.push_back(lit.negated ? z(lit.index) : y(lit.index));
      } else {
        body.push_back(lit.negated ? v(lit.index) : x(lit.index));
      }
    }
    b.rule({"w"}, body, {});
  }
  b.rule({}, {}, {"w"});
  return b.build();
}

/// Terms draw 1-3 distinct variables uniformly from both blocks.
inline QbfEA gen_random_qbf(std::size_t n, std::size_t m, std::size_t r, std::uint64_t seed) {
  if (n + m == 0 && r > 0) throw ValidationError("terms need at least one variable");
  std::mt19937_64 rng(seed);
  QbfEA q;
  for (std::size_t i = 0; i < n; ++i) q.exists.push_back("x" + std::to_string(i + 1));
  for (std::size_t i = 0; i < m; ++i) q.forall.push_back("y" + std::to_string(i + 1));
  for (std::size_t t = 0; t < r; ++t) {
    std::size_t len = 1 + detail::index_draw(rng, std::min<std::size_t>(3, n + m));
    std::vector<QbfLiteral> term;
    std::set<std::size_t> used;
    while (term.size() < len) {
      std::size_t var = detail::index_draw(rng, n + m);
      if (!used.insert(var).second) continue;
      QbfLiteral lit;
      lit.universal = var >= n;
      lit.index = lit.universal ? var - n : var;
      lit.negated = (rng() & 1U) != 0;
      term.push_back(lit);
    }
    q.terms.push_back(std::move(term));
  }
  return q;
}

// ---------------------------------------------------------------------------
// Partitioned clique

/// Vertex v_{index+1}^{part+1}.
struct PartVertex {
  std::size_t part = 0;
  std::size_t index = 0;

  friend auto operator<=>(const PartVertex&, const PartVertex&) = default;
};

/// k parts of equal size; edges only between different parts.
struct KPartiteGraph {
  std::size_t k = 0;
  std::size_t part_size = 0;
  std::set<std::pair<PartVertex, PartVertex>> edges;  // first < second

  bool has_edge(PartVertex a, PartVertex b) const {
    if (b < a) std::swap(a, b);
    return edges.count({a, b}) != 0;
  }

  void add_edge(PartVertex a, PartVertex b) {
    if (a.part >= k || b.part >= k || a.index >= part_size || b.index >= part_size) {
      throw ValidationError("edge endpoint outside the partition");
    }
    if (a.part == b.part) throw ValidationError("edge inside part " + std::to_string(a.part + 1));
    if (b < a) std::swap(a, b);
    edges.insert({a, b});
  }

  friend bool operator==(const KPartiteGraph&, const KPartiteGraph&) = default;
};

/// Atom name of v_i^j: "v<i>_<j>".
inline std::string part_vertex_name(PartVertex v) {
  return "v" + std::to_string(v.index + 1) + "_" + std::to_string(v.part + 1);
}

inline void validate_kpartite(const KPartiteGraph& g) {
  for (const auto& [a, b] : g.edges) {
    if (a.part >= g.k || b.part >= g.k || a.index >= g.part_size || b.index >= g.part_size) {
      throw ValidationError("edge endpoint outside the partition");
    }
    if (a.part == b.part) throw ValidationError("edge inside part " + std::to_string(a.part + 1));
    if (!(a < b)) throw ValidationError("edge endpoints not normalized");
  }
}

/// Every cross-part pair becomes an edge with probability `edge_density`.
inline KPartiteGraph gen_pclique(std::size_t k, std::size_t part_size, double edge_density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  KPartiteGraph g;
  g.k = k;
  g.part_size = part_size;
  for (std::size_t p = 0; p < k; ++p) {
    for (std::size_t i = 0; i < part_size; ++i) {
      for (std::size_t q = p + 1; q < k; ++q) {
        for (std::size_t j = 0; j < part_size; ++j) {
          if (detail::unit_draw(rng) < edge_density) g.add_edge({p, i}, {q, j});
        }
      }
    }
  }
  return g;
}

/// Tries every one-vertex-per-part selection; part_size^k must stay <= limit.
inline bool has_partitioned_clique(const KPartiteGraph& g, double limit = 1e6) {
  validate_kpartite(g);
  double combos = 1;
  for (std::size_t p = 0; p < g.k; ++p) combos *= static_cast<double>(g.part_size);
  if (combos > limit) throw BoundError("partitioned-clique brute force bound exceeded");
  if (g.k == 0) return true;
  if (g.part_size == 0) return false;
  std::vector<std::size_t> pick(g.k, 0);
  while (true) {
    bool clique = true;
    for (std::size_t p = 0; clique && p < g.k; ++p) {
      for (std::size_t q = p + 1; clique && q < g.k; ++q) clique = g.has_edge({p, pick[p]}, {q, pick[q]});
    }
    if (clique) return true;
    std::size_t p = 0;
    while (p < g.k && ++pick[p] == g.part_size) pick[p++] = 0;
    if (p == g.k) return false;
  }
}

struct PcliqueReduction {
  Program program;
  Expression expression;  // defines sincG_{p,n}(program)
};

/// One atom per vertex; (R1) v_1^j | ... | v_n^j per part; (R2) per
/// cross-part non-edge {u, w}: :- u, w, not (rest of u's part), not (rest of
/// w's part). The expression uses labels j (atoms of part j), k+j ((R1) of
/// part j) and 2k+k(i-1)+j ((R2) between parts i<j), at most 2k+k² in all.
inline PcliqueReduction reduce_pclique_to_asp(const KPartiteGraph& g) {
  validate_kpartite(g);
  const std::size_t k = g.k, n = g.part_size;
  if (k == 0 || n == 0) throw ValidationError("partitioned clique needs k >= 1 and non-empty parts");
  ProgramBuilder pb;
  for (std::size_t p = 0; p < k; ++p) {
    for (std::size_t i = 0; i < n; ++i) pb.atom(part_vertex_name({p, i}));
  }
  std::vector<std::string> r1_ids;
  for (std::size_t p = 0; p < k; ++p) {
    std::vector<std::string> head;
    for (std::size_t i = 0; i < n; ++i) head.push_back(part_vertex_name({p, i}));
    r1_ids.push_back("r1_" + std::to_string(p + 1));
    pb.rule(head, {}, {}, r1_ids.back());
  }
  struct R2 {
    std::string id;
    std::size_t part_a, part_b;
  };
  std::vector<R2> r2;
  for (std::size_t pa = 0; pa < k; ++pa) {
    for (std::size_t pbi = pa + 1; pbi < k; ++pbi) {
      for (std::size_t ia = 0; ia < n; ++ia) {
        for (std::size_t ib = 0; ib < n; ++ib) {
          PartVertex a{pa, ia}, b{pbi, ib};
          if (g.has_edge(a, b)) continue;
          std::vector<std::string> neg;
          for (std::size_t i = 0; i < n; ++i) {
            if (i != ia) neg.push_back(part_vertex_name({pa, i}));
          }
          for (std::size_t i = 0; i < n; ++i) {
            if (i != ib) neg.push_back(part_vertex_name({pbi, i}));
          }
          std::string id = "r2_" + part_vertex_name(a) + "_" + part_vertex_name(b);
          pb.rule({}, {part_vertex_name(a), part_vertex_name(b)}, neg, id);
          r2.push_back({id, pa, pbi});
        }
      }
    }
  }
  PcliqueReduction out{pb.build(), {}};

  const int kk = static_cast<int>(k);
  auto r2_label = [kk](std::size_t i, std::size_t j) {  // 0-based parts i < j
    return 2 * kk + kk * static_cast<int>(i) + static_cast<int>(j) + 1;
  };
  ExpressionBuilder eb;
  std::vector<ExpressionBuilder::Ref> parts;
  for (std::size_t p = 0; p < k; ++p) {
    for (std::size_t i = 0; i < n; ++i) parts.push_back(eb.atom(static_cast<int>(p) + 1, part_vertex_name({p, i})));
  }
  for (std::size_t p = 0; p < k; ++p) parts.push_back(eb.rule(kk + static_cast<int>(p) + 1, r1_ids[p]));
  std::set<std::pair<std::size_t, std::size_t>> r2_pairs;
  for (const auto& r : r2) {
    parts.push_back(eb.rule(r2_label(r.part_a, r.part_b), r.id));
    r2_pairs.insert({r.part_a, r.part_b});
  }
  auto acc = detail::union_all(eb, parts);
  for (std::size_t p = 0; p < k; ++p) {
    acc = eb.eta(Sign::kHead, static_cast<int>(p) + 1, kk + static_cast<int>(p) + 1, acc);
  }
  for (const auto& [i, j] : r2_pairs) {
    acc = eb.eta(Sign::kAlpha, static_cast<int>(i) + 1, r2_label(i, j), acc);
    acc = eb.eta(Sign::kAlpha, static_cast<int>(j) + 1, r2_label(i, j), acc);
  }
  out.expression = eb.build(acc);
  return out;
}

// ---------------------------------------------------------------------------
// Grid programs

/// n² atoms a1..a{n²} and n² rules r1..r{n²}, every atom in every rule.
/// Grid cell p (row-major) stands for atom p if it is a black square
/// (row + column even) and for rule p otherwise; atom a is in the head of
/// rule r iff their cells are adjacent in the n×n grid, else in the positive
/// body. The head edges therefore form exactly the n×n grid.
inline Program gen_grid_program(std::size_t n) {
  if (n < 1) throw ValidationError("grid size must be at least 1");
  const std::size_t cells = n * n;
  auto adjacent = [n](std::size_t p, std::size_t q) {
    std::size_t pr = p / n, pc = p % n, qr = q / n, qc = q % n;
    std::size_t dr = pr > qr ? pr - qr : qr - pr;
    std::size_t dc = pc > qc ? pc - qc : qc - pc;
    return dr + dc == 1;
  };
  auto black = [n](std::size_t p) { return (p / n + p % n) % 2 == 0; };
  ProgramBuilder b;
  for (std::size_t p = 0; p < cells; ++p) b.atom("a" + std::to_string(p + 1));
  for (std::size_t q = 0; q < cells; ++q) {
    std::vector<std::string> head, pos;
    for (std::size_t p = 0; p < cells; ++p) {
      bool in_head = black(p) && !black(q) && adjacent(p, q);
      (in_head ? head : pos).push_back("a" + std::to_string(p + 1));
    }
    b.rule(head, pos, {}, "r" + std::to_string(q + 1));
  }
  return b.build();
}

// ---------------------------------------------------------------------------
// Random programs

struct PartProbabilities {
  double head = 0.2;
  double pos = 0.2;
  double neg = 0.2;
};

/// Each (rule, atom) pair independently lands in the head, the positive
/// body, the negative body, or nowhere.
inline Program gen_random_program(std::size_t num_atoms, std::size_t num_rules, const PartProbabilities& probs,
                                  std::uint64_t seed) {
  if (probs.head < 0 || probs.pos < 0 || probs.neg < 0 || probs.head + probs.pos + probs.neg > 1.0 + 1e-12) {
    throw ValidationError("part probabilities must be non-negative and sum to at most 1");
  }
  std::mt19937_64 rng(seed);
  ProgramBuilder b;
  std::vector<std::string> names;
  for (std::size_t a = 0; a < num_atoms; ++a) {
    names.push_back("a" + std::to_string(a + 1));
    b.atom(names.back());
  }
  for (std::size_t r = 0; r < num_rules; ++r) {
    std::vector<std::string> head, pos, neg;
    for (const auto& name : names) {
      double u = detail::unit_draw(rng);
      if (u < probs.head) {
        head.push_back(name);
      } else if (u < probs.head + probs.pos) {
        pos.push_back(name);
      } else if (u < probs.head + probs.pos + probs.neg) {
        neg.push_back(name);
      }
    }
    b.rule(head, pos, neg);
  }
  return b.build();
}

}  // namespace cwasp
