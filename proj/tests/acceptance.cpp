// Acceptance checks: one PASS/FAIL line per criterion; non-zero exit if any fail.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "cwasp/cwasp.hpp"

using namespace cwasp;

namespace {

using Clock = std::chrono::steady_clock;

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

TripleSet set(std::vector<KTriple> v) { return make_triple_set(std::move(v)); }

bool realizes(const TripleSet& s, const KTriple& q) { return std::binary_search(s.begin(), s.end(), q); }

std::vector<AtomSet> subsets(std::size_t n) {
  std::vector<AtomSet> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) out.push_back(AtomSet::from_mask(n, m));
  return out;
}

std::vector<AtomSet> proper_subsets(const AtomSet& i) {
  std::vector<AtomSet> out;
  auto members = i.members();
  for (std::uint64_t m = 0; m + 1 < (std::uint64_t{1} << members.size()); ++m) {
    AtomSet j(i.universe());
    for (std::size_t b = 0; b < members.size(); ++b) {
      if ((m >> b) & 1U) j.insert(members[b]);
    }
    out.push_back(j);
  }
  return out;
}

Program fuzz_program(std::uint64_t seed) {
  return gen_random_program(1 + seed % 5, seed % 6, PartProbabilities{0.25, 0.25, 0.25}, seed);
}

// 1 -------------------------------------------------------------------------
Check worked_trace_classical() {
  Check c;
  Expression e = parse_expression(
      "eta(n,3,2,oplus(rho(3,2,eta(p,1,3,oplus(eta(h,1,2,oplus(a(1,x),r(2,r1))),r(3,r2)))),a(3,y)))");
  auto t = run_dp_classical(e, {true}).trace;
  c.require(t.size() == 11, "unexpected node count");
  if (!c.ok) return c;
  c.require(t[2] == set({{{1}, {}, {2}}, {{}, {1}, {2}}}), "f at node 6");
  c.require(t[3] == set({{{1}, {}, {}}, {{}, {1}, {2}}}), "f at node 5");
  c.require(t[5] == set({{{1}, {}, {3}}, {{}, {1}, {2, 3}}}), "f at node 4");
  c.require(t[6] == set({{{1}, {}, {3}}, {{}, {1}, {2}}}), "f at node 3");
  c.require(t[7] == set({{{1}, {}, {2}}, {{}, {1}, {2}}}), "f at node 2");
  c.require(t[9] == set({{{1, 3}, {}, {2}}, {{1}, {3}, {2}}, {{3}, {1}, {2}}, {{}, {1, 3}, {2}}}), "f at node 1");
  c.require(t[10] == set({{{1, 3}, {}, {}}, {{3}, {1}, {}}, {{1}, {3}, {2}}, {{}, {1, 3}, {2}}}), "f at node ");
  return c;
}

// 2 -------------------------------------------------------------------------
Check worked_trace_asp() {
  Check c;
  auto pr = [](KTriple q, std::vector<KTriple> g) { return KPair{q, make_triple_set(std::move(g))}; };
  auto t = run_dp_asp(parse_expression("eta(n,1,2,oplus(a(1,x),r(2,r)))"), {true}).trace;
  c.require(t.size() == 4, "unexpected node count");
  if (!c.ok) return c;
  PairSet atom = {pr({{1}, {}, {}}, {{{}, {1}, {}}}), pr({{}, {1}, {}}, {})};
  canonicalize(atom);
  c.require(t[0] == atom, "g(1(x))");
  c.require(t[1] == PairSet{pr({{}, {}, {2}}, {})}, "g(2(r))");
  PairSet uni = {pr({{1}, {}, {2}}, {{{}, {1}, {2}}}), pr({{}, {1}, {2}}, {})};
  canonicalize(uni);
  c.require(t[2] == uni, "g(1(x) oplus 2(r))");
  PairSet root = {pr({{1}, {}, {}}, {{{}, {1}, {}}}), pr({{}, {1}, {2}}, {})};
  canonicalize(root);
  c.require(t[3] == root, "g at root");
  c.require(!has_answer_set(t[3]), "decision");
  c.require(enumerate_answer_sets(parse_program("@r: :- not x.")).empty(), "oracle");
  return c;
}

// 3 -------------------------------------------------------------------------
Check oracle_classical() {
  Check c;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    Program p = fuzz_program(seed);
    c.require(has_model_dp(trivial_expression(p)) == !enumerate_models(p).empty(), "seed " + std::to_string(seed));
  }
  return c;
}

// 4 -------------------------------------------------------------------------
Check oracle_asp() {
  Check c;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    Program p = fuzz_program(seed);
    c.require(has_answer_set_dp(trivial_expression(p)) == !enumerate_answer_sets(p).empty(),
              "seed " + std::to_string(seed));
  }
  return c;
}

// 5 -------------------------------------------------------------------------
Check realization_sweeps() {
  Check c;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::string tag = "seed " + std::to_string(seed);
    Program p = fuzz_program(seed);
    Expression e = trivial_expression(p);
    Labeling l = evaluate(e).labeling();
    TripleSet f = dp_classical(e);
    PairSet g = dp_asp(e);
    const auto all = subsets(p.num_atoms());

    // Every interpretation lands in f, and every triple of f is realized.
    TripleSet realized;
    for (const auto& i : all) {
      KTriple q = interpretation_triple(p, l, i);
      c.require(realizes(f, q), tag + ": f misses an interpretation");
      realized.push_back(q);
    }
    canonicalize(realized);
    for (const auto& q : f) c.require(realizes(realized, q), tag + ": f has an unrealized triple");

    // Projection.
    TripleSet proj;
    for (const auto& pr : g) proj.push_back(pr.q);
    canonicalize(proj);
    c.require(proj == f, tag + ": projection of g differs from f");

    // Forward: some pair carries I and every J ⊊ I.
    for (const auto& i : all) {
      KTriple q = interpretation_triple(p, l, i);
      auto subs = proper_subsets(i);
      bool found = std::any_of(g.begin(), g.end(), [&](const KPair& pr) {
        return pr.q == q && std::all_of(subs.begin(), subs.end(), [&](const AtomSet& j) {
                 return realizes(pr.gamma, reduct_interpretation_triple(p, l, i, j));
               });
      });
      c.require(found, tag + ": g misses an interpretation");
    }
    // Backward: some I realizes Q and every R ∈ Γ via some J ⊊ I.
    for (const auto& pr : g) {
      bool found = std::any_of(all.begin(), all.end(), [&](const AtomSet& i) {
        if (interpretation_triple(p, l, i) != pr.q) return false;
        TripleSet reached;
        for (const auto& j : proper_subsets(i)) reached.push_back(reduct_interpretation_triple(p, l, i, j));
        canonicalize(reached);
        return std::all_of(pr.gamma.begin(), pr.gamma.end(), [&](const KTriple& r) { return realizes(reached, r); });
      });
      c.require(found, tag + ": g has an unrealized pair");
    }
  }
  return c;
}

// 6 -------------------------------------------------------------------------
Check qbf_reduction() {
  Check c;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::string tag = "seed " + std::to_string(seed);
    QbfEA q = gen_random_qbf(1 + seed % 3, seed / 3 % 4, 1 + seed / 12 % 4, seed);
    Program p = reduce_qbf_to_asp(q);
    bool valid = qbf_is_valid(q);
    bool oracle = !enumerate_answer_sets(p).empty();
    bool dp = has_answer_set_dp(trivial_expression(p));
    c.require(valid == oracle && oracle == dp, tag + ": three-way disagreement");
    c.require(is_cycle_rank_at_most(symmetric_closure(build_dependency_graph(p)), 2), tag + ": uncyclerank > 2");
    for_each_homogeneous_orientation(p, [&](const Digraph& d) {
      c.require(is_cycle_rank_at_most(d, 1), tag + ": orientation with cycle-rank > 1");
    });
  }
  return c;
}

// 7 -------------------------------------------------------------------------
Check pclique_reduction() {
  Check c;
  std::vector<KPartiteGraph> graphs;
  for (std::uint64_t mask = 0; mask < 16; ++mask) {
    KPartiteGraph g;
    g.k = 2;
    g.part_size = 2;
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) {
        if ((mask >> (2 * i + j)) & 1U) g.add_edge({0, i}, {1, j});
      }
    }
    graphs.push_back(g);
  }
  for (std::uint64_t seed = 1; seed <= 20; ++seed) graphs.push_back(gen_pclique(3, 2, 0.7, seed));
  for (std::size_t n = 0; n < graphs.size(); ++n) {
    const auto& g = graphs[n];
    const std::string tag = "instance " + std::to_string(n);
    auto red = reduce_pclique_to_asp(g);
    c.require(has_partitioned_clique(g) == !enumerate_answer_sets(red.program).empty(), tag + ": decision");
    c.require(validate_against(red.expression, red.program, {Sign::kPos, Sign::kNeg}).ok(), tag + ": expression");
    c.require(width(red.expression) <= static_cast<int>(2 * g.k + g.k * g.k), tag + ": width");
  }
  return c;
}

// 8 -------------------------------------------------------------------------
Check label_join() {
  Check c;
  for (std::uint64_t seed = 1000; seed < 1050; ++seed) {
    const std::string tag = "seed " + std::to_string(seed);
    Program p = gen_random_program(2 + seed % 5, 1 + seed % 5, PartProbabilities{}, seed);
    Expression e = heuristic_expression(p);
    c.require(validate_against(e, p).ok(), tag + ": base expression");
    Expression j = join_labels(e, {Sign::kHead, Sign::kPos, Sign::kNeg});
    c.require(validate_against_unsigned(j, p).ok(), tag + ": joined expression");
    c.require(width(j) == width(e), tag + ": width changed");
  }
  return c;
}

// 9 -------------------------------------------------------------------------
Check fixed_width_scaling() {
  Check c;
  std::vector<std::pair<long, long>> nodes;
  for (int n : {4, 8, 16, 32}) {
    ProgramBuilder b;
    std::vector<std::string> atoms;
    for (int i = 1; i <= n; ++i) atoms.push_back("a" + std::to_string(i));
    for (int r = 0; r < n; ++r) b.rule({}, atoms, {});
    Program p = b.build();
    Expression e = heuristic_expression(p);
    c.require(width(e) == 2, "n=" + std::to_string(n) + ": width " + std::to_string(width(e)));
    auto r = run_dp_classical(e);
    c.require(r.stats.max_table_size <= 64, "n=" + std::to_string(n) + ": table above 64");
    nodes.push_back({n, static_cast<long>(e.size())});
  }
  // Exact affine fit through the first two points must hold for the rest.
  long slope = (nodes[1].second - nodes[0].second) / (nodes[1].first - nodes[0].first);
  long offset = nodes[0].second - slope * nodes[0].first;
  for (const auto& [n, count] : nodes) c.require(count == slope * n + offset, "node count not linear");
  c.require(slope > 0, "node count not growing");
  return c;
}

// 10 ------------------------------------------------------------------------
Check grid_structure() {
  Check c;
  for (std::size_t n = 1; n <= 6; ++n) {
    const std::string tag = "n=" + std::to_string(n);
    Program p = gen_grid_program(n);
    SignedGraph g = build_signed_incidence_graph(p);
    const std::size_t atoms = p.num_atoms();
    c.require(atoms == n * n && p.num_rules() == n * n, tag + ": size");
    for (std::size_t a = 0; a < atoms; ++a) {
      for (std::size_t r = 0; r < p.num_rules(); ++r) c.require(g.sign(a, atoms + r).has_value(), tag + ": not K_{n,n}");
    }
    // Cell q of the grid is atom q when black, rule q otherwise.
    auto cell_of = [&](VertexIndex v) { return v < atoms ? v : v - atoms; };
    std::set<std::pair<std::size_t, std::size_t>> heads, grid;
    auto black = [n](std::size_t q) { return (q / n + q % n) % 2 == 0; };
    for (const auto& [e, s] : g.edges()) {
      if (s != Sign::kHead) continue;
      c.require(black(cell_of(e.first)) && !black(cell_of(e.second)), tag + ": head edge off the checkerboard");
      heads.insert(std::minmax(cell_of(e.first), cell_of(e.second)));
    }
    for (std::size_t q = 0; q < n * n; ++q) {
      if (q % n + 1 < n) grid.insert({q, q + 1});
      if (q + n < n * n) grid.insert({q, q + n});
    }
    c.require(heads == grid, tag + ": head edges differ from the grid");
  }
  return c;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;  // 0: no time limit
    std::function<Check()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "worked example trace, classical DP", 1.0, worked_trace_classical},
      {2, "worked example trace, answer-set DP", 1.0, worked_trace_asp},
      {3, "oracle equivalence, classical (500 programs)", 60.0, oracle_classical},
      {4, "oracle equivalence, answer sets (500 programs)", 120.0, oracle_asp},
      {5, "realization sweeps and projection (100 programs)", 0, realization_sweeps},
      {6, "QBF reduction and cycle-rank bounds (200 formulas)", 0, qbf_reduction},
      {7, "partitioned-clique reduction (16 + 20 graphs)", 0, pclique_reduction},
      {8, "label join keeps width (50 programs)", 0, label_join},
      {9, "fixed-width table bound and linear size", 0, fixed_width_scaling},
      {10, "grid program structure", 0, grid_structure},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    auto start = Clock::now();
    Check c;
    try {
      c = cr.run();
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (cr.limit_s > 0 && secs >= cr.limit_s) {
      c.ok = false;
      if (c.detail.empty()) c.detail = "over time limit";
    }
    std::printf("[%s] %2d %s (%.3f s%s)%s%s\n", c.ok ? "PASS" : "FAIL", cr.id, cr.name, secs,
                cr.limit_s > 0 ? (", limit " + std::to_string(static_cast<int>(cr.limit_s)) + " s").c_str() : "",
                c.ok ? "" : ": ", c.detail.c_str());
    failed += c.ok ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
