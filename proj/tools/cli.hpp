#pragma once

// Command-line front end. Every success path prints one JSON document on the
// output stream; diagnostics go to the error stream.
//
// Exit status: 0 decided/ok, 1 negative decision, 2 usage error,
// 3 parse/validation/mismatch error.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cwasp/cwasp.hpp"
#include "cwasp/io.hpp"

namespace cwasp::cli {

inline constexpr int kOk = 0;
inline constexpr int kNegative = 1;
inline constexpr int kUsage = 2;
inline constexpr int kInvalid = 3;

/// Input file that could not be read.
class UsageError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

inline Program load_program(const std::string& path) {
  Program p = parse_program(read_file(path));
  auto report = validate_program(p);
  if (!report.ok()) throw ValidationError(report.issues.front());
  return p;
}

inline Expression load_expression(const std::string& path) { return parse_expression(read_file(path)); }

inline Json load_json(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    throw ValidationError(std::string("invalid JSON in '") + path + "': " + e.what());
  }
}

/// Writes `text` to `path` when given, otherwise embeds it under `key`.
inline void emit(Json& doc, const std::string& key, const std::string& text, const std::string& path) {
  if (path.empty()) {
    doc[key] = text;
  } else {
    write_file(path, text);
    doc[key + "_file"] = path;
  }
}

inline std::set<Sign> parse_sign_list(const std::string& list) {
  std::set<Sign> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto s = parse_sign(item);
    if (!s || *s == Sign::kAlpha) throw UsageError("sign list takes h, p and n; got '" + item + "'");
    out.insert(*s);
  }
  if (out.empty()) throw UsageError("empty sign list");
  return out;
}

inline Json atom_sets_json(const Program& p, const std::vector<AtomSet>& sets) {
  Json out = Json::array();
  for (const auto& s : sets) {
    Json names = Json::array();
    for (AtomId a : s.members()) names.push_back(p.atom_name(a));
    out.push_back(names);
  }
  return out;
}

inline int smallest_cycle_rank_bound(const Digraph& d) {
  int w = 0;
  while (!is_cycle_rank_at_most(d, w)) ++w;
  return w;
}

}  // namespace detail

/// Runs one command; `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Answer-set and classical-model decisions over k-expressions of signed incidence graphs", "cwasp"};
  app.require_subcommand(1);
  Json doc;
  int status = kOk;
  std::function<void()> action;

  // solve
  auto* solve = app.add_subcommand("solve", "decide model / answer-set existence by dynamic programming");
  std::string mode, program_file, expr_file, trace_file, auto_expr;
  solve->add_option("--mode", mode, "classical or asp")->required()->check(CLI::IsMember({"classical", "asp"}));
  solve->add_option("--program", program_file, "program file")->required();
  auto* expr_opt = solve->add_option("--expr", expr_file, "k-expression file");
  auto* auto_opt = solve->add_option("--auto-expr", auto_expr, "build the expression: trivial or heuristic")
                       ->check(CLI::IsMember({"trivial", "heuristic"}));
  expr_opt->excludes(auto_opt);
  solve->add_option("--trace", trace_file, "write the per-node DP tables as JSON");
  solve->callback([&] {
    action = [&] {
      if (expr_file.empty() && auto_expr.empty()) throw UsageError("solve needs --expr or --auto-expr");
      Program p = detail::load_program(program_file);
      Expression e = !expr_file.empty() ? detail::load_expression(expr_file)
                     : auto_expr == "trivial" ? trivial_expression(p)
                                              : heuristic_expression(p);
      auto mismatch = validate_against(e, p);
      if (!mismatch.ok()) {
        doc = to_json(mismatch);
        status = kInvalid;
        return;
      }
      DpOptions opts;
      opts.trace = !trace_file.empty();
      bool decision = false;
      DpStats stats;
      if (mode == "classical") {
        auto r = run_dp_classical(e, opts);
        decision = std::any_of(r.root.begin(), r.root.end(), [](const KTriple& q) { return q.u.empty(); });
        stats = r.stats;
        if (opts.trace) detail::write_file(trace_file, trace_json(e, r.trace).dump(2) + "\n");
      } else {
        auto r = run_dp_asp(e, opts);
        decision = has_answer_set(r.root);
        stats = r.stats;
        if (opts.trace) detail::write_file(trace_file, trace_json(e, r.trace).dump(2) + "\n");
      }
      doc = {{"mode", mode}, {"decision", decision}, {"width", stats.width}};
      Json sizes = {{"max", stats.max_table_size}, {"root", stats.table_sizes.back()}};
      if (mode == "asp") sizes["max_gamma"] = stats.max_gamma_size;
      sizes["per_node"] = stats.table_sizes;
      doc["table_sizes"] = sizes;
      status = decision ? kOk : kNegative;
    };
  });

  // oracle
  auto* oracle = app.add_subcommand("oracle", "enumerate models or answer sets by brute force");
  std::string oracle_mode;
  std::size_t max_atoms = 20;
  oracle->add_option("--mode", oracle_mode, "models or answersets")
      ->required()
      ->check(CLI::IsMember({"models", "answersets"}));
  oracle->add_option("--program", program_file, "program file")->required();
  oracle->add_option("--max-atoms", max_atoms, "enumeration bound");
  oracle->callback([&] {
    action = [&] {
      Program p = detail::load_program(program_file);
      OracleOptions o{max_atoms};
      auto sets = oracle_mode == "models" ? enumerate_models(p, o) : enumerate_answer_sets(p, o);
      doc = {{"mode", oracle_mode}, {"atoms", p.atoms()}, {"count", sets.size()},
             {"sets", detail::atom_sets_json(p, sets)}};
      status = sets.empty() ? kNegative : kOk;
    };
  });

  // validate
  auto* validate = app.add_subcommand("validate", "check that an expression defines sincG of a program");
  std::string join_list;
  validate->add_option("--program", program_file, "program file")->required();
  validate->add_option("--expr", expr_file, "k-expression file")->required();
  validate->add_option("--join", join_list, "compare against sincG_L for the comma-separated signs L");
  validate->callback([&] {
    action = [&] {
      Program p = detail::load_program(program_file);
      Expression e = detail::load_expression(expr_file);
      std::set<Sign> joined = join_list.empty() ? std::set<Sign>{} : detail::parse_sign_list(join_list);
      auto m = validate_against(e, p, joined);
      doc = to_json(m);
      doc["width"] = width(e);
      status = m.ok() ? kOk : kInvalid;
    };
  });

  // measure
  auto* measure = app.add_subcommand("measure", "cycle-rank measures");
  measure->require_subcommand(1);
  std::string graph_file;
  std::size_t max_vertices = 16;
  int at_most = -1;
  for (const char* which : {"cyclerank", "uncyclerank"}) {
    auto* sub = measure->add_subcommand(which, std::string(which) + " of a digraph (or of depG of a program)");
    auto* g = sub->add_option("--graph", graph_file, "digraph JSON (adjacency format)");
    auto* pr = sub->add_option("--program", program_file, "use the dependency graph of this program");
    g->excludes(pr);
    sub->add_option("--max-vertices", max_vertices, "exact search bound");
    sub->add_option("--at-most", at_most, "only decide cycle-rank <= this bound (branch and bound)");
    std::string name = which;
    sub->callback([&, name] {
      action = [&, name] {
        Digraph d;
        if (!graph_file.empty()) {
          d = digraph_from_json(detail::load_json(graph_file));
        } else if (!program_file.empty()) {
          d = build_dependency_graph(detail::load_program(program_file));
        } else {
          throw UsageError("measure needs --graph or --program");
        }
        if (name == "uncyclerank") d = symmetric_closure(d);
        doc = {{"measure", name}, {"vertices", d.size()}};
        if (at_most >= 0) {
          bool holds = is_cycle_rank_at_most(d, at_most);
          doc["at_most"] = at_most;
          doc["holds"] = holds;
          status = holds ? kOk : kNegative;
        } else {
          doc["value"] = cycle_rank(d, {max_vertices});
        }
      };
    });
  }
  auto* homo = measure->add_subcommand("homogeneous", "cycle-rank over homogeneous orientations of incG");
  OrientationOptions orient;
  homo->add_option("--program", program_file, "program file")->required();
  homo->add_option("--max-groups", orient.max_enumerated_groups, "enumerate all orientations up to this many groups");
  homo->add_option("--samples", orient.samples, "sample count beyond the bound");
  homo->add_option("--seed", orient.seed, "sampling seed");
  homo->callback([&] {
    action = [&] {
      Program p = detail::load_program(program_file);
      int worst = 0;
      auto summary = for_each_homogeneous_orientation(
          p, [&](const Digraph& d) { worst = std::max(worst, detail::smallest_cycle_rank_bound(d)); }, orient);
      doc = {{"measure", "homogeneous"},         {"groups", summary.groups},
             {"orientations", summary.visited},  {"exhaustive", summary.exhaustive},
             {"max_cycle_rank", worst}};
    };
  });

  // gen
  auto* gen = app.add_subcommand("gen", "instance generators and reductions");
  gen->require_subcommand(1);
  std::string out_file, expr_out, graph_out, qbf_file, pgraph_file;
  std::uint64_t seed = 1;

  auto* qbf2asp = gen->add_subcommand("qbf2asp", "reduce a QBF to a disjunctive program");
  qbf2asp->add_option("--qbf", qbf_file, "QBF file")->required();
  qbf2asp->add_option("-o,--out", out_file, "program output file");
  qbf2asp->add_option("--expr-out", expr_out, "also write the trivial expression here");
  qbf2asp->callback([&] {
    action = [&] {
      QbfEA q = parse_qbf(detail::read_file(qbf_file));
      Program p = reduce_qbf_to_asp(q);
      doc = {{"atoms", p.num_atoms()}, {"rules", p.num_rules()}};
      detail::emit(doc, "program", serialize_program(p), out_file);
      if (!expr_out.empty()) detail::write_file(expr_out, serialize_expression(trivial_expression(p)) + "\n");
    };
  });

  auto* pclique = gen->add_subcommand("pclique", "partitioned-clique instance and its program reduction");
  std::size_t k = 2, part_size = 2;
  double density = 0.5;
  pclique->add_option("--k", k, "number of parts");
  pclique->add_option("--part-size", part_size, "vertices per part");
  pclique->add_option("--density", density, "cross-part edge probability");
  pclique->add_option("--seed", seed, "generator seed");
  pclique->add_option("--graph", pgraph_file, "reduce this k-partite graph JSON instead of generating one");
  pclique->add_option("--graph-out", graph_out, "write the k-partite graph JSON");
  pclique->add_option("-o,--out", out_file, "program output file");
  pclique->add_option("--expr-out", expr_out, "expression (for sincG_{p,n}) output file");
  pclique->callback([&] {
    action = [&] {
      KPartiteGraph g = pgraph_file.empty() ? gen_pclique(k, part_size, density, seed)
                                            : kpartite_from_json(detail::load_json(pgraph_file));
      auto red = reduce_pclique_to_asp(g);
      doc = {{"k", g.k}, {"part_size", g.part_size}, {"edges", g.edges.size()},
             {"width", width(red.expression)}, {"width_bound", 2 * g.k + g.k * g.k}};
      if (!graph_out.empty()) {
        detail::write_file(graph_out, to_json(g).dump(2) + "\n");
        doc["graph_file"] = graph_out;
      } else {
        doc["graph"] = to_json(g);
      }
      detail::emit(doc, "program", serialize_program(red.program), out_file);
      detail::emit(doc, "expression", serialize_expression(red.expression) + "\n", expr_out);
    };
  });

  auto* grid = gen->add_subcommand("grid", "grid program family");
  std::size_t grid_n = 2;
  grid->add_option("--n", grid_n, "grid side length")->required();
  grid->add_option("-o,--out", out_file, "program output file");
  grid->callback([&] {
    action = [&] {
      Program p = gen_grid_program(grid_n);
      doc = {{"n", grid_n}, {"atoms", p.num_atoms()}, {"rules", p.num_rules()}};
      detail::emit(doc, "program", serialize_program(p), out_file);
    };
  });

  auto* rprog = gen->add_subcommand("random-program", "seeded random program");
  std::size_t num_atoms = 4, num_rules = 4;
  PartProbabilities probs;
  rprog->add_option("--atoms", num_atoms, "number of atoms");
  rprog->add_option("--rules", num_rules, "number of rules");
  rprog->add_option("--p-head", probs.head, "probability of a head occurrence");
  rprog->add_option("--p-pos", probs.pos, "probability of a positive body occurrence");
  rprog->add_option("--p-neg", probs.neg, "probability of a negative body occurrence");
  rprog->add_option("--seed", seed, "generator seed");
  rprog->add_option("-o,--out", out_file, "program output file");
  rprog->callback([&] {
    action = [&] {
      Program p = gen_random_program(num_atoms, num_rules, probs, seed);
      doc = {{"atoms", p.num_atoms()}, {"rules", p.num_rules()}, {"seed", seed}};
      detail::emit(doc, "program", serialize_program(p), out_file);
    };
  });

  auto* rqbf = gen->add_subcommand("random-qbf", "seeded random QBF");
  std::size_t qn = 2, qm = 2, qr = 2;
  rqbf->add_option("--n", qn, "existential variables");
  rqbf->add_option("--m", qm, "universal variables");
  rqbf->add_option("--terms", qr, "number of terms");
  rqbf->add_option("--seed", seed, "generator seed");
  rqbf->add_option("-o,--out", out_file, "QBF output file");
  rqbf->callback([&] {
    action = [&] {
      QbfEA q = gen_random_qbf(qn, qm, qr, seed);
      doc = {{"n", qn}, {"m", qm}, {"terms", qr}, {"seed", seed}, {"valid", qbf_is_valid(q)}};
      detail::emit(doc, "qbf", serialize_qbf(q), out_file);
    };
  });

  // expr
  auto* expr = app.add_subcommand("expr", "construct or transform k-expressions");
  expr->require_subcommand(1);
  for (const char* which : {"trivial", "heuristic"}) {
    auto* sub = expr->add_subcommand(which, std::string(which) + " expression for sincG of a program");
    sub->add_option("--program", program_file, "program file")->required();
    sub->add_option("-o,--out", out_file, "expression output file");
    std::string name = which;
    sub->callback([&, name] {
      action = [&, name] {
        Program p = detail::load_program(program_file);
        Expression e = name == "trivial" ? trivial_expression(p) : heuristic_expression(p);
        doc = {{"builder", name}, {"width", width(e)}, {"nodes", e.size()}};
        detail::emit(doc, "expression", serialize_expression(e) + "\n", out_file);
      };
    });
  }
  auto* join = expr->add_subcommand("join", "rename the given edge signs to alpha");
  join->add_option("--expr", expr_file, "k-expression file")->required();
  join->add_option("--labels", join_list, "comma-separated signs, e.g. p,n")->required();
  join->add_option("-o,--out", out_file, "expression output file");
  join->callback([&] {
    action = [&] {
      Expression e = join_labels(detail::load_expression(expr_file), detail::parse_sign_list(join_list));
      doc = {{"width", width(e)}, {"nodes", e.size()}};
      detail::emit(doc, "expression", serialize_expression(e) + "\n", out_file);
    };
  });
  auto* ast = expr->add_subcommand("ast", "JSON syntax tree of an expression");
  ast->add_option("--expr", expr_file, "k-expression file")->required();
  ast->callback([&] {
    action = [&] { doc = {{"width", 0}, {"ast", to_json(detail::load_expression(expr_file))}}; };
  });

  // graph
  auto* graph = app.add_subcommand("graph", "export graph representations as DOT or JSON");
  graph->require_subcommand(1);
  std::string format = "json";
  for (const char* which : {"dep", "inc", "sinc", "expr"}) {
    auto* sub = graph->add_subcommand(which, std::string(which) == "expr" ? "graph defined by an expression"
                                                                          : std::string(which) + " graph of a program");
    if (std::string(which) == "expr") {
      sub->add_option("--expr", expr_file, "k-expression file")->required();
    } else {
      sub->add_option("--program", program_file, "program file")->required();
    }
    sub->add_option("--format", format, "dot or json")->check(CLI::IsMember({"dot", "json"}));
    sub->add_option("-o,--out", out_file, "output file");
    std::string name = which;
    sub->callback([&, name] {
      action = [&, name] {
        Json j;
        std::string dot;
        if (name == "expr") {
          auto g = evaluate(detail::load_expression(expr_file));
          j = to_json(g);
          dot = to_dot(g);
        } else {
          Program p = detail::load_program(program_file);
          if (name == "dep") {
            auto g = build_dependency_graph(p);
            j = to_json(g);
            dot = to_dot(g);
          } else if (name == "inc") {
            auto g = build_incidence_graph(p);
            j = to_json(g);
            dot = to_dot(g);
          } else {
            auto g = build_signed_incidence_graph(p);
            j = to_json(g);
            dot = to_dot(g);
          }
        }
        doc = {{"graph", name}, {"format", format}};
        if (format == "json" && out_file.empty()) {
          doc["content"] = j;
        } else {
          detail::emit(doc, "content", format == "json" ? j.dump(2) + "\n" : dot, out_file);
        }
      };
    });
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (!action) throw UsageError("no command given");
    action();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    out << Json{{"ok", false}, {"error", e.what()}}.dump() << "\n";
    return kInvalid;
  }
  out << doc.dump(2) << "\n";
  return status;
}

}  // namespace cwasp::cli
