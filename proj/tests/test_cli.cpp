#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

using namespace cwasp;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int status;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Outcome run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int status = cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("cwasp_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& content) {
    fs::path p = dir_ / name;
    std::ofstream(p) << content;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

const char* kExample = "x :- not y.\n:- x, not y.\n";
const char* kWorked =
    "eta(n,3,2, oplus( rho(3,2, eta(p,1,3, oplus( eta(h,1,2, oplus(a(1,x), r(2,r1)) ), r(3,r2)) )), a(3,y) ))";

}  // namespace

TEST_F(CliTest, SolveClassicalOnWorkedExample) {
  auto prog = file("ex.lp", kExample), expr = file("ex.kexpr", kWorked);
  auto r = run_cli({"solve", "--mode", "classical", "--program", prog, "--expr", expr, "--trace", path("t.json")});
  EXPECT_EQ(r.status, 0) << r.err;
  Json j = r.json();
  EXPECT_TRUE(j["decision"].get<bool>());
  EXPECT_EQ(j["width"], 3);
  EXPECT_EQ(j["table_sizes"]["root"], 4);
  std::ifstream trace(path("t.json"));
  Json t = Json::parse(trace);
  EXPECT_EQ(t["nodes"].size(), 11u);
  EXPECT_EQ(t["nodes"][10]["triples"].size(), 4u);
}

TEST_F(CliTest, SolveAspNegativeConstraint) {
  auto prog = file("neg.lp", "@r: :- not x.\n"), expr = file("neg.kexpr", "eta(n,1,2,oplus(a(1,x),r(2,r)))");
  auto r = run_cli({"solve", "--mode", "asp", "--program", prog, "--expr", expr});
  EXPECT_EQ(r.status, 1);
  EXPECT_FALSE(r.json()["decision"].get<bool>());
  auto a = run_cli({"solve", "--mode", "asp", "--program", prog, "--auto-expr", "trivial"});
  EXPECT_EQ(a.status, 1);
}

TEST_F(CliTest, SolveRejectsMismatchedExpression) {
  auto prog = file("ex.lp", kExample), expr = file("bad.kexpr", "eta(h,1,2,oplus(a(1,x),r(2,r1)))");
  auto r = run_cli({"solve", "--mode", "classical", "--program", prog, "--expr", expr});
  EXPECT_EQ(r.status, 3);
  EXPECT_FALSE(r.json()["ok"].get<bool>());
}

TEST_F(CliTest, ValidateReportsDiff) {
  auto prog = file("ex.lp", kExample);
  auto good = run_cli({"validate", "--program", prog, "--expr", file("g.kexpr", kWorked)});
  EXPECT_EQ(good.status, 0);
  EXPECT_TRUE(good.json()["ok"].get<bool>());
  auto bad = run_cli({"validate", "--program", prog, "--expr", file("b.kexpr", "a(1,x)")});
  EXPECT_EQ(bad.status, 3);
  EXPECT_FALSE(bad.json()["issues"].empty());
}

TEST_F(CliTest, Oracle) {
  auto prog = file("ex.lp", kExample);
  auto models = run_cli({"oracle", "--mode", "models", "--program", prog});
  EXPECT_EQ(models.status, 0);
  EXPECT_EQ(models.json()["sets"], Json::parse(R"([["y"],["x","y"]])"));
  auto as = run_cli({"oracle", "--mode", "answersets", "--program", prog});
  EXPECT_EQ(as.status, 1);
  EXPECT_EQ(as.json()["count"], 0);
}

TEST_F(CliTest, MeasuresAndGenerators) {
  auto qbf = file("f.qbf", "exists x1 x2\nforall y1 y2\nterm x1 -y2\nterm -x2 y2\n");
  auto g = run_cli({"gen", "qbf2asp", "--qbf", qbf, "-o", path("q.lp")});
  ASSERT_EQ(g.status, 0) << g.err;
  auto u = run_cli({"measure", "uncyclerank", "--program", path("q.lp")});
  EXPECT_EQ(u.json()["value"], 2);
  auto h = run_cli({"measure", "homogeneous", "--program", path("q.lp")});
  EXPECT_EQ(h.json()["max_cycle_rank"], 1);
  auto s = run_cli({"solve", "--mode", "asp", "--program", path("q.lp"), "--auto-expr", "heuristic"});
  EXPECT_EQ(s.status, 0);

  auto dep = run_cli({"graph", "dep", "--program", path("q.lp"), "-o", path("dep.json")});
  ASSERT_EQ(dep.status, 0);
  auto c = run_cli({"measure", "cyclerank", "--graph", path("dep.json")});
  EXPECT_EQ(c.status, 0);
  auto bounded = run_cli({"measure", "uncyclerank", "--graph", path("dep.json"), "--at-most", "1"});
  EXPECT_EQ(bounded.status, 1);
  EXPECT_FALSE(bounded.json()["holds"].get<bool>());

  auto pc = run_cli({"gen", "pclique", "--k", "2", "--part-size", "2", "--seed", "4", "-o", path("pc.lp"),
                     "--expr-out", path("pc.kexpr")});
  ASSERT_EQ(pc.status, 0);
  auto v = run_cli({"validate", "--program", path("pc.lp"), "--expr", path("pc.kexpr"), "--join", "p,n"});
  EXPECT_EQ(v.status, 0) << v.out;

  auto grid = run_cli({"gen", "grid", "--n", "2"});
  EXPECT_EQ(grid.json()["atoms"], 4);
  auto rq = run_cli({"gen", "random-qbf", "--n", "2", "--m", "2", "--terms", "3", "--seed", "5"});
  EXPECT_EQ(rq.status, 0);
  auto rp = run_cli({"gen", "random-program", "--atoms", "3", "--rules", "3", "--seed", "5"});
  EXPECT_EQ(rp.status, 0);
}

TEST_F(CliTest, ExpressionCommands) {
  auto prog = file("ex.lp", kExample);
  auto t = run_cli({"expr", "trivial", "--program", prog});
  EXPECT_EQ(t.json()["width"], 4);
  auto j = run_cli({"expr", "join", "--expr", file("f.kexpr", kWorked), "--labels", "p,n"});
  EXPECT_EQ(j.json()["width"], 3);
  EXPECT_NE(j.json()["expression"].get<std::string>().find("alpha"), std::string::npos);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run_cli({}).status, 2);
  EXPECT_EQ(run_cli({"solve", "--mode", "quantum"}).status, 2);
  EXPECT_EQ(run_cli({"oracle", "--mode", "models", "--program", path("missing.lp")}).status, 2);
  auto prog = file("ex.lp", kExample);
  EXPECT_EQ(run_cli({"solve", "--mode", "asp", "--program", prog}).status, 2);
  auto bad = run_cli({"oracle", "--mode", "models", "--program", file("bad.lp", "a :- a.")});
  EXPECT_EQ(bad.status, 3);
  EXPECT_FALSE(bad.err.empty());
}

TEST_F(CliTest, OutputIsDeterministic) {
  std::vector<std::string> args = {"gen", "pclique", "--k", "3", "--part-size", "2", "--seed", "9"};
  EXPECT_EQ(run_cli(args).out, run_cli(args).out);
  auto prog = file("ex.lp", kExample);
  std::vector<std::string> solve = {"solve", "--mode", "asp", "--program", prog, "--auto-expr", "heuristic"};
  EXPECT_EQ(run_cli(solve).out, run_cli(solve).out);
}
