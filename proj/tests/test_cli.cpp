#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <unistd.h>

#include "cli.hpp"
#include "engel/io.hpp"
#include "engel/witness.hpp"
#include "support.hpp"

using namespace engel;
namespace fs = std::filesystem;

namespace {

struct Invocation {
  int code;
  std::string out, err;
};

Invocation run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    // ctest runs each case in its own process, possibly concurrently
    dir_ = fs::temp_directory_path() / ("engel_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  static void TearDownTestSuite() { fs::remove_all(dir_); }
  static std::string path(const std::string& name) { return (dir_ / name).string(); }
  static std::string table_file(std::uint32_t p, std::size_t rank, unsigned n, unsigned cap, bool small = false) {
    const std::string f = path("t_" + std::to_string(p) + "_" + std::to_string(rank) + "_" + std::to_string(n) + "_" +
                               std::to_string(cap) + ".eng");
    if (!fs::exists(f)) io::save(test::table(p, rank, n, cap, small), f);
    return f;
  }
  static inline fs::path dir_;
};

}  // namespace

TEST_F(Cli, FreeThenClass) {
  const std::string f = path("a.eng");
  const Invocation a = run({"free", "--p", "5", "--rank", "2", "--engel", "3", "--cap", "6", "--out", f});
  EXPECT_EQ(a.code, cli::kOk) << a.err;
  EXPECT_NE(a.out.find("[quotient.build_quotient]"), std::string::npos);
  const Invocation c = run({"class", f});
  EXPECT_EQ(c.code, cli::kOk);
  EXPECT_NE(c.out.find("class "), std::string::npos);
  EXPECT_NE(c.out.find("cap_reached false"), std::string::npos);
  const Invocation j = run({"class", f, "--json"});
  const auto doc = nlohmann::json::parse(j.out);
  EXPECT_EQ(doc["class"], quotient::nilpotency_class(test::table(5, 2, 3, 6)).nilpotency_class);
  EXPECT_EQ(doc["cap_reached"], false);
  EXPECT_EQ(doc["check"], "quotient.nilpotency_class");
}

TEST_F(Cli, CheckHolds) {
  const Invocation r = run({"check", table_file(5, 3, 3, 6), "--id", "crucial_3"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_NE(r.out.find("holds"), std::string::npos);
  EXPECT_NE(r.out.find("seed 0xe9e1"), std::string::npos);
}

TEST_F(Cli, CheckFailsWithMatrices) {
  const std::string f = path("e4.eng");
  ASSERT_EQ(run({"free", "--p", "5", "--rank", "2", "--engel", "4", "--cap", "6", "--allow-small", "--out", f}).code,
            cli::kOk);
  const Invocation r = run({"check", f, "--id", "crucial_3"});
  EXPECT_EQ(r.code, cli::kCheckFailed);
  EXPECT_NE(r.out.find("FAILS"), std::string::npos);
  EXPECT_NE(r.out.find("lhs matrix:"), std::string::npos);
  EXPECT_NE(r.out.find("rhs matrix:"), std::string::npos);
  const auto doc = nlohmann::json::parse(run({"check", f, "--id", "crucial_3", "--json"}).out);
  EXPECT_FALSE(doc["holds"].get<bool>());
  EXPECT_TRUE(doc.contains("counterexample"));
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, cli::kUsage);
  EXPECT_EQ(run({"bogus"}).code, cli::kUsage);
  EXPECT_EQ(run({"check", table_file(5, 2, 3, 8), "--id", "nope"}).code, cli::kUsage);
  EXPECT_EQ(run({"class", path("missing.eng")}).code, cli::kUsage);
  EXPECT_EQ(run({"free", "--p", "3", "--engel", "3"}).code, cli::kUsage);
  EXPECT_EQ(run({"free", "--p", "4"}).code, cli::kUsage);
  EXPECT_EQ(run({"witness", "--k", "1"}).code, cli::kUsage);
  EXPECT_EQ(run({"witness", "--k", "3"}).code, cli::kUsage);
  EXPECT_EQ(run({"check", table_file(7, 2, 3, 6), "--id", "crucial_1"}).code, cli::kUsage);
  EXPECT_EQ(run({"--help"}).code, cli::kOk);
}

TEST_F(Cli, CorruptTableIsAnInvariantFailure) {
  const std::string f = path("bad.eng");
  std::ofstream(f) << "%ENGELALG 1\np 5\nrank 2\nengel 3\ncap 4\nmdegcap none\ndim 3\n"
                      "basis 0 1,0 g1\nbasis 1 0,1 g2\nbasis 2 1,1 (g2,g1)\nsc 1 0 2:1\n";
  const Invocation r = run({"class", f});
  EXPECT_EQ(r.code, cli::kCheckFailed);
  EXPECT_NE(r.err.find("antisymmetry"), std::string::npos);
}

TEST_F(Cli, BudgetAndInconclusive) {
  EXPECT_EQ(run({"pipeline", table_file(5, 2, 0, 5)}).code, cli::kBudget);
  EXPECT_EQ(run({"free", "--p", "5", "--rank", "3", "--engel", "0", "--cap", "6", "--budget", "10"}).code, cli::kBudget);
}

TEST_F(Cli, PipelineAndTraustasonAndFlaws) {
  const std::string f = table_file(5, 2, 3, 8);
  const Invocation p = run({"pipeline", f, "--json"});
  EXPECT_EQ(p.code, cli::kOk);
  const auto doc = nlohmann::json::parse(p.out);
  EXPECT_TRUE(doc["bound_satisfied"].get<bool>());
  EXPECT_EQ(doc["minimal_n"], 2);
  EXPECT_EQ(run({"traustason", f}).code, cli::kOk);
  const Invocation fl = run({"flaws", f, "--trials", "100", "--seed", "17"});
  EXPECT_EQ(fl.code, cli::kOk);
  EXPECT_NE(fl.out.find("seed 0x11"), std::string::npos);
}

TEST_F(Cli, ReportsAreDeterministic) {
  const std::string f = table_file(5, 3, 3, 6);
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"flaws", f, "--trials", "50"}, std::vector<std::string>{"check", f, "--id", "higgins_b"},
        std::vector<std::string>{"probe", f, "--trials", "2000", "--json"}}) {
    const Invocation a = run(args), b = run(args);
    EXPECT_EQ(a.out, b.out);
    std::vector<std::string> serial = args;
    serial.push_back("--serial");
    EXPECT_EQ(run(serial).out, a.out);
  }
}

TEST_F(Cli, ProbeAndOracle) {
  const Invocation p = run({"probe", table_file(5, 2, 3, 8), "--k", "2", "--l", "3", "--trials", "5000"});
  EXPECT_EQ(p.code, cli::kOk);
  EXPECT_NE(p.out.find("none found"), std::string::npos);
  const Invocation o = run({"oracle", "--p", "5", "--rank", "2", "--engel", "3", "--cap", "5", "--json"});
  EXPECT_EQ(o.code, cli::kOk);
  EXPECT_TRUE(nlohmann::json::parse(o.out)["agree"].get<bool>());
}

TEST_F(Cli, EvalTupleFile) {
  const std::string f = table_file(5, 2, 2, 4);
  const std::string tuple = path("tuple.txt");
  std::ofstream(tuple) << "0:1\n1:1\n0:1\n0:1\n";
  const Invocation r = run({"eval", f, "--tuple", tuple, "--formula", "phi", "--exhaustive"});
  EXPECT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_NE(r.out.find("unsat"), std::string::npos);
  const Invocation s = run({"eval", f, "--tuple", tuple, "--formula", "psi", "--exhaustive", "--json"});
  EXPECT_EQ(nlohmann::json::parse(s.out)["verdict"], "sat");
  const Invocation u = run({"eval", table_file(5, 2, 3, 8), "--tuple", tuple, "--formula", "phi", "--trials", "100"});
  EXPECT_EQ(u.code, cli::kBudget);
  EXPECT_NE(u.out.find("unknown"), std::string::npos);

  std::ofstream(path("short.txt")) << "0:1\n";
  EXPECT_EQ(run({"eval", f, "--tuple", path("short.txt")}).code, cli::kUsage);
  EXPECT_EQ(run({"eval", f, "--tuple", tuple, "--formula", "chi"}).code, cli::kUsage);
}

TEST_F(Cli, Witness) {
  const Invocation r = run({"witness", "--k", "2"});
  EXPECT_EQ(r.code, cli::kOk) << r.out;
  EXPECT_NE(r.out.find("[witness.verify_phi_chain]"), std::string::npos);
  EXPECT_NE(r.out.find("[witness.verify_psi_chain]"), std::string::npos);
  EXPECT_NE(r.out.find("all witness checks passed"), std::string::npos);
  const Invocation printed = run({"witness", "--printed", "--json"});
  EXPECT_EQ(printed.code, cli::kCheckFailed);
  EXPECT_FALSE(nlohmann::json::parse(printed.out)["passed"].get<bool>());
}
