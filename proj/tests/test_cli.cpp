#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "conecalc/cli.hpp"

using conecalc::cli_dispatch;

namespace {

struct CliRun {
  int status;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "conecalc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int status = cli_dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST(Cli, John) {
  CliRun r = run({"john", "--n", "3", "--k", "1"});
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(contains(r.out, "radius^2 = 1/5")) << r.out;
  EXPECT_TRUE(contains(r.out, "basis = John ellipsoid")) << r.out;
}

TEST(Cli, CertifyNonneg) {
  CliRun r = run({"certify", "nonneg", "--n", "3", "--k", "1", "--form", "r2 - 10*(3*x3^2 - r2)/2"});
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(contains(r.out, "verdict = ProvedNonMember")) << r.out;
  EXPECT_TRUE(contains(r.out, "distance = 20")) << r.out;
}

TEST(Cli, Decompose) {
  CliRun r = run({"decompose", "--n", "3", "--form", "x3^2"});
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(contains(r.out, "levels = {2: \"x3^2 - 1/3*r2\", 0: \"1/3\"}")) << r.out;
}

TEST(Cli, DecomposeJson) {
  CliRun r = run({"decompose", "--n", "3", "--form", "x3^2", "--json"});
  ASSERT_EQ(r.status, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["levels"]["2"], "x3^2 - 1/3*r2");
  EXPECT_EQ(j["levels"]["0"], "1/3");
  EXPECT_EQ(j["reconstructs"], true);
}

TEST(Cli, FormFromFile) {
  const std::string path = ::testing::TempDir() + "conecalc_form.txt";
  std::ofstream(path) << "3*x3^2\n";
  CliRun r = run({"certify", "powers", "--n", "3", "--file", path});
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(contains(r.out, "on_boundary = true")) << r.out;
  std::remove(path.c_str());
}

TEST(Cli, OtherCommands) {
  EXPECT_TRUE(contains(run({"integrate", "--n", "3", "--form", "x3^2"}).out, "integral = 1/3"));
  EXPECT_TRUE(contains(run({"inner", "--n", "3", "--form", "x3^2", "--form", "x3^2"}).out, "inner = 1/5"));
  EXPECT_TRUE(contains(run({"legendre", "--n", "3", "--d", "2"}).out, "postconditions = true"));
  EXPECT_TRUE(contains(run({"dualpoint", "--n", "3", "--k", "1"}).out, "p_v = -3/2*x1^2 - 3/2*x2^2 + 6*x3^2"));
  EXPECT_TRUE(contains(run({"apply-t", "--n", "3", "--k", "1", "--m", "10"}).out, "coefficients = [1, 20/23]"));
  EXPECT_TRUE(contains(run({"loewner", "--n", "3", "--k", "1"}).out, "radius^2 = 5"));
  EXPECT_TRUE(contains(run({"lf-ellipsoid", "--n", "3", "--k", "1"}).out, "weights = {2: 25/4}"));
  EXPECT_TRUE(contains(run({"symmetry", "--cone", "Lf", "--n", "3", "--k", "2"}).out, "symmetry = 1/5"));
  EXPECT_TRUE(contains(run({"maxform", "--n", "3", "--k", "1"}).out, "f = 3*x3^2"));
  EXPECT_TRUE(contains(run({"volume-bound", "--n", "3", "--k", "1", "--m", "10"}).out, "bound = 20/23"));
  EXPECT_TRUE(contains(run({"volume-bound", "--n", "3", "--k", "1", "--eps", "1/10"}).out, "meets_target = true"));
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).status, 2);
  EXPECT_EQ(run({"nonsense"}).status, 2);
  EXPECT_EQ(run({"john", "--n", "abc"}).status, 2);
  EXPECT_EQ(run({"integrate", "--n", "2", "--form", "x1^2 + x2^3"}).status, 2);
  EXPECT_EQ(run({"integrate", "--n", "2"}).status, 2);
  EXPECT_EQ(run({"legendre", "--n", "3", "--d", "2", "--axis", "1,1,0"}).status, 2);
  EXPECT_EQ(run({"volume-bound", "--n", "3", "--k", "1", "--eps", "0"}).status, 2);
  EXPECT_EQ(run({"certify", "--n", "3", "--form", "x3^2"}).status, 2);
  CliRun r = run({"certify", "nonneg", "--n", "3", "--form", "3*x3^2 - r2"});
  EXPECT_EQ(r.status, 2);
  EXPECT_TRUE(contains(r.err, "ZeroIntegral")) << r.err;
}

TEST(Cli, SuiteIsDeterministic) {
  std::vector<std::string> args{"suite", "--n", "3", "--k", "1", "--trials", "10", "--seed", "5", "--json"};
  CliRun a = run(args), b = run(args);
  EXPECT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  auto j = nlohmann::json::parse(a.out);
  ASSERT_TRUE(j["claims"].is_array());
  for (const auto& c : j["claims"]) {
    for (const char* key : {"claim", "paper_ref", "exact", "lhs", "rhs", "slack", "pass"}) {
      EXPECT_TRUE(c.contains(key)) << key;
    }
    EXPECT_EQ(c.size(), 7u);
    EXPECT_TRUE(c["pass"].get<bool>());
  }
}

#ifdef CONECALC_BIN
TEST(Cli, BinaryExitCodes) {
  const std::string bin = CONECALC_BIN;
  EXPECT_EQ(std::system((bin + " john --n 3 --k 1 > /dev/null").c_str()), 0);
  EXPECT_NE(std::system((bin + " frobnicate > /dev/null 2>&1").c_str()), 0);
}
#endif
