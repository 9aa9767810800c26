#include <gtest/gtest.h>

#include "conecalc/suite.hpp"

using namespace conecalc;

namespace {

std::string flatten(const SuiteReport& r) {
  std::string s = std::to_string(r.skipped) + "\n";
  for (const auto& c : r.claims) {
    s += c.claim + " " + std::to_string(c.n) + " " + std::to_string(c.k) + " " + std::to_string(c.checked) +
         " " + std::to_string(c.failed) + " " + c.lhs + " " + c.rhs + " " + c.slack + " " + c.witness + "\n";
  }
  return s;
}

SuiteConfig small_config() {
  SuiteConfig cfg;
  cfg.ns = {2, 3};
  cfg.ks = {1, 2};
  cfg.trials = 25;
  cfg.seed = 7;
  return cfg;
}

}  // namespace

TEST(Suite, SmallRunPasses) {
  SuiteReport r = run_suite(small_config());
  EXPECT_FALSE(r.any_failure());
  EXPECT_EQ(r.skipped, 0);
  for (const auto& c : r.claims) EXPECT_GT(c.checked, 0) << c.claim;
}

TEST(Suite, ReportIndependentOfThreadCount) {
  SuiteConfig one = small_config(), many = small_config();
  one.threads = 1;
  many.threads = 8;
  EXPECT_EQ(flatten(run_suite(one)), flatten(run_suite(many)));
}

TEST(Suite, SeedChangesTrials) {
  SuiteConfig a = small_config(), b = small_config();
  b.seed = 8;
  EXPECT_NE(flatten(run_suite(a)), flatten(run_suite(b)));
}

TEST(Suite, BudgetOverrunsAreCountedNotHidden) {
  SuiteConfig cfg = small_config();
  cfg.ns = {3};
  cfg.ks = {2};
  cfg.trials = 5;
  cfg.term_budget = 100;  // f^2 has D(3,8) = 45 terms, f^4 has D(3,16) = 153
  SuiteReport r = run_suite(cfg);
  EXPECT_EQ(r.skipped, 5);
  for (const auto& c : r.claims) {
    if (c.claim == "sup-vs-l4") {
      EXPECT_EQ(c.checked, 0);
    } else if (c.claim == "sup-vs-l2") {
      EXPECT_EQ(c.checked, 5);
    }
  }
}

TEST(Suite, SharpnessRecordsEquality) {
  SuiteReport r = run_suite(small_config());
  int seen = 0;
  for (const auto& c : r.claims) {
    if (c.claim.ends_with("-sharp")) {
      ++seen;
      EXPECT_TRUE(c.pass()) << c.claim << " " << c.lhs << " " << c.rhs;
    }
  }
  EXPECT_EQ(seen, 12);
}

TEST(Suite, ClaimsHoldForTheCenter) {
  // f = r^{2k}: every norm is 1.
  for (int n = 2; n <= 3; ++n)
    for (int k = 1; k <= 2; ++k) {
      HomoForm f = HomoForm::r_power(n, k);
      EXPECT_EQ(l2_norm_squared(f), 1);
      EXPECT_EQ(l2l_norm_power(f, 2), 1);
      SphereExtrema e = sphere_extrema(f);
      EXPECT_NEAR(e.max, 1, 1e-12);
      EXPECT_NEAR(e.min, 1, 1e-12);
    }
}

TEST(Suite, RejectsBadCells) {
  SuiteConfig cfg = small_config();
  cfg.ns = {1};
  EXPECT_THROW(run_suite(cfg), Error);
}
