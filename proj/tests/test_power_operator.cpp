#include <gtest/gtest.h>

#include <cmath>

#include "conecalc/parse.hpp"
#include "conecalc/power_operator.hpp"
#include "conecalc/random.hpp"

using namespace conecalc;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::InvalidArgument;
}

}  // namespace

TEST(TOperator, Coefficients) {
  EXPECT_EQ(t_coefficients(3, 1, 1).coeffs, (std::vector<Rational>{1, rational(2, 5)}));
  EXPECT_EQ(t_coefficients(3, 1, 2).coeffs, (std::vector<Rational>{1, rational(4, 7)}));
  EXPECT_EQ(t_coefficients(3, 1, 10).coeffs.back(), rational(20, 23));
  EXPECT_EQ(code_of([] { t_coefficients(3, 2, 1); }), Errc::BadDegrees);
  EXPECT_EQ(code_of([] { t_coefficients(3, 0, 1); }), Errc::BadDegrees);
}

// Oracle: the Gamma-function closed form of the shrink factors.
TEST(TOperator, CoefficientsMatchGammaFormula) {
  for (int n = 2; n <= 6; ++n)
    for (int k = 1; k <= 3; ++k)
      for (int m = k; m <= k + 5; ++m) {
        OperatorSpec s = t_coefficients(n, k, m);
        for (int i = 0; i <= k; ++i) {
          const double expect = std::exp(std::lgamma(m + 1) + std::lgamma((2.0 * m + n) / 2) -
                                         std::lgamma(m - i + 1) - std::lgamma((2.0 * m + 2 * i + n) / 2));
          EXPECT_NEAR(to_double(s.coeffs[i]), expect, 1e-12);
        }
      }
}

TEST(TOperator, ShrinkFactorsDecreaseInLevelAndGrowInM) {
  for (int n = 2; n <= 5; ++n)
    for (int k = 1; k <= 3; ++k)
      for (int m = k; m <= k + 6; ++m) {
        auto a = t_coefficients(n, k, m).coeffs, b = t_coefficients(n, k, m + 1).coeffs;
        for (int i = 1; i <= k; ++i) {
          EXPECT_LT(a[i], a[i - 1]);
          EXPECT_GT(a[i], 0);
          EXPECT_LT(a[i], b[i]);
        }
      }
}

TEST(TOperator, ApplyExample) {
  HomoForm tf = apply_t(t_coefficients(3, 1, 2), parse_form("3*x3^2", 3));
  EXPECT_EQ(tf, parse_form("3/7*x1^2 + 3/7*x2^2 + 15/7*x3^2", 3));
  EXPECT_EQ(apply_t(t_coefficients(3, 2, 3), HomoForm::r_power(3, 2)), HomoForm::r_power(3, 2));
  EXPECT_EQ(code_of([] { apply_t(t_coefficients(3, 1, 2), parse_form("x1^4", 3)); }), Errc::DegreeMismatch);
  EXPECT_EQ(code_of([] { apply_t(t_coefficients(3, 1, 2), parse_form("x1^2", 2)); }), Errc::DimensionMismatch);
}

TEST(TOperator, IntegralDefinitionMatchesDiagonalAction) {
  Rng rng(51);
  for (int n = 2; n <= 3; ++n)
    for (int k = 1; k <= 2; ++k)
      for (int m = k; m <= 3; ++m)
        for (int trial = 0; trial < 3; ++trial) {
          HomoForm f = random_form(n, 2 * k, rng);
          EXPECT_EQ(apply_t_by_integration(f, m),
                    HomoForm::r_power(n, m - k) * apply_t(t_coefficients(n, k, m), f));
        }
}

TEST(TOperator, Equivariance) {
  Rng rng(52);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = static_cast<int>(rng.uniform_int(2, 4));
    OperatorSpec s = t_coefficients(n, 2, 3);
    HomoForm f = random_form(n, 4, rng);
    auto a = random_signed_permutation(n, rng);
    EXPECT_EQ(apply_t(s, compose_signed_permutation(f, a.perm, a.signs)),
              compose_signed_permutation(apply_t(s, f), a.perm, a.signs));
  }
}

TEST(TOperator, PreservesIntegral) {
  Rng rng(53);
  for (int trial = 0; trial < 15; ++trial) {
    HomoForm f = random_form(3, 4, rng);
    EXPECT_EQ(integral(apply_t(t_coefficients(3, 2, 4), f)), integral(f));
  }
}

TEST(PowerExpansion, MatchesNormalizedAxisPower) {
  for (int n = 2; n <= 5; ++n)
    for (int k = 1; k <= 3; ++k) {
      Exponent e(n, 0);
      e[n - 1] = 2 * k;
      EXPECT_EQ(power_expansion(n, k), HomoForm::monomial(e, Rational(1) / monomial_sphere_integral(e)));
    }
}

TEST(VolumeBound, Examples) {
  EXPECT_EQ(volume_ratio_bound(3, 1, 10), rational(20, 23));
  DegreeChoice c = degree_for_epsilon(3, 1, rational(1, 10));
  EXPECT_EQ(c.m, 50);
  EXPECT_TRUE(c.meets_target);
  EXPECT_EQ(code_of([] { degree_for_epsilon(3, 1, Rational(0)); }), Errc::BadEpsilon);
  EXPECT_EQ(code_of([] { degree_for_epsilon(3, 1, rational(3, 2)); }), Errc::BadEpsilon);
}

TEST(VolumeBound, DegreeForEpsilonMeetsTarget) {
  for (int n = 2; n <= 4; ++n)
    for (int k = 1; k <= 2; ++k)
      for (const Rational& eps : {Rational(1), rational(1, 2), rational(1, 4), rational(1, 10)}) {
        DegreeChoice c = degree_for_epsilon(n, k, eps);
        EXPECT_GE(c.bound, 1 - eps);
        EXPECT_TRUE(c.meets_target);
      }
}
