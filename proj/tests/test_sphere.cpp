#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "conecalc/parse.hpp"
#include "conecalc/random.hpp"

using namespace conecalc;

namespace {

Exponent exps(std::initializer_list<unsigned> e) { return Exponent(e); }

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::InvalidArgument;
}

}  // namespace

TEST(SphereIntegral, SmallCases) {
  EXPECT_EQ(monomial_sphere_integral(exps({0, 0, 2})), rational(1, 3));
  EXPECT_EQ(monomial_sphere_integral(exps({2, 2})), rational(1, 8));
  EXPECT_EQ(monomial_sphere_integral(exps({0, 0, 4})), rational(1, 5));
  EXPECT_EQ(monomial_sphere_integral(exps({2, 2, 2})), rational(1, 105));
  EXPECT_EQ(monomial_sphere_integral(exps({1, 1, 2})), 0);
  EXPECT_EQ(monomial_sphere_integral(exps({0, 0, 0})), 1);
  EXPECT_EQ(integral(parse_form("x1^3", 2)), 0);
  EXPECT_EQ(code_of([] { monomial_sphere_integral(exps({2})); }), Errc::DimensionTooSmall);
}

// Independent oracle: Gamma-function formula for the axial moments.
TEST(SphereIntegral, AxialMomentsMatchGammaFormula) {
  for (int n = 2; n <= 7; ++n) {
    for (int m = 0; m <= 6; ++m) {
      Exponent e(n, 0);
      e[n - 1] = 2 * m;
      const double expect = std::tgamma(n / 2.0) * std::tgamma(m + 0.5) /
                            (std::sqrt(M_PI) * std::tgamma(m + n / 2.0));
      EXPECT_NEAR(to_double(monomial_sphere_integral(e)), expect, 1e-13 * expect) << n << " " << m;
    }
  }
}

// Independent oracle: Monte Carlo over normalized Gaussian vectors.
TEST(SphereIntegral, MonteCarloAgreesWithinThreeStandardErrors) {
  const std::vector<Exponent> cases = {
      {2, 0},       {2, 2},       {4, 2},       {0, 6},       {2, 0, 0},    {2, 2, 0},    {4, 0, 2},
      {2, 2, 2},    {0, 0, 6},    {1, 1, 2},    {2, 0, 0, 0}, {2, 2, 0, 0}, {0, 4, 0, 2}, {2, 2, 2, 2},
      {2, 0, 0, 0, 0}, {2, 2, 0, 0, 0}, {4, 0, 0, 0, 2}, {2, 2, 2, 0, 0}, {1, 0, 3, 0, 0}, {0, 0, 0, 0, 8}};
  ASSERT_EQ(cases.size(), 20u);
  constexpr int kSamples = 1'000'000;
  std::mt19937_64 engine(2024);
  std::normal_distribution<double> gauss;
  for (int n = 2; n <= 5; ++n) {
    std::vector<const Exponent*> mine;
    for (const auto& e : cases)
      if (static_cast<int>(e.size()) == n) mine.push_back(&e);
    std::vector<double> sum(mine.size()), sum_sq(mine.size());
    std::vector<double> x(n);
    for (int s = 0; s < kSamples; ++s) {
      double r2 = 0;
      for (auto& v : x) {
        v = gauss(engine);
        r2 += v * v;
      }
      const double r = std::sqrt(r2);
      for (auto& v : x) v /= r;
      for (std::size_t i = 0; i < mine.size(); ++i) {
        double p = 1;
        for (int j = 0; j < n; ++j) p *= std::pow(x[j], (*mine[i])[j]);
        sum[i] += p;
        sum_sq[i] += p * p;
      }
    }
    for (std::size_t i = 0; i < mine.size(); ++i) {
      const double mean = sum[i] / kSamples;
      const double se = std::sqrt((sum_sq[i] / kSamples - mean * mean) / kSamples);
      const double exact = to_double(monomial_sphere_integral(*mine[i]));
      EXPECT_LE(std::abs(mean - exact), 3 * se + 1e-15) << "n=" << n << " case " << i;
    }
  }
}

TEST(SphereIntegral, RotationInvariance) {
  Rng rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = static_cast<int>(rng.uniform_int(2, 5));
    HomoForm f = random_form(n, 2 * static_cast<int>(rng.uniform_int(0, 2)), rng);
    auto a = random_signed_permutation(n, rng);
    EXPECT_EQ(integral(compose_signed_permutation(f, a.perm, a.signs)), integral(f));
  }
}

TEST(SphereIntegral, RPowerHasMassOne) {
  for (int n = 2; n <= 6; ++n)
    for (int k = 0; k <= 4; ++k) EXPECT_EQ(integral(HomoForm::r_power(n, k)), 1);
}

TEST(InnerProduct, Examples) {
  HomoForm f = parse_form("x3^2", 3);
  EXPECT_EQ(inner_product(f, f), rational(1, 5));
  EXPECT_EQ(inner_product(f, HomoForm::r_power(3, 1)), rational(1, 3));
  EXPECT_EQ(code_of([] { inner_product(parse_form("x1^2", 2), parse_form("x1^4", 2)); }),
            Errc::DegreeMismatch);
  EXPECT_EQ(code_of([] { inner_product(parse_form("x1^2", 2), parse_form("x1^2", 3)); }),
            Errc::DimensionMismatch);
}

TEST(InnerProduct, CauchySchwarzAndPositivity) {
  Rng rng(32);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = static_cast<int>(rng.uniform_int(2, 4));
    const int d = static_cast<int>(rng.uniform_int(1, 3));
    HomoForm f = random_form(n, d, rng), g = random_form(n, d, rng);
    const Rational fg = inner_product(f, g);
    EXPECT_LE(fg * fg, l2_norm_squared(f) * l2_norm_squared(g));
    if (!f.is_zero()) {
      EXPECT_GT(l2_norm_squared(f), 0);
    }
    EXPECT_EQ(fg, inner_product(g, f));
  }
}

TEST(Norms, PowerNormAndBudget) {
  HomoForm f = parse_form("3*x3^2", 3);
  EXPECT_EQ(l2l_norm_power(f, 1), 9 * rational(1, 5));
  EXPECT_EQ(code_of([&] { l2l_norm_power(f, 2, 10); }), Errc::TermBudgetExceeded);
  NormOptions opt;
  opt.assume_nonnegative = true;
  opt.l = 2;
  NormReport r = norm_report(f, opt);
  EXPECT_EQ(*r.l1, 1);
  EXPECT_EQ(r.l2_squared, rational(9, 5));
  EXPECT_EQ(*r.l2l_power, 81 * monomial_sphere_integral(exps({0, 0, 8})));
  EXPECT_NEAR(r.linf, 3, 1e-12);
  EXPECT_TRUE(r.linf_certified);
}

TEST(Extrema, AxialPathIsExact) {
  SphereExtrema e = sphere_extrema(parse_form("3*x3^2 - r2", 3));
  EXPECT_EQ(e.method, ExtremaMethod::Axial);
  EXPECT_TRUE(e.certified);
  EXPECT_EQ(*e.exact_max, 2);
  EXPECT_EQ(*e.exact_min, -1);
}

TEST(Extrema, BinaryPathAgreesWithGrid) {
  Rng rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    HomoForm f = random_form(2, 4, rng);
    SphereExtrema e = sphere_extrema(f);
    // forms even in x1 take the axial path
    EXPECT_NE(e.method, ExtremaMethod::Numeric);
    double gmax = -1e300, gmin = 1e300;
    for (int i = 0; i < 100000; ++i) {
      const double th = 2 * M_PI * i / 100000;
      const double c = std::cos(th), s = std::sin(th);
      double v = 0;
      for (const auto& [ex, coef] : f.terms()) v += to_double(coef) * std::pow(c, ex[0]) * std::pow(s, ex[1]);
      gmax = std::max(gmax, v);
      gmin = std::min(gmin, v);
    }
    EXPECT_NEAR(e.max, gmax, 1e-6);
    EXPECT_NEAR(e.min, gmin, 1e-6);
    EXPECT_GE(e.max + e.enclosure + 1e-12, gmax);
  }
}

TEST(Extrema, NumericPathOnKnownForms) {
  // x1^4 + x2^4 + x3^4: max 1 on the axes, min 1/3 on the diagonals.
  SphereExtrema e = sphere_extrema(parse_form("x1^4 + x2^4 + x3^4", 3));
  EXPECT_EQ(e.method, ExtremaMethod::Numeric);
  EXPECT_NEAR(e.max, 1, 1e-9);
  EXPECT_NEAR(e.min, 1.0 / 3, 1e-9);
  // x1*x2*x3: extremes +-1/(3 sqrt 3).
  SphereExtrema p = sphere_extrema(parse_form("x1*x2*x3", 3));
  EXPECT_NEAR(p.max, 1 / (3 * std::sqrt(3.0)), 1e-9);
  EXPECT_NEAR(p.min, -1 / (3 * std::sqrt(3.0)), 1e-9);
}

TEST(Extrema, NumericPathReachesDegenerateZeros) {
  // Zero sets on the sphere where the Hessian is singular.
  for (const char* text : {"(x1^2 - x2^2)^2 + (x2^2 - x3^2)^2", "(x1*x2 - x3^2)^2 + (x1^2 - x2*x3)^2",
                           "x1^2*x2^2*x3^2"}) {
    EXPECT_NEAR(sphere_extrema(parse_form(text, 3)).min, 0, 1e-9) << text;
  }
  EXPECT_NEAR(sphere_extrema(parse_form("x1^2*x2^2*x3^2", 3)).max, 1.0 / 27, 1e-12);
}

TEST(Extrema, SumsOfSquaresAreNonnegative) {
  for (int seed = 0; seed < 20; ++seed) {
    HomoForm f = sample_sos(3, 2, 2, seed);
    EXPECT_EQ(integral(f), 1);
    EXPECT_GE(sphere_extrema(f).min, -1e-9);
  }
}

TEST(Sampling, ForcedSingleSquare) {
  HomoForm g = HomoForm::variable(3, 2);
  std::vector<HomoForm> gens{g};
  EXPECT_EQ(sos_from_generators(gens), parse_form("3*x3^2", 3));
}

TEST(Sampling, DeterministicPerSeedAndStream) {
  EXPECT_EQ(sample_sos(3, 2, 3, 99, 4), sample_sos(3, 2, 3, 99, 4));
  EXPECT_NE(sample_sos(3, 2, 3, 99, 4), sample_sos(3, 2, 3, 99, 5));
  Rng a(5, 1), b(5, 1);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.uniform_int(-7, 7), b.uniform_int(-7, 7));
}

TEST(Sampling, SpherePointsAreExactUnitVectors) {
  Rng rng(34);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = static_cast<int>(rng.uniform_int(2, 6));
    auto v = random_sphere_point(n, rng);
    Rational s = 0;
    for (const auto& c : v) s += c * c;
    EXPECT_EQ(s, 1);
  }
}
