#pragma once

// The averaging operator T_{2m,2k}: f -> integral f(v) <x, v>^{2m} dsigma(v),
// normalized so it fixes r^{2k}. It acts on the level-2i subspace of P_{n,2k}
// as multiplication by
//   c_i = m! Gamma((2m+n)/2) / ((m-i)! Gamma((2m+2i+n)/2))
//       = prod_{j<i} 2(m-j) / (2m + n + 2j),
// a rational number because the Gamma arguments differ by integers.

#include <vector>

#include "conecalc/harmonic.hpp"

namespace conecalc {

struct OperatorSpec {
  int n = 0;
  int k = 0;
  int m = 0;
  /// coeffs[i] multiplies level 2i, i = 0..k. coeffs[0] == 1.
  std::vector<Rational> coeffs;
};

inline OperatorSpec t_coefficients(int n, int k, int m) {
  if (n < 2) throw Error(Errc::DimensionTooSmall, "n must be at least 2");
  if (k < 1 || m < k) {
    throw Error(Errc::BadDegrees, "need m >= k >= 1, got k=" + std::to_string(k) +
                                      " m=" + std::to_string(m));
  }
  OperatorSpec spec{n, k, m, {}};
  Rational c = 1;
  spec.coeffs.push_back(c);
  for (int j = 0; j < k; ++j) {
    c *= rational(2 * (m - j), 2 * m + n + 2 * j);
    spec.coeffs.push_back(c);
  }
  return spec;
}

/// Diagonal action: sum_i c_i l_{2i}(f).
inline HomoForm apply_t(const OperatorSpec& spec, const HomoForm& f) {
  if (f.dim() != spec.n) throw Error(Errc::DimensionMismatch, "form dimension differs from operator");
  if (f.degree() != 2 * spec.k) {
    throw Error(Errc::DegreeMismatch, "operator acts on degree " + std::to_string(2 * spec.k) +
                                          ", form has degree " + std::to_string(f.degree()));
  }
  HarmonicParts hp = harmonic_decompose(f);
  HomoForm out(spec.n, f.degree());
  for (int i = 0; i <= spec.k; ++i) {
    out += spec.coeffs[i] * (HomoForm::r_power(spec.n, spec.k - i) * hp.harmonic(2 * i));
  }
  return out;
}

/// The defining integral, expanded symbolically: returns the degree-2m form
///   x -> integral f(v) <x, v>^{2m} dsigma(v) / integral x_n^{2m} dsigma.
/// On the sphere it coincides with apply_t(f); as forms, it equals
/// r^{2(m-k)} apply_t(f).
inline HomoForm apply_t_by_integration(const HomoForm& f, int m) {
  const int n = f.dim();
  if (n < 2) throw Error(Errc::DimensionTooSmall, "n must be at least 2");
  if (m < 0) throw Error(Errc::BadDegrees, "m must be nonnegative");
  Exponent axis_power(n, 0);
  axis_power[n - 1] = 2 * m;
  const Rational normalizer = monomial_sphere_integral(axis_power);
  const Integer two_m_fac = factorial(static_cast<unsigned long>(2 * m));

  HomoForm out(n, 2 * m);
  Exponent sum(n);
  detail::for_each_exponent(n, 2 * m, [&](const Exponent& beta) {
    // multinomial(2m; beta) x^beta * integral f(v) v^beta
    Integer denom = 1;
    for (unsigned b : beta) denom *= factorial(b);
    Rational moment = 0;
    for (const auto& [alpha, c] : f.terms()) {
      for (int i = 0; i < n; ++i) sum[i] = alpha[i] + beta[i];
      moment += c * monomial_sphere_integral(sum);
    }
    if (moment == 0) return;
    out.add_term(beta, Rational(rational(two_m_fac, denom) * moment / normalizer));
  });
  return out;
}

/// The level-by-level expansion of x_n^{2k} / integral x_n^{2k}:
///   sum_l c_l(n, k, k) N(n, 2l) r^{2k-2l} L_{n,2l}.
inline HomoForm power_expansion(int n, int k) {
  OperatorSpec spec = t_coefficients(n, k, k);
  HomoForm out(n, 2 * k);
  for (int l = 0; l <= k; ++l) {
    out += (spec.coeffs[l] * Rational(harmonics_dimension(n, 2 * l))) *
           (HomoForm::r_power(n, k - l) * legendre_harmonic(n, 2 * l));
  }
  return out;
}

/// Lower bound for (vol K(2m) / vol C)^{1/(D(n,2k)-1)}: the smallest shrink
/// factor of T_{2m,2k}, which is c_k.
inline Rational volume_ratio_bound(int n, int k, int m) {
  return t_coefficients(n, k, m).coeffs.back();
}

struct DegreeChoice {
  Integer m;
  Rational bound;  ///< volume_ratio_bound(n, k, m)
  bool meets_target = false;  ///< bound >= 1 - epsilon, checked exactly
};

/// m = ceil((2k^2 + kn) / epsilon) guarantees a volume ratio bound >= 1 - epsilon.
inline DegreeChoice degree_for_epsilon(int n, int k, const Rational& epsilon) {
  if (epsilon <= 0 || epsilon > 1) {
    throw Error(Errc::BadEpsilon, "epsilon must lie in (0, 1], got " + epsilon.get_str());
  }
  DegreeChoice out;
  out.m = ceil(Rational(Rational(2 * k * k + k * n) / epsilon));
  if (!out.m.fits_sint_p()) throw Error(Errc::BadEpsilon, "epsilon too small");
  out.bound = volume_ratio_bound(n, k, static_cast<int>(out.m.get_si()));
  out.meets_target = out.bound >= 1 - epsilon;
  return out;
}

}  // namespace conecalc
