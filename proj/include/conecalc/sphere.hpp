#pragma once

// Integration over S^{n-1} against the rotation-invariant probability measure,
// inner products, L^p norms, and extrema of forms on the sphere.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "conecalc/form.hpp"
#include "conecalc/univariate.hpp"

namespace conecalc {

/// Integral of x^alpha over the sphere:
///   prod_i (alpha_i - 1)!! / (n (n+2) ... (n + |alpha| - 2))
/// and zero as soon as one exponent is odd.
inline Rational monomial_sphere_integral(const Exponent& alpha) {
  const int n = static_cast<int>(alpha.size());
  if (n < 2) throw Error(Errc::DimensionTooSmall, "sphere integration needs n >= 2");
  Integer num = 1;
  unsigned total = 0;
  for (unsigned a : alpha) {
    if (a & 1u) return 0;
    num *= odd_double_factorial(a);
    total += a;
  }
  Integer den = 1;
  for (unsigned j = 0; 2 * j < total; ++j) den *= n + 2 * j;
  return rational(num, den);
}

inline Rational integral(const HomoForm& f) {
  if (f.dim() < 2) throw Error(Errc::DimensionTooSmall, "sphere integration needs n >= 2");
  Rational sum = 0;
  if (f.degree() % 2 != 0) return sum;
  for (const auto& [e, c] : f.terms()) sum += c * monomial_sphere_integral(e);
  return sum;
}

/// <f, g> = integral of f g. Both forms must share dimension and degree; lift
/// the lower one by a power of r^2 first if needed.
inline Rational inner_product(const HomoForm& f, const HomoForm& g) {
  if (f.dim() != g.dim()) throw Error(Errc::DimensionMismatch, "inner product: dimensions differ");
  if (f.degree() != g.degree()) {
    throw Error(Errc::DegreeMismatch, "inner product of degree " + std::to_string(f.degree()) +
                                          " and " + std::to_string(g.degree()) + " forms");
  }
  return integral(f * g);
}

inline Rational l2_norm_squared(const HomoForm& f) { return inner_product(f, f); }

/// ||f||_1 for a form the caller knows to be nonnegative: just its integral.
inline Rational l1_norm_nonnegative(const HomoForm& f) { return integral(f); }

inline constexpr std::size_t kDefaultTermBudget = 1'000'000;

/// Integral of f^{2l}, i.e. ||f||_{2l}^{2l}. The expansion is refused when the
/// space it lives in has more than `term_budget` monomials.
inline Rational l2l_norm_power(const HomoForm& f, int l,
                               std::size_t term_budget = kDefaultTermBudget) {
  if (l < 1) throw Error(Errc::InvalidArgument, "l must be positive");
  const int deg = 2 * l * std::max(f.degree(), 0);
  Integer space = binomial(static_cast<unsigned long>(f.dim() + deg - 1),
                           static_cast<unsigned long>(deg));
  if (space > Integer(static_cast<unsigned long>(term_budget))) {
    throw Error(Errc::TermBudgetExceeded,
                "f^" + std::to_string(2 * l) + " may need " + space.get_str() + " terms");
  }
  return integral(pow(f, static_cast<unsigned>(2 * l)));
}

/// If f depends only on x_n and r^2, returns Q with f = Q(x_n) on the sphere,
/// i.e. f = sum_j a_j x_n^{d-2j} r^{2j} and Q(t) = sum_j a_j t^{d-2j}.
inline std::optional<UPoly> axial_profile(const HomoForm& f) {
  const int n = f.dim();
  const int d = f.degree();
  if (d < 0) return UPoly{};
  if (n < 2) return std::nullopt;
  HomoForm rest = f;
  std::vector<Rational> q(d + 1);
  // x_1^{2j} x_n^{d-2j} only occurs in r^{2i} x_n^{d-2i} for i >= j, so peel
  // from the top power of r^2 down.
  for (int j = d / 2; j >= 0; --j) {
    Exponent probe(n, 0);
    probe[0] = 2 * j;
    probe[n - 1] += d - 2 * j;
    Rational a = rest.coefficient(probe);
    if (a == 0) continue;
    Exponent xn(n, 0);
    xn[n - 1] = d - 2 * j;
    rest -= HomoForm::r_power(n, j) * HomoForm::monomial(xn, a);
    q[d - 2 * j] = a;
  }
  if (!rest.is_zero()) return std::nullopt;
  return UPoly(std::move(q));
}

enum class ExtremaMethod { Axial, Binary, Numeric };

constexpr std::string_view method_name(ExtremaMethod m) {
  switch (m) {
    case ExtremaMethod::Axial: return "axial";
    case ExtremaMethod::Binary: return "binary";
    case ExtremaMethod::Numeric: return "numeric";
  }
  return "?";
}

struct ExtremaOptions {
  double tolerance = 1e-10;  ///< enclosure target on the exact paths
  int starts = 64;
  int iterations = 200;
  int polish_iterations = 2000;  ///< extra iterations for the best few starts
};

struct SphereExtrema {
  double max = 0;
  double min = 0;
  std::vector<double> argmax;
  std::vector<double> argmin;
  /// True extremum within `enclosure` of the reported value. Only meaningful
  /// when `certified`; the numeric path reports achieved values (so max is a
  /// lower bound and min an upper bound) without an enclosure.
  double enclosure = 0;
  bool certified = false;
  ExtremaMethod method = ExtremaMethod::Numeric;
  /// Exact achieved values on the certified paths.
  std::optional<Rational> exact_max;
  std::optional<Rational> exact_min;

  double linf() const { return std::max(std::abs(max), std::abs(min)); }
  const std::vector<double>& linf_argmax() const {
    return std::abs(max) >= std::abs(min) ? argmax : argmin;
  }
};

namespace detail {

// Double-precision copy of a form for the numeric optimizer.
class NumericForm {
 public:
  explicit NumericForm(const HomoForm& f) : n_(f.dim()), d_(std::max(f.degree(), 0)) {
    for (const auto& [e, c] : f.terms()) terms_.push_back({c.get_d(), e});
    pw_.resize(static_cast<std::size_t>(n_) * (d_ + 1));
  }

  double value(const std::vector<double>& x) const {
    fill_powers(x);
    double s = 0;
    for (const auto& t : terms_) {
      double p = t.coeff;
      for (int i = 0; i < n_; ++i) p *= pw(i, t.exps[i]);
      s += p;
    }
    return s;
  }

  double value_and_gradient(const std::vector<double>& x, std::vector<double>& grad) const {
    fill_powers(x);
    std::fill(grad.begin(), grad.end(), 0.0);
    double s = 0;
    for (const auto& t : terms_) {
      double p = t.coeff;
      for (int i = 0; i < n_; ++i) p *= pw(i, t.exps[i]);
      s += p;
      for (int i = 0; i < n_; ++i) {
        const unsigned a = t.exps[i];
        if (a == 0) continue;
        double q = t.coeff * a * pw(i, a - 1);
        for (int j = 0; j < n_; ++j)
          if (j != i) q *= pw(j, t.exps[j]);
        grad[i] += q;
      }
    }
    return s;
  }

  int dim() const { return n_; }

 private:
  struct Term {
    double coeff;
    Exponent exps;
  };

  void fill_powers(const std::vector<double>& x) const {
    for (int i = 0; i < n_; ++i) {
      pw_[i * (d_ + 1)] = 1.0;
      for (int a = 1; a <= d_; ++a) pw_[i * (d_ + 1) + a] = pw_[i * (d_ + 1) + a - 1] * x[i];
    }
  }
  double pw(int i, unsigned a) const { return pw_[i * (d_ + 1) + a]; }

  int n_;
  int d_;
  std::vector<Term> terms_;
  mutable std::vector<double> pw_;
};

inline void normalize(std::vector<double>& x) {
  double s = 0;
  for (double v : x) s += v * v;
  s = std::sqrt(s);
  for (double& v : x) v /= s;
}

// Radical inverse in base b (Halton coordinate).
inline double radical_inverse(unsigned index, unsigned base) {
  double inv = 1.0 / base, f = inv, r = 0;
  while (index > 0) {
    r += f * (index % base);
    index /= base;
    f *= inv;
  }
  return r;
}

inline std::vector<std::vector<double>> halton_sphere_starts(int n, int count) {
  static constexpr std::array<unsigned, 16> primes{2, 3, 5, 7, 11, 13, 17, 19,
                                                   23, 29, 31, 37, 41, 43, 47, 53};
  std::vector<std::vector<double>> starts;
  for (unsigned idx = 1; static_cast<int>(starts.size()) < count; ++idx) {
    std::vector<double> x(n);
    double norm2 = 0;
    for (int i = 0; i < n; ++i) {
      x[i] = 2.0 * radical_inverse(idx, primes[i % primes.size()] + (i / 16) * 2) - 1.0;
      norm2 += x[i] * x[i];
    }
    if (norm2 < 1e-6) continue;
    normalize(x);
    starts.push_back(std::move(x));
  }
  return starts;
}

// Projected gradient ascent on the sphere with step halving/doubling. A step
// must gain at least a quarter of its first-order prediction; plain ascent
// flips across a quadratic peak and crawls.
inline double ascend(const NumericForm& f, double sign, std::vector<double>& x, int iterations) {
  const int n = f.dim();
  std::vector<double> grad(n), y(n);
  double fx = sign * f.value_and_gradient(x, grad);
  double step = 1.0;
  for (int it = 0; it < iterations; ++it) {
    double radial = 0;
    for (int i = 0; i < n; ++i) radial += sign * grad[i] * x[i];
    double tnorm2 = 0;
    for (int i = 0; i < n; ++i) {
      double t = sign * grad[i] - radial * x[i];
      y[i] = t;
      tnorm2 += t * t;
    }
    if (tnorm2 < 1e-30) break;
    bool moved = false;
    while (step > 1e-18) {
      std::vector<double> cand(n);
      for (int i = 0; i < n; ++i) cand[i] = x[i] + step * y[i];
      normalize(cand);
      double fc = sign * f.value(cand);
      if (fc > fx && fc - fx >= 0.25 * step * tnorm2) {
        x = std::move(cand);
        fx = sign * f.value_and_gradient(x, grad);
        step *= 2;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  return sign * fx;
}

struct NumericOptimum {
  double value;
  std::vector<double> at;
};

inline NumericOptimum multistart(const NumericForm& f, double sign, const ExtremaOptions& opt) {
  auto starts = halton_sphere_starts(f.dim(), opt.starts);
  std::vector<NumericOptimum> found;
  found.reserve(starts.size());
  for (auto& x : starts) {
    double v = ascend(f, sign, x, opt.iterations);
    found.push_back({v, x});
  }
  // Reduction in start-index order keeps the result independent of scheduling.
  std::stable_sort(found.begin(), found.end(),
                   [&](const auto& a, const auto& b) { return sign * a.value > sign * b.value; });
  const std::size_t polish = std::min<std::size_t>(4, found.size());
  NumericOptimum best = found.front();
  for (std::size_t i = 0; i < polish; ++i) {
    std::vector<double> x = found[i].at;
    double v = ascend(f, sign, x, opt.polish_iterations);
    if (sign * v > sign * best.value) best = {v, x};
  }
  return best;
}

inline Rational width_for(double tolerance) {
  // Dyadic width well below the tolerance; brackets shrink the value error
  // quadratically around a critical point anyway.
  Rational w(1);
  while (w.get_d() > tolerance * 1e-3) w /= 2;
  return w;
}

inline SphereExtrema axial_extrema(const UPoly& q, int n, const ExtremaOptions& opt) {
  UExtrema ue = rational_extrema(q, 0, Rational(-1), Rational(1), width_for(opt.tolerance));
  auto point = [n](const Rational& t) {
    std::vector<double> x(n, 0.0);
    double td = t.get_d();
    x[n - 1] = td;
    x[0] = std::sqrt(std::max(0.0, 1.0 - td * td));
    return x;
  };
  SphereExtrema out;
  out.method = ExtremaMethod::Axial;
  out.certified = true;
  out.exact_max = ue.max.value;
  out.exact_min = ue.min.value;
  out.max = ue.max.value.get_d();
  out.min = ue.min.value.get_d();
  out.argmax = point(ue.max.at);
  out.argmin = point(ue.min.at);
  out.enclosure = std::max(ue.max.enclosure, ue.min.enclosure);
  return out;
}

// n = 2, even degree: cover the circle (up to antipodes) by the charts
// (t, 1) and (1, t) with t in [-1, 1]; f restricted to a chart is
// N(t) / (1 + t^2)^{d/2}.
inline SphereExtrema binary_extrema(const HomoForm& f, const ExtremaOptions& opt) {
  const int d = f.degree();
  std::vector<Rational> a(d + 1), b(d + 1);
  for (const auto& [e, c] : f.terms()) {
    a[e[0]] += c;  // f(t, 1)
    b[e[1]] += c;  // f(1, t)
  }
  const Rational w = width_for(opt.tolerance);
  UExtrema ca = rational_extrema(UPoly(a), d / 2, Rational(-1), Rational(1), w);
  UExtrema cb = rational_extrema(UPoly(b), d / 2, Rational(-1), Rational(1), w);
  auto pa = [](const Rational& t) {
    double td = t.get_d(), s = std::sqrt(1 + td * td);
    return std::vector<double>{td / s, 1 / s};
  };
  auto pb = [](const Rational& t) {
    double td = t.get_d(), s = std::sqrt(1 + td * td);
    return std::vector<double>{1 / s, td / s};
  };
  SphereExtrema out;
  out.method = ExtremaMethod::Binary;
  out.certified = true;
  if (ca.max.value >= cb.max.value) out.exact_max = ca.max.value, out.argmax = pa(ca.max.at);
  else out.exact_max = cb.max.value, out.argmax = pb(cb.max.at);
  if (ca.min.value <= cb.min.value) out.exact_min = ca.min.value, out.argmin = pa(ca.min.at);
  else out.exact_min = cb.min.value, out.argmin = pb(cb.min.at);
  out.max = out.exact_max->get_d();
  out.min = out.exact_min->get_d();
  out.enclosure = std::max({ca.max.enclosure, cb.max.enclosure, ca.min.enclosure, cb.min.enclosure});
  return out;
}

}  // namespace detail

/// Maximum and minimum of f on S^{n-1}.
///
/// Axially symmetric forms (polynomials in x_n and r^2) and even binary forms
/// are handled exactly through a univariate restriction; anything else falls
/// back to multistart projected gradient ascent from deterministic Halton
/// starts, which only reports achieved values.
inline SphereExtrema sphere_extrema(const HomoForm& f, const ExtremaOptions& opt = {}) {
  const int n = f.dim();
  if (n < 2) throw Error(Errc::DimensionTooSmall, "sphere extrema need n >= 2");
  if (auto q = axial_profile(f)) return detail::axial_extrema(*q, n, opt);
  if (n == 2 && f.degree() % 2 == 0) return detail::binary_extrema(f, opt);

  detail::NumericForm nf(f);
  detail::NumericOptimum hi = detail::multistart(nf, 1.0, opt);
  detail::NumericOptimum lo = detail::multistart(nf, -1.0, opt);
  SphereExtrema out;
  out.method = ExtremaMethod::Numeric;
  out.max = hi.value;
  out.min = lo.value;
  out.argmax = std::move(hi.at);
  out.argmin = std::move(lo.at);
  return out;
}

/// The norms of one form, as far as they can be computed.
struct NormReport {
  std::optional<Rational> l1;  ///< only when the caller vouches f >= 0
  Rational l2_squared;
  int l = 0;
  std::optional<Rational> l2l_power;  ///< integral of f^{2l}
  double linf = 0;
  double linf_enclosure = 0;
  bool linf_certified = false;
  ExtremaMethod linf_method = ExtremaMethod::Numeric;
  std::vector<double> linf_argmax;
};

struct NormOptions {
  bool assume_nonnegative = false;
  int l = 0;  ///< 0 skips the L^{2l} expansion
  std::size_t term_budget = kDefaultTermBudget;
  ExtremaOptions extrema{};
};

inline NormReport norm_report(const HomoForm& f, const NormOptions& opt = {}) {
  NormReport r;
  if (opt.assume_nonnegative) r.l1 = l1_norm_nonnegative(f);
  r.l2_squared = l2_norm_squared(f);
  if (opt.l > 0) {
    r.l = opt.l;
    r.l2l_power = l2l_norm_power(f, opt.l, opt.term_budget);
  }
  SphereExtrema ex = sphere_extrema(f, opt.extrema);
  r.linf = ex.linf();
  r.linf_enclosure = ex.enclosure;
  r.linf_certified = ex.certified;
  r.linf_method = ex.method;
  r.linf_argmax = ex.linf_argmax();
  return r;
}

}  // namespace conecalc
