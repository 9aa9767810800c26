#pragma once

// Dense univariate polynomials over the rationals and certified extrema of
// N(t) / (1 + t^2)^k on a closed interval.
//
// Critical points are isolated by recursion on the derivative: between two
// consecutive sign changes of p' the polynomial p is monotone, so each such
// segment holds at most one sign change of p, which exact dyadic bisection
// then brackets to the requested width.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "conecalc/rational.hpp"

namespace conecalc {

class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  static UPoly monomial(int degree, const Rational& c = 1) {
    std::vector<Rational> v(degree + 1);
    v[degree] = c;
    return UPoly(std::move(v));
  }

  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  const std::vector<Rational>& coeffs() const noexcept { return c_; }
  Rational coeff(int i) const { return i >= 0 && i <= degree() ? c_[i] : Rational(0); }

  Rational operator()(const Rational& t) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      acc *= t;
      acc += *it;
    }
    return acc;
  }

  double eval(double t) const {
    double acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + it->get_d();
    return acc;
  }

  UPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<unsigned long>(i);
    return UPoly(std::move(d));
  }

  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<Rational> out(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(int(i)) + b.coeff(int(i));
    return UPoly(std::move(out));
  }

  friend UPoly operator-(const UPoly& a, const UPoly& b) {
    std::vector<Rational> out(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(int(i)) - b.coeff(int(i));
    return UPoly(std::move(out));
  }

  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> out(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    return UPoly(std::move(out));
  }

  friend UPoly operator*(const Rational& s, const UPoly& a) {
    std::vector<Rational> out = a.c_;
    for (auto& v : out) v *= s;
    return UPoly(std::move(out));
  }

  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  /// Exact integral over [lo, hi].
  Rational integrate(const Rational& lo, const Rational& hi) const {
    std::vector<Rational> anti(c_.size() + 1);
    for (std::size_t i = 0; i < c_.size(); ++i) anti[i + 1] = c_[i] / static_cast<unsigned long>(i + 1);
    UPoly a(std::move(anti));
    return a(hi) - a(lo);
  }

  /// Sum of |coefficients|: a bound for |p| on [-1, 1].
  Rational abs_coeff_sum() const {
    Rational s = 0;
    for (const auto& v : c_) s += abs(v);
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<Rational> c_;
};

inline UPoly pow(const UPoly& p, unsigned e) {
  UPoly out(std::vector<Rational>{Rational(1)});
  for (unsigned i = 0; i < e; ++i) out = out * p;
  return out;
}

/// A closed interval [lo, hi] with rational endpoints (possibly a point).
struct Bracket {
  Rational lo;
  Rational hi;
};

namespace detail {

inline int sign_of(const Rational& v) { return sgn(v); }

// Sign-change roots of p in [lo, hi], bracketed to width <= width.
inline std::vector<Bracket> sign_change_roots(const UPoly& p, const Rational& lo, const Rational& hi,
                                              const Rational& width) {
  std::vector<Bracket> out;
  if (p.degree() <= 0) return out;
  if (p.degree() == 1) {
    Rational r = -p.coeff(0) / p.coeff(1);
    if (r >= lo && r <= hi) out.push_back({r, r});
    return out;
  }
  std::vector<Bracket> crit = sign_change_roots(p.derivative(), lo, hi, width);

  auto bisect = [&](Rational a, Rational b) {
    int sa = sign_of(p(a));
    if (sa == 0) return Bracket{a, a};
    if (sign_of(p(b)) == 0) return Bracket{b, b};
    while (b - a > width) {
      Rational mid = (a + b) / 2;
      int sm = sign_of(p(mid));
      if (sm == 0) return Bracket{mid, mid};
      if (sm == sa) a = mid;
      else b = mid;
    }
    return Bracket{a, b};
  };

  // Monotone segments [lo, c1.lo], [c1.hi, c2.lo], ..., [ck.hi, hi]; the crit
  // brackets themselves are tested for a sign change across them.
  Rational seg_start = lo;
  auto scan_segment = [&](const Rational& a, const Rational& b) {
    if (a > b) return;
    int sa = sign_of(p(a));
    int sb = sign_of(p(b));
    if (sa == 0) {
      if (out.empty() || out.back().hi < a) out.push_back({a, a});
      return;
    }
    if (sb == 0) {
      out.push_back({b, b});
      return;
    }
    if (sa != sb) out.push_back(bisect(a, b));
  };
  for (const auto& c : crit) {
    scan_segment(seg_start, c.lo);
    if (c.hi > c.lo) {
      int sl = sign_of(p(c.lo));
      int sh = sign_of(p(c.hi));
      if (sl != 0 && sh != 0 && sl != sh) out.push_back(c);
    }
    seg_start = c.hi;
  }
  scan_segment(seg_start, hi);

  // Drop duplicates produced by shared endpoints.
  std::vector<Bracket> uniq;
  for (auto& b : out) {
    if (!uniq.empty() && uniq.back().lo == b.lo && uniq.back().hi == b.hi) continue;
    uniq.push_back(b);
  }
  return uniq;
}

}  // namespace detail

/// Brackets every sign change of p in [lo, hi] to width at most `width`.
/// Roots of even multiplicity (no sign change) are not reported.
inline std::vector<Bracket> isolate_sign_changes(const UPoly& p, const Rational& lo,
                                                 const Rational& hi, const Rational& width) {
  return detail::sign_change_roots(p, lo, hi, width);
}

/// One extremum of a rational function on an interval.
struct UExtremum {
  Rational value;   ///< exact value at `at` (achieved, hence a certified bound)
  Rational at;
  double enclosure = 0;  ///< the true extremum lies within `enclosure` of `value`
};

struct UExtrema {
  UExtremum max;
  UExtremum min;
};

/// Extrema of g(t) = N(t) / (1 + t^2)^k over [lo, hi].
///
/// Candidates are the endpoints and brackets of the sign changes of the
/// numerator of g', G = N'(1+t^2) - 2k t N. Values are exact at candidate
/// points; the enclosure bounds how far the true extremum inside a bracket can
/// sit above (below) the sampled value.
inline UExtrema rational_extrema(const UPoly& numer, int k, const Rational& lo, const Rational& hi,
                                 const Rational& width) {
  const UPoly one_plus_t2(std::vector<Rational>{1, 0, 1});
  const UPoly denom = pow(one_plus_t2, static_cast<unsigned>(k));
  auto g = [&](const Rational& t) { return Rational(numer(t) / denom(t)); };

  UPoly crit_numer = numer.derivative() * one_plus_t2 -
                     UPoly(std::vector<Rational>{0, Rational(2 * k)}) * numer;
  if (k == 0) crit_numer = numer.derivative();

  std::vector<std::pair<Rational, double>> candidates;  // point, slack
  candidates.emplace_back(lo, 0.0);
  candidates.emplace_back(hi, 0.0);

  // g' = G / (1+t^2)^{k+1} and the denominator is >= 1, so on a bracket of
  // width w: |g(t*) - g(a)| <= w * (|G(a)| + w * sup|G'|).
  const Rational g_prime_bound = crit_numer.derivative().abs_coeff_sum();
  const Rational hmax = std::max(abs(lo), abs(hi));
  const Rational scale = std::max(Rational(1), hmax);
  for (const auto& b : isolate_sign_changes(crit_numer, lo, hi, width)) {
    const Rational w = b.hi - b.lo;
    double slack = 0;
    if (w > 0) {
      Rational local = abs(crit_numer(b.lo)) + g_prime_bound * pow(scale, crit_numer.degree()) * w;
      slack = to_double(Rational(local * w)) * 1.0000001 + 1e-300;
    }
    candidates.emplace_back(b.lo, slack);
    if (w > 0) candidates.emplace_back(b.hi, slack);
  }

  UExtrema out;
  bool first = true;
  for (const auto& [t, slack] : candidates) {
    Rational v = g(t);
    if (first || v > out.max.value) out.max = {v, t, slack};
    if (first || v < out.min.value) out.min = {v, t, slack};
    first = false;
  }
  // The enclosure must cover every bracket, not only the winning sample.
  double worst = 0;
  for (const auto& c : candidates) worst = std::max(worst, c.second);
  out.max.enclosure = worst;
  out.min.enclosure = worst;
  return out;
}

}  // namespace conecalc
