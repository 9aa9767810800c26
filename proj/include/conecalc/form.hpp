#pragma once

// Homogeneous forms in n variables with exact rational coefficients.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "conecalc/error.hpp"
#include "conecalc/rational.hpp"

namespace conecalc {

/// Per-variable degrees of a monomial; entry i belongs to x_{i+1}.
using Exponent = std::vector<unsigned>;

inline int total_degree(const Exponent& e) {
  return static_cast<int>(std::accumulate(e.begin(), e.end(), 0u));
}

/// A homogeneous polynomial of degree d in n variables.
///
/// Terms are kept in a map ordered lexicographically by exponent; zero
/// coefficients are never stored. The zero form keeps its (n, d) so degree
/// bookkeeping survives cancellation and differentiation. A zero form may carry
/// a negative degree (e.g. the Laplacian of a linear form).
class HomoForm {
 public:
  using Terms = std::map<Exponent, Rational>;

  HomoForm() = default;

  HomoForm(int n, int d) : n_(n), d_(d) {
    if (n < 1) throw Error(Errc::InvalidArgument, "dimension must be positive");
  }

  HomoForm(int n, int d, const Terms& terms) : HomoForm(n, d) {
    for (const auto& [e, c] : terms) add_term(e, c);
  }

  static HomoForm constant(int n, const Rational& c) {
    HomoForm f(n, 0);
    f.add_term(Exponent(n, 0), c);
    return f;
  }

  static HomoForm monomial(const Exponent& e, const Rational& c = 1) {
    HomoForm f(static_cast<int>(e.size()), total_degree(e));
    f.add_term(e, c);
    return f;
  }

  /// x_{i+1}
  static HomoForm variable(int n, int i) {
    if (i < 0 || i >= n) throw Error(Errc::WrongArity, "variable index out of range");
    Exponent e(n, 0);
    e[i] = 1;
    return monomial(e);
  }

  /// The linear form <x, v>.
  static HomoForm linear(std::span<const Rational> v) {
    const int n = static_cast<int>(v.size());
    HomoForm f(n, 1);
    for (int i = 0; i < n; ++i) {
      Exponent e(n, 0);
      e[i] = 1;
      f.add_term(e, v[i]);
    }
    return f;
  }

  /// r^{2k} = (x_1^2 + ... + x_n^2)^k, expanded by the multinomial theorem.
  static HomoForm r_power(int n, int k);

  int dim() const noexcept { return n_; }
  int degree() const noexcept { return d_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  Rational coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  HomoForm& operator+=(const HomoForm& g) {
    check_compatible(g);
    for (const auto& [e, c] : g.terms_) add_term(e, c);
    return *this;
  }

  HomoForm& operator-=(const HomoForm& g) {
    check_compatible(g);
    for (const auto& [e, c] : g.terms_) add_term(e, Rational(-c));
    return *this;
  }

  HomoForm& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  HomoForm& operator/=(const Rational& s) {
    if (s == 0) throw Error(Errc::InvalidArgument, "division of a form by zero");
    for (auto& [e, c] : terms_) c /= s;
    return *this;
  }

  friend HomoForm operator+(HomoForm f, const HomoForm& g) { return f += g; }
  friend HomoForm operator-(HomoForm f, const HomoForm& g) { return f -= g; }
  friend HomoForm operator*(HomoForm f, const Rational& s) { return f *= s; }
  friend HomoForm operator*(const Rational& s, HomoForm f) { return f *= s; }
  friend HomoForm operator/(HomoForm f, const Rational& s) { return f /= s; }
  friend HomoForm operator-(HomoForm f) { return f *= Rational(-1); }

  friend HomoForm operator*(const HomoForm& f, const HomoForm& g) {
    if (f.n_ != g.n_) throw Error(Errc::DimensionMismatch, "multiply: dimensions differ");
    HomoForm out(f.n_, f.d_ + g.d_);
    Exponent e(f.n_);
    for (const auto& [ef, cf] : f.terms_) {
      for (const auto& [eg, cg] : g.terms_) {
        for (int i = 0; i < f.n_; ++i) e[i] = ef[i] + eg[i];
        out.add_term(e, Rational(cf * cg));
      }
    }
    return out;
  }

  friend bool operator==(const HomoForm& f, const HomoForm& g) {
    return f.n_ == g.n_ && f.d_ == g.d_ && f.terms_ == g.terms_;
  }

  /// Accumulates c * x^e. Only for builders that already know e has the
  /// right length and total degree.
  void add_term(const Exponent& e, const Rational& c) {
    if (static_cast<int>(e.size()) != n_) {
      throw Error(Errc::DimensionMismatch, "exponent length differs from dimension");
    }
    if (total_degree(e) != d_) {
      throw Error(Errc::MixedDegree, "monomial degree differs from form degree");
    }
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

 private:
  void check_compatible(const HomoForm& g) const {
    if (n_ != g.n_) throw Error(Errc::DimensionMismatch, "forms live in different dimensions");
    if (d_ != g.d_) throw Error(Errc::DegreeMismatch, "forms have different degrees");
  }

  int n_ = 1;
  int d_ = 0;
  Terms terms_;
};

namespace detail {

// Visits every exponent of length n with total degree d, in lexicographic order.
template <typename Fn>
void for_each_exponent(int n, int d, Fn&& fn) {
  Exponent e(n, 0);
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == n - 1) {
      e[i] = static_cast<unsigned>(left);
      fn(static_cast<const Exponent&>(e));
      return;
    }
    for (int a = 0; a <= left; ++a) {
      e[i] = static_cast<unsigned>(a);
      self(self, i + 1, left - a);
    }
  };
  if (d < 0) return;
  rec(rec, 0, d);
}

}  // namespace detail

inline HomoForm HomoForm::r_power(int n, int k) {
  HomoForm out(n, 2 * k);
  const Integer kfac = factorial(static_cast<unsigned long>(k));
  detail::for_each_exponent(n, k, [&](const Exponent& half) {
    Integer denom = 1;
    Exponent e(n);
    for (int i = 0; i < n; ++i) {
      denom *= factorial(half[i]);
      e[i] = 2 * half[i];
    }
    out.add_term(e, rational(kfac, denom));
  });
  return out;
}

inline HomoForm pow(const HomoForm& f, unsigned e) {
  HomoForm result = HomoForm::constant(f.dim(), 1);
  HomoForm base = f;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return result;
}

inline Rational evaluate(const HomoForm& f, std::span<const Rational> point) {
  const int n = f.dim();
  if (static_cast<int>(point.size()) != n) {
    throw Error(Errc::ArityMismatch, "point has " + std::to_string(point.size()) +
                                         " entries, form has " + std::to_string(n) + " variables");
  }
  // powers[i][a] = point[i]^a
  std::vector<std::vector<Rational>> powers(n);
  const int d = std::max(f.degree(), 0);
  for (int i = 0; i < n; ++i) {
    powers[i].resize(d + 1);
    powers[i][0] = 1;
    for (int a = 1; a <= d; ++a) powers[i][a] = powers[i][a - 1] * point[i];
  }
  Rational sum = 0;
  Rational term;
  for (const auto& [e, c] : f.terms()) {
    term = c;
    for (int i = 0; i < n; ++i) {
      if (e[i] != 0) term *= powers[i][e[i]];
    }
    sum += term;
  }
  return sum;
}

inline HomoForm partial_derivative(const HomoForm& f, int i) {
  HomoForm out(f.dim(), f.degree() - 1);
  for (const auto& [e, c] : f.terms()) {
    if (e[i] == 0) continue;
    Exponent de = e;
    --de[i];
    out.add_term(de, Rational(c * e[i]));
  }
  return out;
}

/// Sum of unmixed second partials. Linear in f; drops the degree by two.
inline HomoForm laplacian(const HomoForm& f) {
  HomoForm out(f.dim(), f.degree() - 2);
  for (const auto& [e, c] : f.terms()) {
    for (int i = 0; i < f.dim(); ++i) {
      if (e[i] < 2) continue;
      Exponent de = e;
      de[i] -= 2;
      out.add_term(de, Rational(c * (e[i] * (e[i] - 1))));
    }
  }
  return out;
}

/// f(A x) for the signed permutation A with (A x)_i = signs[i] * x_{perm[i]}.
/// Signed permutations are exact rotations (or reflections), so the sphere
/// integral is preserved.
inline HomoForm compose_signed_permutation(const HomoForm& f, std::span<const int> perm,
                                           std::span<const int> signs) {
  const int n = f.dim();
  if (static_cast<int>(perm.size()) != n || static_cast<int>(signs.size()) != n) {
    throw Error(Errc::DimensionMismatch, "signed permutation has wrong size");
  }
  HomoForm out(n, f.degree());
  Exponent moved(n);
  for (const auto& [e, c] : f.terms()) {
    int odd_negatives = 0;
    for (int i = 0; i < n; ++i) {
      moved[perm[i]] = e[i];
      if (signs[i] < 0 && (e[i] & 1u)) ++odd_negatives;
    }
    out.add_term(moved, (odd_negatives & 1) ? Rational(-c) : c);
  }
  return out;
}

}  // namespace conecalc
