#pragma once

// Harmonic levels of P_{n,d}: f = sum_i r^{2i} h_{d-2i} with every h harmonic.

#include <optional>
#include <span>
#include <vector>

#include "conecalc/form.hpp"
#include "conecalc/sphere.hpp"

namespace conecalc {

/// D(n, d) = binom(n + d - 1, d): dimension of P_{n,d}.
inline Integer forms_dimension(int n, int d) {
  if (n < 1) throw Error(Errc::DimensionTooSmall, "n must be positive");
  if (d < 0) return 0;
  return binomial(static_cast<unsigned long>(n + d - 1), static_cast<unsigned long>(d));
}

/// N(n, d) = (2d + n - 2)(d + n - 3)! / (d! (n - 2)!): dimension of H_{n,d}.
inline Integer harmonics_dimension(int n, int d) {
  if (n < 2) throw Error(Errc::DimensionTooSmall, "harmonics need n >= 2");
  if (d < 0) return 0;
  if (d == 0) return 1;
  Integer num = Integer(2 * d + n - 2) * factorial(static_cast<unsigned long>(d + n - 3));
  Integer den = factorial(static_cast<unsigned long>(d)) * factorial(static_cast<unsigned long>(n - 2));
  return num / den;
}

struct LevelDims {
  Integer D;
  /// N(n, d - 2i) for i = 0 .. floor(d/2)
  std::vector<Integer> N_by_level;
};

inline LevelDims space_dims(int n, int d) {
  if (n < 2) throw Error(Errc::DimensionTooSmall, "n must be at least 2");
  if (d < 0) throw Error(Errc::InvalidArgument, "degree must be nonnegative");
  LevelDims out{forms_dimension(n, d), {}};
  for (int i = 0; 2 * i <= d; ++i) out.N_by_level.push_back(harmonics_dimension(n, d - 2 * i));
  return out;
}

/// parts[i] is the harmonic h_{d-2i}.
struct HarmonicParts {
  int n = 0;
  int d = 0;
  std::vector<HomoForm> parts;

  /// h_j, the harmonic that sits at level j (j = d - 2i).
  const HomoForm& harmonic(int level) const { return parts.at((d - level) / 2); }

  HomoForm reconstruct() const {
    HomoForm out(n, d);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      out += HomoForm::r_power(n, static_cast<int>(i)) * parts[i];
    }
    return out;
  }
};

namespace detail {

// Delta(r^{2i} h_j) = 2i (2j + 2i + n - 2) r^{2i-2} h_j for harmonic h_j, so
// Delta^p (r^{2i} h_j) = laplace_factor(p, i, j, n) r^{2(i-p)} h_j for p <= i.
inline Integer laplace_factor(int p, int i, int j, int n) {
  Integer c = 1;
  for (int t = i - p + 1; t <= i; ++t) c *= Integer(2 * t) * Integer(2 * j + 2 * t + n - 2);
  return c;
}

}  // namespace detail

/// Splits f into harmonic levels. Writing L_p = Delta^p f, the parts satisfy
///   L_p = sum_{i >= p} laplace_factor(p, i) r^{2(i-p)} h_{d-2i},
/// an upper-triangular system solved from the highest p downward.
inline HarmonicParts harmonic_decompose(const HomoForm& f) {
  const int n = f.dim();
  const int d = f.degree();
  if (n < 2) throw Error(Errc::DimensionTooSmall, "harmonic decomposition needs n >= 2");
  if (d < 0) throw Error(Errc::InvalidArgument, "negative degree");
  const int top = d / 2;

  std::vector<HomoForm> lap;  // lap[p] = Delta^p f
  lap.push_back(f);
  for (int p = 1; p <= top; ++p) lap.push_back(laplacian(lap.back()));

  HarmonicParts out{n, d, std::vector<HomoForm>(top + 1)};
  for (int p = top; p >= 0; --p) {
    const int j = d - 2 * p;
    HomoForm rhs = lap[p];
    for (int i = p + 1; i <= top; ++i) {
      Integer c = detail::laplace_factor(p, i, d - 2 * i, n);
      rhs -= Rational(c) * (HomoForm::r_power(n, i - p) * out.parts[i]);
    }
    out.parts[p] = rhs / Rational(detail::laplace_factor(p, p, j, n));
  }
  return out;
}

/// r^{d-j} h_j: the component of f in the level-j subspace.
inline HomoForm project_level(const HomoForm& f, int level) {
  const int d = f.degree();
  if (level < 0 || level > d || (d - level) % 2 != 0) {
    throw Error(Errc::BadLevel, "level " + std::to_string(level) + " for a degree " +
                                    std::to_string(d) + " form");
  }
  HarmonicParts hp = harmonic_decompose(f);
  return HomoForm::r_power(f.dim(), (d - level) / 2) * hp.harmonic(level);
}

namespace detail {

inline std::vector<Rational> default_axis(int n) {
  std::vector<Rational> v(n, Rational(0));
  v[n - 1] = 1;
  return v;
}

inline void require_unit(std::span<const Rational> v, int n) {
  if (static_cast<int>(v.size()) != n) {
    throw Error(Errc::NotUnitVector, "axis has " + std::to_string(v.size()) + " entries, need " +
                                         std::to_string(n));
  }
  Rational s = 0;
  for (const auto& c : v) s += c * c;
  if (s != 1) throw Error(Errc::NotUnitVector, "axis has squared length " + s.get_str());
}

}  // namespace detail

/// The Legendre (zonal) harmonic of degree d with the given axis: the top
/// harmonic part of <x, axis>^d, scaled to take the value 1 on the axis.
inline HomoForm legendre_harmonic(int n, int d, std::span<const Rational> axis) {
  if (n < 2) throw Error(Errc::DimensionTooSmall, "n must be at least 2");
  if (d < 0) throw Error(Errc::InvalidArgument, "degree must be nonnegative");
  detail::require_unit(axis, n);
  HomoForm power = pow(HomoForm::linear(axis), static_cast<unsigned>(d));
  HomoForm top = harmonic_decompose(power).parts.front();
  return top / evaluate(top, axis);
}

inline HomoForm legendre_harmonic(int n, int d) {
  if (n < 2) throw Error(Errc::DimensionTooSmall, "n must be at least 2");
  auto axis = detail::default_axis(n);
  return legendre_harmonic(n, d, axis);
}

/// p_v = sum_i N(n, d-2i) r^{2i} L^v_{n,d-2i}. Reproduces point evaluation:
/// <p_v, f> = f(v) for every f of degree d.
inline HomoForm dual_point(int n, int d, std::span<const Rational> v) {
  if (n < 2) throw Error(Errc::DimensionTooSmall, "n must be at least 2");
  if (d < 0) throw Error(Errc::InvalidArgument, "degree must be nonnegative");
  detail::require_unit(v, n);
  HomoForm out(n, d);
  for (int i = 0; 2 * i <= d; ++i) {
    out += Rational(harmonics_dimension(n, d - 2 * i)) *
           (HomoForm::r_power(n, i) * legendre_harmonic(n, d - 2 * i, v));
  }
  return out;
}

inline HomoForm dual_point(int n, int d) {
  if (n < 2) throw Error(Errc::DimensionTooSmall, "n must be at least 2");
  auto axis = detail::default_axis(n);
  return dual_point(n, d, axis);
}

}  // namespace conecalc
