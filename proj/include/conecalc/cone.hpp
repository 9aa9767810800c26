#pragma once

// Ellipsoids, symmetry coefficients and membership certificates for the
// sections (by the hyperplane of forms with integral 1) of
//   C   - nonnegative forms of degree 2k,
//   C*  - its dual cone,
//   Lf  - sums of 2k-th powers of linear forms.
// Every body is centered at r^{2k}; distances are measured in the L2 norm of
// the sphere.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "conecalc/harmonic.hpp"
#include "conecalc/power_operator.hpp"

namespace conecalc {

enum class Cone { Nonnegative, PowerSums };

constexpr std::string_view cone_name(Cone c) {
  return c == Cone::Nonnegative ? "C" : "Lf";
}

/// { f in M : sum_j weights[j] * ||l_j(f - center)||^2 <= bound }, where l_j is
/// the projection onto harmonic level j (j = 2, 4, ..., 2k).
struct EllipsoidSpec {
  int n = 0;
  int k = 0;
  HomoForm center;
  std::map<int, Rational> weights;
  Rational bound;
  std::string basis;

  bool is_ball() const {
    if (weights.empty()) return true;
    for (const auto& [level, w] : weights)
      if (w != weights.begin()->second) return false;
    return true;
  }

  /// bound / weight for a ball.
  Rational radius_squared() const {
    if (!is_ball()) throw Error(Errc::InvalidArgument, "ellipsoid is not a ball");
    return weights.empty() ? bound : Rational(bound / weights.begin()->second);
  }
};

/// Squared norms ||l_j(f)||^2 of each harmonic level of f.
inline std::map<int, Rational> level_norms_squared(const HomoForm& f) {
  HarmonicParts hp = harmonic_decompose(f);
  std::map<int, Rational> out;
  for (std::size_t i = 0; i < hp.parts.size(); ++i) {
    out[hp.d - 2 * static_cast<int>(i)] = l2_norm_squared(hp.parts[i]);
  }
  return out;
}

/// The quadratic functional sum_j weights[j] ||l_j(f - center)||^2.
inline Rational ellipsoid_functional(const EllipsoidSpec& e, const HomoForm& f) {
  auto norms = level_norms_squared(f - e.center);
  Rational s = 0;
  for (const auto& [level, w] : e.weights) s += w * norms[level];
  return s;
}

inline void require_normalized(const HomoForm& f) {
  Rational mass = integral(f);
  if (mass != 1) throw Error(Errc::NotNormalized, "form has integral " + mass.get_str());
}

/// Exact membership of a normalized form in the closed ellipsoid.
inline bool ellipsoid_contains(const EllipsoidSpec& e, const HomoForm& f) {
  require_normalized(f);
  return ellipsoid_functional(e, f) <= e.bound;
}

struct LoewnerWeights {
  std::vector<Rational> weights;
  Rational bound;
};

/// Minimum-volume invariant ellipsoid around the orbit of a point v whose
/// span splits into irreducible pieces of dimensions dims[i], v having squared
/// projections proj_norms_sq[i]:  sum_i dims[i]/||l_i(v)||^2 ||l_i(x)||^2 <= D.
inline LoewnerWeights orbit_loewner(std::span<const Integer> dims,
                                    std::span<const Rational> proj_norms_sq, const Integer& total) {
  if (dims.size() != proj_norms_sq.size()) {
    throw Error(Errc::InvalidArgument, "one squared projection per irreducible piece");
  }
  Integer sum = 0;
  LoewnerWeights out;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (proj_norms_sq[i] <= 0) {
      throw Error(Errc::ZeroProjection, "piece " + std::to_string(i) + " has no component of v");
    }
    sum += dims[i];
    out.weights.push_back(Rational(dims[i]) / proj_norms_sq[i]);
  }
  if (sum != total) {
    throw Error(Errc::InvalidArgument, "piece dimensions sum to " + sum.get_str() + ", not " +
                                           total.get_str());
  }
  out.bound = Rational(total);
  return out;
}

namespace detail {

inline void require_cone_degrees(int n, int k) {
  if (n < 2) throw Error(Errc::DimensionTooSmall, "n must be at least 2");
  if (k < 1) throw Error(Errc::BadDegrees, "k must be at least 1");
}

}  // namespace detail

/// Largest ellipsoid inside C: the ball of squared radius 1/(D(n,2k) - 1).
inline EllipsoidSpec john_ball_C(int n, int k) {
  detail::require_cone_degrees(n, k);
  EllipsoidSpec e{n, k, HomoForm::r_power(n, k), {}, {}, "John ellipsoid of the nonnegative cone"};
  for (int i = 1; i <= k; ++i) e.weights[2 * i] = 1;
  e.bound = Rational(1) / Rational(forms_dimension(n, 2 * k) - 1);
  return e;
}

/// Smallest ellipsoid around C*: the orbit ellipsoid of p_{e_n}. Its weights
/// come out equal, giving the ball of squared radius D(n,2k) - 1.
inline EllipsoidSpec loewner_ball_Cstar(int n, int k) {
  detail::require_cone_degrees(n, k);
  auto norms = level_norms_squared(dual_point(n, 2 * k));
  std::vector<Integer> dims;
  std::vector<Rational> proj;
  for (int i = 1; i <= k; ++i) {
    dims.push_back(harmonics_dimension(n, 2 * i));
    proj.push_back(norms[2 * i]);
  }
  LoewnerWeights lw = orbit_loewner(dims, proj, forms_dimension(n, 2 * k) - 1);
  EllipsoidSpec e{n, k, HomoForm::r_power(n, k), {}, lw.bound,
                  "Loewner ellipsoid of the dual cone (orbit of p_{e_n})"};
  for (int i = 1; i <= k; ++i) e.weights[2 * i] = lw.weights[i - 1];
  return e;
}

/// Smallest ellipsoid around Lf: the image of the C* Loewner ball under
/// T_{2k,2k}, so level 2i carries weight 1/c_i^2.
inline EllipsoidSpec lf_loewner(int n, int k) {
  detail::require_cone_degrees(n, k);
  OperatorSpec t = t_coefficients(n, k, k);
  EllipsoidSpec e{n, k, HomoForm::r_power(n, k), {}, Rational(forms_dimension(n, 2 * k) - 1),
                  "Loewner ellipsoid of the sums of powers cone"};
  for (int i = 1; i <= k; ++i) e.weights[2 * i] = Rational(1) / (t.coeffs[i] * t.coeffs[i]);
  return e;
}

/// 1 / (D(n,k) - 1), the same for both cones. For (n, k) = (2, 1) this is 1:
/// the section is centrally symmetric.
inline Rational symmetry_coefficient(Cone /*cone*/, int n, int k) {
  detail::require_cone_degrees(n, k);
  return Rational(1) / Rational(forms_dimension(n, k) - 1);
}

/// The point of the boundary of C opposite to f through r^{2k}:
///   (r^{2k} - f) / (||f||_inf - 1) + r^{2k}.
inline HomoForm reflect_through_center(const HomoForm& f, const Rational& linf) {
  if (f.degree() < 2 || f.degree() % 2 != 0) {
    throw Error(Errc::DegreeMismatch, "reflection needs an even positive degree");
  }
  require_normalized(f);
  if (linf <= 1) throw Error(Errc::DegenerateMax, "sup norm " + linf.get_str() + " <= 1");
  const HomoForm center = HomoForm::r_power(f.dim(), f.degree() / 2);
  return (center - f) / Rational(linf - 1) + center;
}

/// The form of integral 1 in C with the largest sup norm:
///   (sum_l N(n,k-2l) r^{2l} L_{n,k-2l})^2 / D(n,k) = p_{e_n}^2 / D(n,k)
/// with p_{e_n} of degree k. It equals D(n,k) at e_n.
inline HomoForm max_extreme_form(int n, int k) {
  detail::require_cone_degrees(n, k);
  HomoForm h = dual_point(n, k);
  return (h * h) / Rational(forms_dimension(n, k));
}

/// Radii (squared) from the sandwich sqrt(alpha/dim) L ⊆ K ⊆ L, with L the
/// Loewner ellipsoid of K and alpha its symmetry coefficient.
inline Rational inner_radius_squared(const Rational& alpha, const Rational& outer_sq, int dim) {
  if (alpha <= 0 || alpha > 1) throw Error(Errc::InvalidArgument, "alpha must lie in (0, 1]");
  if (dim < 1) throw Error(Errc::InvalidArgument, "dimension must be positive");
  return outer_sq * alpha / dim;
}

/// The polar form of the sandwich: with John ellipsoid J and symmetry
/// coefficient beta, K ⊆ sqrt(dim/beta) J.
inline Rational outer_radius_squared(const Rational& beta, const Rational& inner_sq, int dim) {
  if (beta <= 0 || beta > 1) throw Error(Errc::InvalidArgument, "beta must lie in (0, 1]");
  if (dim < 1) throw Error(Errc::InvalidArgument, "dimension must be positive");
  return inner_sq * dim / beta;
}

/// Ball of squared radius D(n,k) - 1 around r^{2k} that contains C.
inline Rational nonnegative_outer_radius_squared(int n, int k) {
  detail::require_cone_degrees(n, k);
  Integer dim = forms_dimension(n, 2 * k) - 1;
  return outer_radius_squared(symmetry_coefficient(Cone::Nonnegative, n, k),
                              john_ball_C(n, k).radius_squared(), static_cast<int>(dim.get_si()));
}

/// Ball around r^{2k} contained in Lf: squared radius c_k^2 / (D(n,k) - 1),
/// with c_k the last shrink factor of T_{2k,2k}.
inline Rational powerball_radius_squared(int n, int k) {
  detail::require_cone_degrees(n, k);
  EllipsoidSpec lf = lf_loewner(n, k);
  Rational biggest = 0;
  for (const auto& [level, w] : lf.weights) biggest = std::max(biggest, w);
  Integer dim = forms_dimension(n, 2 * k) - 1;
  // The Loewner ellipsoid contains the ball of squared radius bound / max weight.
  return inner_radius_squared(symmetry_coefficient(Cone::PowerSums, n, k), lf.bound / biggest,
                              static_cast<int>(dim.get_si()));
}

enum class Verdict { ProvedMember, ProvedNonMember, Inconclusive };

constexpr std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::ProvedMember: return "ProvedMember";
    case Verdict::ProvedNonMember: return "ProvedNonMember";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

/// Outcome of a ball/ellipsoid test on f / integral(f).
struct Certificate {
  Verdict verdict = Verdict::Inconclusive;
  Rational inner_value;      ///< ||f - r^{2k}||^2
  Rational inner_threshold;  ///< membership proved when inner_value <= this
  Rational outer_value;      ///< functional of the outer body
  Rational outer_threshold;  ///< non-membership proved when outer_value > this
  Rational scale;            ///< integral of the form as given
  bool on_boundary = false;  ///< outer_value == outer_threshold
  std::string basis;

  const Rational& distance() const {
    return verdict == Verdict::ProvedMember ? inner_value : outer_value;
  }
};

namespace detail {

inline HomoForm normalized_for_certificate(const HomoForm& f, Certificate& cert) {
  if (f.degree() < 2 || f.degree() % 2 != 0) {
    throw Error(Errc::DegreeMismatch, "certificates need a form of even positive degree");
  }
  cert.scale = integral(f);
  if (cert.scale == 0) throw Error(Errc::ZeroIntegral, "form has integral 0");
  return f / cert.scale;
}

inline void decide(Certificate& cert, const char* inner_basis, const char* outer_basis) {
  if (cert.inner_value <= cert.inner_threshold) {
    cert.verdict = Verdict::ProvedMember;
    cert.basis = inner_basis;
  } else if (cert.outer_value > cert.outer_threshold) {
    cert.verdict = Verdict::ProvedNonMember;
    cert.basis = outer_basis;
  } else {
    cert.verdict = Verdict::Inconclusive;
    cert.basis = "between the inner ball and the outer body";
  }
  cert.on_boundary = cert.outer_value == cert.outer_threshold;
}

}  // namespace detail

/// Inner test: the John ball of C. Outer test: C lies in the ball of squared
/// radius D(n,k) - 1, so anything farther takes negative values.
inline Certificate certify_nonnegative(const HomoForm& f) {
  Certificate cert;
  HomoForm g = detail::normalized_for_certificate(f, cert);
  const int n = f.dim(), k = f.degree() / 2;
  if (cert.scale < 0) {
    cert.verdict = Verdict::ProvedNonMember;
    cert.basis = "negative integral over the sphere";
    return cert;
  }
  cert.inner_value = l2_norm_squared(g - HomoForm::r_power(n, k));
  cert.outer_value = cert.inner_value;
  cert.inner_threshold = john_ball_C(n, k).radius_squared();
  cert.outer_threshold = nonnegative_outer_radius_squared(n, k);
  detail::decide(cert, "inside the John ball of the nonnegative cone",
                 "outside the ball containing the nonnegative cone");
  return cert;
}

/// Inner test: the ball contained in Lf. Outer test: the Loewner ellipsoid of
/// Lf. Powers of linear forms land exactly on the outer boundary.
inline Certificate certify_sum_of_powers(const HomoForm& f) {
  Certificate cert;
  HomoForm g = detail::normalized_for_certificate(f, cert);
  const int n = f.dim(), k = f.degree() / 2;
  if (cert.scale < 0) {
    cert.verdict = Verdict::ProvedNonMember;
    cert.basis = "negative integral over the sphere";
    return cert;
  }
  EllipsoidSpec outer = lf_loewner(n, k);
  cert.inner_value = l2_norm_squared(g - HomoForm::r_power(n, k));
  cert.inner_threshold = powerball_radius_squared(n, k);
  cert.outer_value = ellipsoid_functional(outer, g);
  cert.outer_threshold = outer.bound;
  detail::decide(cert, "inside the ball contained in the sums of powers cone",
                 "outside the Loewner ellipsoid of the sums of powers cone");
  return cert;
}

}  // namespace conecalc
