#pragma once

// Seeded generators for test forms and exact rational points of the sphere.
//
// Streams: a (seed, stream index) pair is mixed with SplitMix64 into the seed
// of a std::mt19937_64, whose output sequence is fixed by the standard. Bounded
// integers are drawn by rejection from the raw 64-bit output rather than
// through std::uniform_int_distribution, whose algorithm is
// implementation-defined. Same seed => same forms on every platform.

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "conecalc/form.hpp"
#include "conecalc/sphere.hpp"

namespace conecalc {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : engine_(splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ull))) {}

  /// Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(engine_());
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t r;
    do {
      r = engine_();
    } while (r >= limit);
    return lo + static_cast<std::int64_t>(r % span);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

/// Dense form of degree d with integer coefficients in [-bound, bound].
inline HomoForm random_form(int n, int d, Rng& rng, int bound = 3) {
  HomoForm f(n, d);
  detail::for_each_exponent(n, d, [&](const Exponent& e) {
    f.add_term(e, Rational(static_cast<long>(rng.uniform_int(-bound, bound))));
  });
  return f;
}

/// Sum of squares of the generators, scaled to integral 1.
inline HomoForm sos_from_generators(std::span<const HomoForm> generators) {
  if (generators.empty()) throw Error(Errc::InvalidArgument, "need at least one generator");
  HomoForm f(generators[0].dim(), 2 * generators[0].degree());
  for (const auto& g : generators) f += g * g;
  Rational mass = integral(f);
  if (mass == 0) throw Error(Errc::ZeroIntegral, "all generators vanish");
  return f / mass;
}

/// sum_{j=1}^{terms} g_j^2 / integral, g_j random of degree k with small
/// integer coefficients. Deterministic in (seed, stream).
inline HomoForm sample_sos(int n, int k, int terms, std::uint64_t seed, std::uint64_t stream = 0) {
  if (terms < 1) throw Error(Errc::InvalidArgument, "terms must be at least 1");
  Rng rng(seed, stream);
  std::vector<HomoForm> gens;
  while (static_cast<int>(gens.size()) < terms) {
    HomoForm g = random_form(n, k, rng);
    if (!g.is_zero()) gens.push_back(std::move(g));
  }
  return sos_from_generators(gens);
}

/// Exact rational unit vector by inverse stereographic projection of a random
/// rational point u in Q^{n-1}: ((2u, |u|^2 - 1) / (|u|^2 + 1)).
inline std::vector<Rational> random_sphere_point(int n, Rng& rng, int bound = 4) {
  std::vector<Rational> u(n - 1);
  Rational s = 0;
  for (auto& c : u) {
    c = rational(static_cast<long>(rng.uniform_int(-bound, bound)),
                 static_cast<long>(rng.uniform_int(1, bound)));
    s += c * c;
  }
  std::vector<Rational> x(n);
  for (int i = 0; i < n - 1; ++i) x[i] = 2 * u[i] / (s + 1);
  x[n - 1] = (s - 1) / (s + 1);
  return x;
}

struct SignedPermutation {
  std::vector<int> perm;
  std::vector<int> signs;
};

inline SignedPermutation random_signed_permutation(int n, Rng& rng) {
  SignedPermutation a{std::vector<int>(n), std::vector<int>(n)};
  for (int i = 0; i < n; ++i) a.perm[i] = i;
  for (int i = n - 1; i > 0; --i) std::swap(a.perm[i], a.perm[rng.uniform_int(0, i)]);
  for (int i = 0; i < n; ++i) a.signs[i] = rng.uniform_int(0, 1) ? 1 : -1;
  return a;
}

}  // namespace conecalc
