#pragma once

// Desk-scale verification of the sharp inequalities for nonnegative forms,
// plus the exact identities they rest on, over seeded random sums of squares.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "conecalc/cone.hpp"
#include "conecalc/parse.hpp"
#include "conecalc/random.hpp"

namespace conecalc {

struct SuiteConfig {
  std::vector<int> ns{2, 3};
  std::vector<int> ks{1, 2};
  int trials = 200;
  std::uint64_t seed = 1;
  double tolerance = 1e-9;
  std::size_t term_budget = kDefaultTermBudget;
  int sos_terms = 3;
  bool identities = true;
  unsigned threads = 0;  ///< 0: hardware concurrency
  ExtremaOptions extrema{};
};

/// One claim on one (n, k) cell, aggregated over its trials. lhs/rhs/slack
/// belong to the trial with the smallest slack (slack = rhs - lhs).
struct ClaimRecord {
  std::string claim;
  std::string reference;
  bool exact = false;
  int n = 0;
  int k = 0;
  int checked = 0;
  int failed = 0;
  std::string lhs;
  std::string rhs;
  std::string slack;
  std::string witness;  ///< form of the worst failing trial, empty if none
  bool pass() const { return failed == 0; }
};

struct SuiteReport {
  std::vector<ClaimRecord> claims;
  int skipped = 0;

  bool exact_failure() const {
    return std::any_of(claims.begin(), claims.end(),
                       [](const auto& c) { return c.exact && !c.pass(); });
  }
  bool any_failure() const {
    return std::any_of(claims.begin(), claims.end(), [](const auto& c) { return !c.pass(); });
  }
};

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

// Running min-slack aggregation for one claim.
class ClaimAccumulator {
 public:
  ClaimAccumulator(std::string claim, std::string reference, bool exact, int n, int k) {
    rec_.claim = std::move(claim);
    rec_.reference = std::move(reference);
    rec_.exact = exact;
    rec_.n = n;
    rec_.k = k;
  }

  void add_float(double lhs, double rhs, double tolerance, const HomoForm& f) {
    const double slack = rhs - lhs;
    const bool ok = slack >= -tolerance;
    ++rec_.checked;
    if (!ok) ++rec_.failed;
    if (!worst_float_ || slack < *worst_float_) {
      worst_float_ = slack;
      rec_.lhs = format_double(lhs);
      rec_.rhs = format_double(rhs);
      rec_.slack = format_double(slack);
      if (!ok) rec_.witness = format_form(f);
    }
  }

  /// Float equality within the tolerance.
  void add_float_equality(double lhs, double rhs, double tolerance, const HomoForm& f) {
    const double slack = rhs - lhs;
    const bool ok = std::abs(slack) <= tolerance;
    ++rec_.checked;
    if (!ok) ++rec_.failed;
    if (!worst_float_ || std::abs(slack) > *worst_float_) {
      worst_float_ = std::abs(slack);
      rec_.lhs = format_double(lhs);
      rec_.rhs = format_double(rhs);
      rec_.slack = format_double(slack);
      if (!ok) rec_.witness = format_form(f);
    }
  }

  /// Records lhs <= rhs (or lhs == rhs when `equality`).
  void add_exact(const Rational& lhs, const Rational& rhs, bool equality, const HomoForm& f) {
    Rational slack = rhs - lhs;
    const bool ok = equality ? slack == 0 : slack >= 0;
    ++rec_.checked;
    if (!ok) ++rec_.failed;
    const bool worse = !worst_exact_ || (equality ? abs(slack) > abs(*worst_exact_)
                                                  : slack < *worst_exact_);
    if (worse) {
      worst_exact_ = slack;
      rec_.lhs = lhs.get_str();
      rec_.rhs = rhs.get_str();
      rec_.slack = slack.get_str();
      if (!ok) rec_.witness = format_form(f);
    }
  }

  void add_forms_equal(const HomoForm& lhs, const HomoForm& rhs) {
    ++rec_.checked;
    const bool ok = lhs == rhs;
    if (!ok) {
      ++rec_.failed;
      rec_.lhs = format_form(lhs);
      rec_.rhs = format_form(rhs);
      rec_.slack = format_form(rhs - lhs);
      rec_.witness = rec_.lhs;
    } else if (rec_.failed == 0) {
      rec_.lhs = rec_.rhs = "equal";
      rec_.slack = "0";
    }
  }

  ClaimRecord release() { return std::move(rec_); }

 private:
  ClaimRecord rec_;
  std::optional<double> worst_float_;
  std::optional<Rational> worst_exact_;
};

struct TrialResult {
  bool skipped = false;
  HomoForm form;
  double max = 0;
  double min = 0;
  Rational l2_squared;
  double l2l_root[2] = {0, 0};  // (D(n, 2kl) * integral f^{2l})^{1/2l} for l = 1, 2
  bool l2l_ok[2] = {false, false};
};

inline TrialResult run_trial(int n, int k, int index, const SuiteConfig& cfg) {
  TrialResult r;
  const std::uint64_t stream =
      (static_cast<std::uint64_t>(n) << 48) ^ (static_cast<std::uint64_t>(k) << 32) ^
      static_cast<std::uint64_t>(index);
  r.form = sample_sos(n, k, cfg.sos_terms, cfg.seed, stream);
  SphereExtrema ex = sphere_extrema(r.form, cfg.extrema);
  r.max = ex.max;
  r.min = ex.min;
  r.l2_squared = l2_norm_squared(r.form);
  for (int l = 1; l <= 2; ++l) {
    try {
      Rational power = l2l_norm_power(r.form, l, cfg.term_budget);
      Rational rhs = Rational(forms_dimension(n, 2 * k * l)) * power;
      r.l2l_root[l - 1] = std::pow(rhs.get_d(), 1.0 / (2 * l));
      r.l2l_ok[l - 1] = true;
    } catch (const Error& e) {
      if (e.code() != Errc::TermBudgetExceeded) throw;
      r.skipped = true;
    }
  }
  return r;
}

template <typename Fn>
void parallel_for(int count, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max(count, 1)));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < count; i = next++) fn(i);
  };
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
}

inline void identity_checks(int n, int k, const SuiteConfig& cfg, SuiteReport& report) {
  Rng rng(cfg.seed, 0xC0FFEEull ^ (static_cast<std::uint64_t>(n) << 8) ^ k);

  ClaimAccumulator expansion("power-expansion", "x_n^{2k}/int x_n^{2k} = sum_l c_l N(n,2l) r^{2k-2l} L_{n,2l}",
                             true, n, k);
  Exponent axis_power(n, 0);
  axis_power[n - 1] = 2 * k;
  expansion.add_forms_equal(
      power_expansion(n, k),
      HomoForm::monomial(axis_power, Rational(1) / monomial_sphere_integral(axis_power)));
  report.claims.push_back(expansion.release());

  ClaimAccumulator reproducing("reproducing-property", "<p_v, f> = f(v)", true, n, k);
  for (int p = 0; p < 2; ++p) {
    auto v = random_sphere_point(n, rng);
    HomoForm pv = dual_point(n, 2 * k, v);
    for (int t = 0; t < 5; ++t) {
      HomoForm f = random_form(n, 2 * k, rng);
      reproducing.add_exact(inner_product(pv, f), evaluate(f, v), true, f);
    }
  }
  report.claims.push_back(reproducing.release());

  ClaimAccumulator parseval("parseval", "||f||^2 = sum_j ||l_j(f)||^2", true, n, k);
  for (int t = 0; t < 5; ++t) {
    HomoForm f = random_form(n, 2 * k, rng);
    Rational levels = 0;
    for (const auto& [level, sq] : level_norms_squared(f)) levels += sq;
    parseval.add_exact(levels, l2_norm_squared(f), true, f);
  }
  report.claims.push_back(parseval.release());

  ClaimAccumulator legendre("legendre-norm", "<L,L> = 1/N(n,d), Delta L = 0, L(e_n) = 1", true, n, k);
  std::vector<Rational> en(n, Rational(0));
  en[n - 1] = 1;
  for (int d = 0; d <= 2 * k; ++d) {
    HomoForm L = legendre_harmonic(n, d);
    legendre.add_exact(l2_norm_squared(L), Rational(1) / Rational(harmonics_dimension(n, d)), true, L);
    legendre.add_forms_equal(laplacian(L), HomoForm(n, d - 2));
    legendre.add_exact(evaluate(L, en), Rational(1), true, L);
  }
  report.claims.push_back(legendre.release());

  ClaimAccumulator boundary("powers-on-lf-boundary", "normalized <x,v>^{2k} meets the Lf Loewner ellipsoid",
                            true, n, k);
  EllipsoidSpec lf = lf_loewner(n, k);
  for (int t = 0; t < 3; ++t) {
    auto v = random_sphere_point(n, rng);
    HomoForm p = pow(HomoForm::linear(v), static_cast<unsigned>(2 * k));
    p /= integral(p);
    boundary.add_exact(ellipsoid_functional(lf, p), lf.bound, true, p);
  }
  report.claims.push_back(boundary.release());
}

}  // namespace detail

/// Runs every claim on every (n, k) cell of the config.
inline SuiteReport run_suite(const SuiteConfig& cfg) {
  SuiteReport report;
  for (int n : cfg.ns) {
    for (int k : cfg.ks) {
      if (n < 2 || k < 1) throw Error(Errc::InvalidArgument, "suite cells need n >= 2 and k >= 1");
      std::vector<detail::TrialResult> results(cfg.trials);
      detail::parallel_for(cfg.trials, cfg.threads,
                           [&](int i) { results[i] = detail::run_trial(n, k, i, cfg); });

      const Rational dnk = Rational(forms_dimension(n, k));
      const double D = dnk.get_d();
      const double alpha = 1.0 / D;
      detail::ClaimAccumulator sup("sup-vs-mean", "||f||_inf <= binom(n+k-1,k) ||f||_1", false, n, k);
      detail::ClaimAccumulator lower("mean-lower", "a M_f + (1-a) m_f <= int f, a = 1/binom(n+k-1,k)",
                                     false, n, k);
      detail::ClaimAccumulator upper("mean-upper", "int f <= (1-a) M_f + a m_f, a = 1/binom(n+k-1,k)",
                                     false, n, k);
      detail::ClaimAccumulator l2l1("l2-vs-l1", "||f||_2 <= sqrt(binom(n+k-1,k)) ||f||_1", true, n, k);
      detail::ClaimAccumulator l2l_1("sup-vs-l2", "||f||_inf <= binom(n+2k-1,2k)^{1/2} ||f||_2", false, n, k);
      detail::ClaimAccumulator l2l_2("sup-vs-l4", "||f||_inf <= binom(n+4k-1,4k)^{1/4} ||f||_4", false, n, k);

      for (const auto& r : results) {
        if (r.skipped) ++report.skipped;
        // Every trial form has integral exactly 1.
        sup.add_float(r.max, D, cfg.tolerance, r.form);
        lower.add_float(alpha * r.max + (1 - alpha) * r.min, 1.0, cfg.tolerance, r.form);
        upper.add_float(1.0, (1 - alpha) * r.max + alpha * r.min, cfg.tolerance, r.form);
        l2l1.add_exact(r.l2_squared, dnk, false, r.form);
        if (r.l2l_ok[0]) l2l_1.add_float(r.max, r.l2l_root[0], cfg.tolerance, r.form);
        if (r.l2l_ok[1]) l2l_2.add_float(r.max, r.l2l_root[1], cfg.tolerance, r.form);
      }

      // Sharpness: the extreme form attains the first two bounds, and its
      // reflection through r^{2k} attains the upper mean bound.
      HomoForm extreme = max_extreme_form(n, k);
      SphereExtrema ee = sphere_extrema(extreme, cfg.extrema);
      detail::ClaimAccumulator sup_sharp("sup-vs-mean-sharp", "equality for the extreme form", false, n, k);
      sup_sharp.add_float_equality(ee.max, D, cfg.tolerance, extreme);
      detail::ClaimAccumulator lower_sharp("mean-lower-sharp", "equality for the extreme form", false, n, k);
      lower_sharp.add_float_equality(alpha * ee.max + (1 - alpha) * ee.min, 1.0, cfg.tolerance,
                                     extreme);
      detail::ClaimAccumulator upper_sharp("mean-upper-sharp", "equality for the reflected extreme form",
                                           false, n, k);
      if (dnk > 1) {
        HomoForm reflected = reflect_through_center(extreme, dnk);
        SphereExtrema re = sphere_extrema(reflected, cfg.extrema);
        upper_sharp.add_float_equality(1.0, (1 - alpha) * re.max + alpha * re.min, cfg.tolerance,
                                       reflected);
      }

      for (auto* acc : {&sup, &lower, &upper, &l2l1, &l2l_1, &l2l_2, &sup_sharp, &lower_sharp,
                        &upper_sharp}) {
        report.claims.push_back(acc->release());
      }
      if (cfg.identities) detail::identity_checks(n, k, cfg, report);
    }
  }
  return report;
}

}  // namespace conecalc
