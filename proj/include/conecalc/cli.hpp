#pragma once

// conecalc command line. Exit status: 0 success, 1 a checked identity failed,
// 2 usage or input error.

#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "conecalc/suite.hpp"

namespace conecalc {

namespace detail {

using Json = nlohmann::ordered_json;

struct CliArgs {
  int n = 3;
  int k = 1;
  int m = 0;
  int d = -1;
  std::uint64_t seed = 1;
  double tol = 1e-9;
  bool json = false;
  std::vector<std::string> forms;
  std::vector<std::string> files;
  std::string axis;
  std::string point;
  std::string cone = "C";
  std::string eps;
  // suite
  std::vector<int> ns{2, 3};
  std::vector<int> ks{1, 2};
  int trials = 200;
  int terms = 3;
  unsigned threads = 0;
  bool no_identities = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::vector<HomoForm> load_forms(const CliArgs& a) {
  std::vector<HomoForm> out;
  for (const auto& text : a.forms) out.push_back(parse_form(text, a.n));
  for (const auto& path : a.files) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    out.push_back(parse_form(text, a.n));
  }
  return out;
}

inline HomoForm one_form(const CliArgs& a) {
  auto forms = load_forms(a);
  if (forms.size() != 1) throw UsageError("expected exactly one form (--form or --file)");
  return forms.front();
}

inline std::vector<Rational> parse_vector(const std::string& text) {
  std::vector<Rational> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    v.push_back(parse_rational(item));
  }
  return v;
}

inline std::vector<Rational> axis_or_default(const std::string& text, int n) {
  return text.empty() ? default_axis(n) : parse_vector(text);
}

inline std::string levels_text(const std::map<int, std::string>& levels) {
  std::string s = "{";
  bool first = true;
  for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
    if (!first) s += ", ";
    first = false;
    s += std::to_string(it->first) + ": \"" + it->second + "\"";
  }
  return s + "}";
}

inline std::string weights_text(const std::map<int, Rational>& weights) {
  std::string s = "{";
  bool first = true;
  for (const auto& [level, w] : weights) {
    if (!first) s += ", ";
    first = false;
    s += std::to_string(level) + ": " + w.get_str();
  }
  return s + "}";
}

// Key/value output shared by text and JSON modes; keys keep insertion order.
class Output {
 public:
  void put(const std::string& key, const std::string& value) { fields_.emplace_back(key, value); }
  void put(const std::string& key, const char* value) { put(key, std::string(value)); }
  void put(const std::string& key, const Rational& value) { put(key, value.get_str()); }
  void put(const std::string& key, bool value) { put_raw(key, value ? "true" : "false", Json(value)); }
  void put_raw(const std::string& key, std::string text, Json json) {
    fields_.emplace_back(key, std::move(text));
    json_[key] = std::move(json);
  }

  void emit(std::ostream& out, bool as_json) const {
    if (as_json) {
      Json j;
      for (const auto& [key, value] : fields_) j[key] = json_.contains(key) ? json_[key] : Json(value);
      out << j.dump(2) << "\n";
      return;
    }
    for (const auto& [key, value] : fields_) out << key << " = " << value << "\n";
  }

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
  Json json_ = Json::object();
};

inline int cmd_integrate(const CliArgs& a, Output& o) {
  HomoForm f = one_form(a);
  o.put("integral", integral(f));
  o.put("l2_norm^2", l2_norm_squared(f));
  ExtremaOptions opt;
  SphereExtrema ex = sphere_extrema(f, opt);
  o.put("sup_norm", format_double(ex.linf()));
  o.put("sup_method", std::string(method_name(ex.method)));
  o.put("sup_certified", ex.certified);
  return 0;
}

inline int cmd_inner(const CliArgs& a, Output& o) {
  auto forms = load_forms(a);
  if (forms.size() != 2) throw UsageError("inner needs two forms");
  o.put("inner", inner_product(forms[0], forms[1]));
  return 0;
}

inline int cmd_decompose(const CliArgs& a, Output& o) {
  HomoForm f = one_form(a);
  HarmonicParts hp = harmonic_decompose(f);
  std::map<int, std::string> levels;
  Json jl = Json::object();
  for (int j = f.degree(); j >= 0; j -= 2) {
    levels[j] = format_sphere_reduced(hp.harmonic(j));
    jl[std::to_string(j)] = levels[j];
  }
  o.put_raw("levels", levels_text(levels), jl);
  const bool ok = hp.reconstruct() == f;
  o.put("reconstructs", ok);
  return ok ? 0 : 1;
}

inline int cmd_legendre(const CliArgs& a, Output& o) {
  if (a.d < 0) throw UsageError("legendre needs --d");
  auto axis = axis_or_default(a.axis, a.n);
  HomoForm L = legendre_harmonic(a.n, a.d, axis);
  o.put("L", format_form(L));
  const Rational norm = l2_norm_squared(L);
  o.put("norm^2", norm);
  o.put("N", Rational(harmonics_dimension(a.n, a.d)));
  const bool ok = norm * Rational(harmonics_dimension(a.n, a.d)) == 1 && laplacian(L).is_zero() &&
                  evaluate(L, axis) == 1;
  o.put("postconditions", ok);
  return ok ? 0 : 1;
}

inline int cmd_dualpoint(const CliArgs& a, Output& o) {
  const int d = a.d >= 0 ? a.d : 2 * a.k;
  auto v = axis_or_default(a.point, a.n);
  o.put("p_v", format_form(dual_point(a.n, d, v)));
  return 0;
}

inline int cmd_apply_t(const CliArgs& a, Output& o) {
  OperatorSpec spec = t_coefficients(a.n, a.k, a.m);
  std::string cs;
  Json jc = Json::array();
  for (std::size_t i = 0; i < spec.coeffs.size(); ++i) {
    cs += (i ? ", " : "") + spec.coeffs[i].get_str();
    jc.push_back(spec.coeffs[i].get_str());
  }
  o.put_raw("coefficients", "[" + cs + "]", jc);
  if (!a.forms.empty() || !a.files.empty()) {
    HomoForm f = one_form(a);
    HomoForm tf = apply_t(spec, f);
    o.put("T(f)", format_form(tf));
    // Cross-check against the defining integral.
    const bool ok = apply_t_by_integration(f, a.m) ==
                    HomoForm::r_power(a.n, a.m - a.k) * tf;
    o.put("matches_integral", ok);
    if (!ok) return 1;
  }
  return 0;
}

inline void put_ellipsoid(const EllipsoidSpec& e, Output& o) {
  if (e.is_ball()) o.put("radius^2", e.radius_squared());
  Json jw = Json::object();
  for (const auto& [level, w] : e.weights) jw[std::to_string(level)] = w.get_str();
  o.put_raw("weights", weights_text(e.weights), jw);
  o.put("bound", e.bound);
  o.put("center", format_sphere_reduced(e.center));
  o.put("basis", e.basis);
}

inline int cmd_maxform(const CliArgs& a, Output& o) {
  HomoForm f = max_extreme_form(a.n, a.k);
  auto en = default_axis(a.n);
  o.put("f", format_form(f));
  const Rational mass = integral(f), top = evaluate(f, en);
  const Rational D = Rational(forms_dimension(a.n, a.k));
  o.put("integral", mass);
  o.put("f(e_n)", top);
  o.put("D(n,k)", D);
  ExtremaOptions opt;
  SphereExtrema ex = sphere_extrema(f, opt);
  o.put("sup_norm", format_double(ex.linf()));
  o.put("sup_method", std::string(method_name(ex.method)));
  return mass == 1 && top == D ? 0 : 1;
}

inline int cmd_certify(const CliArgs& a, Output& o, bool powers) {
  HomoForm f = one_form(a);
  Certificate c = powers ? certify_sum_of_powers(f) : certify_nonnegative(f);
  o.put("verdict", std::string(verdict_name(c.verdict)));
  o.put("scale", c.scale);
  if (c.scale > 0) {
    o.put("distance", c.distance());
    o.put("inner_value", c.inner_value);
    o.put("inner_threshold", c.inner_threshold);
    o.put("outer_value", c.outer_value);
    o.put("outer_threshold", c.outer_threshold);
    o.put("on_boundary", c.on_boundary);
  }
  o.put("basis", c.basis);
  return 0;
}

inline int cmd_volume_bound(const CliArgs& a, Output& o) {
  if (!a.eps.empty()) {
    DegreeChoice c = degree_for_epsilon(a.n, a.k, parse_rational(a.eps));
    o.put("m", c.m.get_str());
    o.put("bound", c.bound);
    o.put("meets_target", c.meets_target);
    return c.meets_target ? 0 : 1;
  }
  if (a.m < a.k) throw UsageError("volume-bound needs --m >= --k or --eps");
  o.put("bound", volume_ratio_bound(a.n, a.k, a.m));
  return 0;
}

inline int cmd_suite(const CliArgs& a, bool n_given, bool k_given, std::ostream& out) {
  SuiteConfig cfg;
  cfg.ns = n_given ? std::vector<int>{a.n} : a.ns;
  cfg.ks = k_given ? std::vector<int>{a.k} : a.ks;
  cfg.trials = a.trials;
  cfg.seed = a.seed;
  cfg.tolerance = a.tol;
  cfg.sos_terms = a.terms;
  cfg.threads = a.threads;
  cfg.identities = !a.no_identities;
  SuiteReport rep = run_suite(cfg);

  int checked = 0, failed = 0;
  for (const auto& c : rep.claims) {
    checked += c.checked;
    failed += c.failed;
  }
  if (a.json) {
    Json claims = Json::array();
    for (const auto& c : rep.claims) {
      claims.push_back({{"claim", c.claim + "[n=" + std::to_string(c.n) + ",k=" + std::to_string(c.k) + "]"},
                        {"paper_ref", c.reference},
                        {"exact", c.exact},
                        {"lhs", c.lhs},
                        {"rhs", c.rhs},
                        {"slack", c.slack},
                        {"pass", c.pass()}});
    }
    Json j = {{"claims", claims},
              {"summary", {{"seed", a.seed}, {"checked", checked}, {"failed", failed},
                           {"skipped", rep.skipped}}}};
    out << j.dump(2) << "\n";
  } else {
    for (const auto& c : rep.claims) {
      out << (c.pass() ? "PASS " : "FAIL ") << "n=" << c.n << " k=" << c.k << " " << c.claim
          << (c.exact ? " [exact]" : " [float]") << " checked=" << c.checked << " failed=" << c.failed
          << " lhs=" << c.lhs << " rhs=" << c.rhs << " slack=" << c.slack << "\n";
      if (!c.witness.empty()) out << "  witness: " << c.witness << "\n";
    }
    out << "checked=" << checked << " failed=" << failed << " skipped=" << rep.skipped << "\n";
  }
  return rep.any_failure() ? 1 : 0;
}

}  // namespace detail

inline int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  using namespace detail;
  CliArgs a;
  CLI::App app{"Exact invariants of the nonnegative and sums-of-powers cones", "conecalc"};
  app.require_subcommand(1);
  app.fallthrough();
  auto* n_opt = app.add_option("--n", a.n, "number of variables")->check(CLI::Range(1, 64));
  auto* k_opt = app.add_option("--k", a.k, "half the degree")->check(CLI::NonNegativeNumber);
  app.add_option("--m", a.m, "half the degree of the averaging kernel")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", a.seed, "PRNG seed");
  app.add_option("--tol", a.tol, "float tolerance")->check(CLI::PositiveNumber);
  app.add_flag("--json", a.json, "JSON output");
  app.add_option("--form", a.forms, "form text, e.g. \"x1^2 + 2*x2^2\"");
  app.add_option("--file", a.files, "file holding one form")->check(CLI::ExistingFile);

  std::string command;
  auto sub = [&](const char* name, const char* help) {
    auto* s = app.add_subcommand(name, help);
    s->fallthrough();
    s->callback([&command, name] { command = name; });
    return s;
  };
  sub("integrate", "integral and norms over the sphere");
  sub("inner", "inner product of two forms");
  sub("decompose", "harmonic levels");
  auto* leg = sub("legendre", "Legendre harmonic");
  leg->add_option("--d", a.d, "degree")->required();
  leg->add_option("--axis", a.axis, "unit axis as comma separated rationals");
  auto* dp = sub("dualpoint", "form reproducing evaluation at a point");
  dp->add_option("--d", a.d, "degree (default 2k)");
  dp->add_option("--point", a.point, "unit vector as comma separated rationals");
  sub("apply-t", "shrink factors of T and its action on a form");
  sub("john", "John ball of the nonnegative cone");
  sub("loewner", "Loewner ball of the dual cone");
  sub("lf-ellipsoid", "Loewner ellipsoid of the sums of powers cone");
  auto* sym = sub("symmetry", "coefficient of symmetry");
  sym->add_option("--cone", a.cone, "C or Lf")->check(CLI::IsMember({"C", "Lf"}));
  sub("maxform", "extreme form of largest sup norm");
  auto* cert = app.add_subcommand("certify", "membership certificates");
  cert->fallthrough();
  cert->require_subcommand(1);
  auto* nonneg = cert->add_subcommand("nonneg", "nonnegative cone");
  nonneg->fallthrough();
  nonneg->callback([&command] { command = "certify-nonneg"; });
  auto* powers = cert->add_subcommand("powers", "sums of powers cone");
  powers->fallthrough();
  powers->callback([&command] { command = "certify-powers"; });
  auto* vb = sub("volume-bound", "lower bound on the volume ratio");
  vb->add_option("--eps", a.eps, "target epsilon in (0, 1]");
  auto* suite = sub("suite", "seeded verification of the inequalities");
  suite->add_option("--ns", a.ns, "dimensions (overridden by --n)");
  suite->add_option("--ks", a.ks, "half degrees (overridden by --k)");
  suite->add_option("--trials", a.trials, "trials per cell")->check(CLI::PositiveNumber);
  suite->add_option("--terms", a.terms, "squares per trial form")->check(CLI::PositiveNumber);
  suite->add_option("--threads", a.threads, "worker threads, 0 for all cores");
  suite->add_flag("--no-identities", a.no_identities, "skip the exact identity checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  Output o;
  try {
    int status = 0;
    if (command == "integrate") status = cmd_integrate(a, o);
    else if (command == "inner") status = cmd_inner(a, o);
    else if (command == "decompose") status = cmd_decompose(a, o);
    else if (command == "legendre") status = cmd_legendre(a, o);
    else if (command == "dualpoint") status = cmd_dualpoint(a, o);
    else if (command == "apply-t") status = cmd_apply_t(a, o);
    else if (command == "john") put_ellipsoid(john_ball_C(a.n, a.k), o);
    else if (command == "loewner") put_ellipsoid(loewner_ball_Cstar(a.n, a.k), o);
    else if (command == "lf-ellipsoid") put_ellipsoid(lf_loewner(a.n, a.k), o);
    else if (command == "symmetry") {
      Cone cone = a.cone == "Lf" ? Cone::PowerSums : Cone::Nonnegative;
      Rational alpha = symmetry_coefficient(cone, a.n, a.k);
      o.put("cone", std::string(cone_name(cone)));
      o.put("symmetry", alpha);
      o.put("centrally_symmetric", alpha == 1);
      o.put("basis", std::string("1/(D(n,k) - 1), attained by the extreme form and its reflection"));
    } else if (command == "maxform") status = cmd_maxform(a, o);
    else if (command == "certify-nonneg") status = cmd_certify(a, o, false);
    else if (command == "certify-powers") status = cmd_certify(a, o, true);
    else if (command == "volume-bound") status = cmd_volume_bound(a, o);
    else if (command == "suite") return cmd_suite(a, n_opt->count() > 0, k_opt->count() > 0, out);
    else {
      err << "error: unknown command\n";
      return 2;
    }
    o.emit(out, a.json);
    return status;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace conecalc
