#pragma once

// Text form of HomoForm.
//
// Accepted grammar (whitespace is insignificant, variables are 1-indexed):
//
//   expr    := term (('+'|'-') term)*
//   term    := unary (('*'|'/') unary)*
//   unary   := ('+'|'-') unary | power
//   power   := primary ['^' INT]
//   primary := INT | 'x' INT | 'r2' | '(' expr ')'
//
// `r2` stands for x1^2 + ... + xn^2. Division is only allowed by constants.
// This is a superset of the plain `coeff*x1^a*x2^b + ...` monomial syntax that
// format_form() produces, so parse_form(format_form(f), n) == f.

#include <cctype>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>

#include "conecalc/form.hpp"

namespace conecalc {

namespace detail {

// Intermediate polynomial used by the parser: possibly inhomogeneous while
// being built, plus a structural degree so "x1^2 + x2^3 - x2^3" is still
// rejected as mixed.
struct ParsedPoly {
  std::map<Exponent, Rational> terms;
  std::optional<int> degree;  // nullopt => mixed

  void add(const Exponent& e, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }
};

class FormParser {
 public:
  FormParser(std::string_view text, int n) : text_(text), n_(n) {}

  HomoForm parse() {
    ParsedPoly p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    if (!p.degree) throw Error(Errc::MixedDegree, "monomials of unequal total degree");
    HomoForm f(n_, *p.degree);
    for (const auto& [e, c] : p.terms) f.add_term(e, c);
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(Errc::SyntaxError, msg + " at offset " + std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char ch) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  Integer integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  ParsedPoly constant(const Rational& c) const {
    ParsedPoly p;
    p.add(Exponent(n_, 0), c);
    p.degree = 0;
    return p;
  }

  static ParsedPoly add(ParsedPoly a, const ParsedPoly& b, int sign) {
    for (const auto& [e, c] : b.terms) a.add(e, sign > 0 ? c : Rational(-c));
    if (a.degree != b.degree) a.degree.reset();
    return a;
  }

  ParsedPoly mul(const ParsedPoly& a, const ParsedPoly& b) const {
    ParsedPoly out;
    Exponent e(n_);
    for (const auto& [ea, ca] : a.terms) {
      for (const auto& [eb, cb] : b.terms) {
        for (int i = 0; i < n_; ++i) e[i] = ea[i] + eb[i];
        out.add(e, Rational(ca * cb));
      }
    }
    if (a.degree && b.degree) out.degree = *a.degree + *b.degree;
    return out;
  }

  ParsedPoly expr() {
    ParsedPoly acc = term();
    for (;;) {
      if (accept('+')) acc = add(std::move(acc), term(), 1);
      else if (accept('-')) acc = add(std::move(acc), term(), -1);
      else return acc;
    }
  }

  ParsedPoly term() {
    ParsedPoly acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = mul(acc, unary());
      } else if (accept('/')) {
        ParsedPoly den = unary();
        if (den.degree != 0 || den.terms.empty()) fail("division only by a nonzero constant");
        Rational c = den.terms.begin()->second;
        for (auto& [e, v] : acc.terms) v /= c;
      } else {
        return acc;
      }
    }
  }

  ParsedPoly unary() {
    if (accept('-')) {
      ParsedPoly p = unary();
      for (auto& [e, c] : p.terms) c = -c;
      return p;
    }
    if (accept('+')) return unary();
    return power();
  }

  ParsedPoly power() {
    ParsedPoly base = primary();
    if (!accept('^')) return base;
    Integer ez = integer();
    if (!ez.fits_uint_p() || ez > 1024) fail("exponent too large");
    unsigned e = static_cast<unsigned>(ez.get_ui());
    ParsedPoly out = constant(1);
    for (unsigned i = 0; i < e; ++i) out = mul(out, base);
    return out;
  }

  ParsedPoly primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char ch = text_[pos_];
    if (ch == '(') {
      ++pos_;
      ParsedPoly p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) return constant(Rational(integer()));
    if (ch == 'x') {
      ++pos_;
      Integer idx = integer();
      if (idx < 1 || idx > n_) {
        throw Error(Errc::WrongArity, "variable x" + idx.get_str() + " outside x1..x" +
                                          std::to_string(n_));
      }
      ParsedPoly p;
      Exponent e(n_, 0);
      e[idx.get_ui() - 1] = 1;
      p.add(e, 1);
      p.degree = 1;
      return p;
    }
    if (ch == 'r' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '2') {
      pos_ += 2;
      ParsedPoly p;
      for (int i = 0; i < n_; ++i) {
        Exponent e(n_, 0);
        e[i] = 2;
        p.add(e, 1);
      }
      p.degree = 2;
      return p;
    }
    fail("unexpected character '" + std::string(1, ch) + "'");
  }

  std::string_view text_;
  int n_;
  std::size_t pos_ = 0;
};

inline void append_monomial(std::ostringstream& os, const Exponent& e, bool& first_factor) {
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!first_factor) os << '*';
    first_factor = false;
    os << 'x' << (i + 1);
    if (e[i] > 1) os << '^' << e[i];
  }
}

// Emits " + c*<monomial>" / " - c*<monomial>" with the first term unpadded.
inline void append_term(std::ostringstream& os, bool first_term, const Rational& c,
                        const Exponent& e, int r_power) {
  const bool negative = c < 0;
  Rational mag = negative ? Rational(-c) : c;
  if (first_term) {
    if (negative) os << '-';
  } else {
    os << (negative ? " - " : " + ");
  }
  const bool has_vars = r_power > 0 || total_degree(e) > 0;
  bool first_factor = true;
  if (mag != 1 || !has_vars) {
    os << mag.get_str();
    first_factor = false;
  }
  append_monomial(os, e, first_factor);
  if (r_power > 0) {
    if (!first_factor) os << '*';
    os << "r2";
    if (r_power > 1) os << '^' << r_power;
  }
}

}  // namespace detail

/// Parses a form in n variables. Throws SyntaxError, MixedDegree or WrongArity.
inline HomoForm parse_form(std::string_view text, int n) {
  if (n < 1) throw Error(Errc::InvalidArgument, "dimension must be positive");
  return detail::FormParser(text, n).parse();
}

/// Expanded monomials, highest exponent (lexicographically) first. "0" for the
/// zero form.
inline std::string format_form(const HomoForm& f) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    detail::append_term(os, first, it->second, it->first, 0);
    first = false;
  }
  return os.str();
}

/// Unique rewriting f = sum_j r^{2j} g_j with every g_j of degree at most one
/// in x1, keyed by (j, exponent). Obtained by repeatedly substituting
/// x1^2 = r^2 - x2^2 - ... - xn^2.
inline std::map<std::pair<int, Exponent>, Rational> sphere_reduce(const HomoForm& f) {
  using Key = std::pair<int, Exponent>;
  std::map<Key, Rational> done;
  // Pending terms with x1 degree >= 2, processed from the highest x1 power down
  // so every substitution only creates strictly lower x1 powers.
  std::map<std::pair<unsigned, Key>, Rational> pending;
  auto push = [&](int rp, const Exponent& e, const Rational& c) {
    if (c == 0) return;
    if (e[0] >= 2) {
      auto& slot = pending[{e[0], {rp, e}}];
      slot += c;
    } else {
      auto& slot = done[{rp, e}];
      slot += c;
      if (slot == 0) done.erase({rp, e});
    }
  };
  for (const auto& [e, c] : f.terms()) push(0, e, c);
  while (!pending.empty()) {
    auto it = std::prev(pending.end());
    auto [rp, e] = it->first.second;
    Rational c = it->second;
    pending.erase(it);
    if (c == 0) continue;
    Exponent lower = e;
    lower[0] -= 2;
    push(rp + 1, lower, c);
    for (std::size_t i = 1; i < e.size(); ++i) {
      Exponent swapped = lower;
      swapped[i] += 2;
      push(rp, swapped, Rational(-c));
    }
  }
  return done;
}

/// Compact rendering that uses `r2`, e.g. "3/2*x3^2 - 1/2*r2". Terms are ordered
/// by ascending power of r2, then by descending exponent. Parses back to f.
inline std::string format_sphere_reduced(const HomoForm& f) {
  auto reduced = sphere_reduce(f);
  if (reduced.empty()) return "0";
  std::vector<std::tuple<int, Exponent, Rational>> items;
  for (const auto& [key, c] : reduced) items.emplace_back(key.first, key.second, c);
  std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
    return std::get<1>(a) > std::get<1>(b);
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [rp, e, c] : items) {
    detail::append_term(os, first, c, e, rp);
    first = false;
  }
  return os.str();
}

}  // namespace conecalc
