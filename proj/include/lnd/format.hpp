#pragma once

// Text form of polynomials.
//
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := ('+' | '-') factor | power
//   power  := atom ('^' unsigned)?
//   atom   := integer | identifier | '(' expr ')'
//
// Juxtaposition is not multiplication. A divisor must be a nonzero constant
// of the coefficient field, which for Q(x) rings includes any nonzero
// polynomial in x.

#include <cctype>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "lnd/errors.hpp"
#include "lnd/polynomial.hpp"
#include "lnd/rational_function.hpp"

namespace lnd {

namespace detail {

inline std::string monomial_string(const Monomial& m, const RingDescriptor& ring) {
  std::string s;
  for (std::size_t i = 0; i < ring.arity(); ++i) {
    if (!m[i]) continue;
    if (!s.empty()) s += '*';
    s += ring.vars[i];
    if (m[i] > 1) s += '^' + std::to_string(m[i]);
  }
  return s;
}

inline std::string upoly_string(const UPoly& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::string s;
  for (std::size_t i = p.coeffs().size(); i-- > 0;) {
    const Rational& c = p.coeffs()[i];
    if (is_zero(c)) continue;
    bool neg = sgn(c) < 0;
    Rational a = neg ? Rational(-c) : c;
    if (s.empty()) s += neg ? "-" : "";
    else s += neg ? " - " : " + ";
    std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
    if (mono.empty()) s += a.get_str();
    else if (a == 1) s += mono;
    else s += a.get_str() + "*" + mono;
  }
  return s;
}

// Sign split used when joining terms: returns (is_negative, magnitude text)
// where an empty magnitude means the coefficient is a unit.
inline std::pair<bool, std::string> coeff_parts(const Rational& c, const RingDescriptor&) {
  bool neg = sgn(c) < 0;
  Rational a = neg ? Rational(-c) : c;
  return {neg, a == 1 ? std::string() : a.get_str()};
}

inline std::pair<bool, std::string> coeff_parts(const RationalFunction& c, const RingDescriptor& ring) {
  const std::string var = ring.coeff_var.value_or("x");
  if (c.is_polynomial()) {
    const UPoly& n = c.num();
    if (n.degree() == 0) return coeff_parts(n.lc(), ring);
    // single-term numerators print bare, otherwise parenthesized
    std::size_t nonzero = 0;
    for (const auto& q : n.coeffs()) nonzero += !is_zero(q);
    if (nonzero == 1) {
      bool neg = sgn(n.lc()) < 0;
      return {neg, upoly_string(neg ? -n : n, var)};
    }
    return {false, "(" + upoly_string(n, var) + ")"};
  }
  return {false, "(" + upoly_string(c.num(), var) + ")/(" + upoly_string(c.den(), var) + ")"};
}

template <class C>
std::optional<C> coeff_variable(const std::string&, const RingDescriptor&, const C*) {
  return std::nullopt;
}
inline std::optional<RationalFunction> coeff_variable(const std::string& name, const RingDescriptor& ring,
                                                      const RationalFunction*) {
  if (ring.coeff_var && *ring.coeff_var == name) return RationalFunction::x();
  return std::nullopt;
}

template <class C>
class Parser {
 public:
  using Poly = BasicPolynomial<C>;

  Parser(std::string_view text, Ring ring) : text_(text), ring_(std::move(ring)) {}

  Poly parse() {
    skip();
    if (pos_ == text_.size()) throw ParseError("empty expression", pos_);
    Poly p = expr();
    skip();
    if (pos_ != text_.size()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return p;
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  Poly expr() {
    Poly acc = term();
    for (;;) {
      if (peek('+')) {
        ++pos_;
        acc = acc + term();
      } else if (peek('-')) {
        ++pos_;
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  Poly term() {
    Poly acc = factor();
    for (;;) {
      if (peek('*')) {
        ++pos_;
        acc = acc * factor();
      } else if (peek('/')) {
        std::size_t at = ++pos_;
        Poly d = factor();
        if (d.is_zero()) throw ParseError("division by zero", at);
        if (!d.is_constant()) throw ParseError("divisor must be a constant of the coefficient field", at);
        C inv = C(1) / d.constant_value();
        acc = acc * inv;
      } else {
        skip();
        if (pos_ < text_.size() && text_[pos_] != '+' && text_[pos_] != '-' && text_[pos_] != ')')
          throw ParseError("expected an operator (juxtaposition is not multiplication)", pos_);
        return acc;
      }
    }
  }

  Poly factor() {
    if (peek('-')) {
      ++pos_;
      return -factor();
    }
    if (peek('+')) {
      ++pos_;
      return factor();
    }
    Poly base = atom();
    if (peek('^')) {
      ++pos_;
      skip();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) throw ParseError("expected a nonnegative integer exponent", start);
      unsigned long e = std::stoul(std::string(text_.substr(start, pos_ - start)));
      if (e > 4096) throw ParseError("exponent too large", start);
      return base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  Poly atom() {
    skip();
    if (pos_ == text_.size()) throw ParseError("unexpected end of input", pos_);
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      if (!peek(')')) throw ParseError("expected ')'", pos_);
      ++pos_;
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        throw ParseError("expected an operator (juxtaposition is not multiplication)", pos_);
      Rational q(std::string(text_.substr(start, pos_ - start)), 10);
      return Poly::constant(ring_, C(q));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      if (auto i = ring_->index_of(name)) return Poly::variable(ring_, *i);
      if (auto cv = coeff_variable(name, *ring_, static_cast<const C*>(nullptr))) return Poly::constant(ring_, *cv);
      throw UnknownVariable(name);
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  std::string_view text_;
  Ring ring_;
  std::size_t pos_ = 0;
};

}  // namespace detail

template <class C = Rational>
BasicPolynomial<C> parse_polynomial(std::string_view text, const Ring& ring) {
  return detail::Parser<C>(text, ring).parse();
}

inline Polynomial parse_poly(std::string_view text, const Ring& ring) { return parse_polynomial<Rational>(text, ring); }

// Terms in descending graded-lex order, e.g. "x*z - y^2".
template <class C>
std::string to_string(const BasicPolynomial<C>& p) {
  if (p.is_zero()) return "0";
  const RingDescriptor& ring = *p.ring();
  std::string s;
  for (const auto& [m, c] : p.terms()) {
    auto [neg, mag] = detail::coeff_parts(c, ring);
    std::string mono = detail::monomial_string(m, ring);
    std::string body;
    if (mono.empty()) body = mag.empty() ? "1" : mag;
    else if (mag.empty()) body = mono;
    else body = mag + "*" + mono;
    if (s.empty()) s = neg ? "-" + body : body;
    else s += (neg ? " - " : " + ") + body;
  }
  return s;
}

inline std::string to_string(const UPoly& p, const std::string& var = "x") { return detail::upoly_string(p, var); }

}  // namespace lnd
