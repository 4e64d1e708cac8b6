#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "lnd/errors.hpp"
#include "lnd/polynomial.hpp"
#include "lnd/rational.hpp"

namespace lnd {

// Dense univariate polynomial over Q; c[i] is the coefficient of t^i and the
// top coefficient is nonzero.
class UPoly {
 public:
  UPoly() = default;
  UPoly(int c) : UPoly(Rational(c)) {}
  UPoly(const Rational& c) {
    if (!lnd::is_zero(c)) c_.push_back(c);
  }
  explicit UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  static UPoly monomial(std::size_t deg, const Rational& c = 1) {
    std::vector<Rational> v(deg + 1);
    v[deg] = c;
    return UPoly(std::move(v));
  }

  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational operator[](std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  Rational lc() const { return c_.empty() ? Rational(0) : c_.back(); }

  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] + b[i];
    return UPoly(std::move(v));
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) {
    std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] - b[i];
    return UPoly(std::move(v));
  }
  UPoly operator-() const {
    UPoly p(*this);
    for (auto& x : p.c_) x = -x;
    return p;
  }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> v(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    return UPoly(std::move(v));
  }
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }

  // Euclidean division; b != 0.
  static std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw InvalidArgument("division by zero polynomial");
    std::vector<Rational> r = a.c_;
    if (a.degree() < b.degree()) return {UPoly{}, a};
    std::vector<Rational> q(a.c_.size() - b.c_.size() + 1);
    Rational inv = 1 / b.lc();
    for (std::size_t k = q.size(); k-- > 0;) {
      Rational coef = r[k + b.c_.size() - 1] * inv;
      q[k] = coef;
      if (lnd::is_zero(coef)) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[k + j] -= coef * b.c_[j];
    }
    return {UPoly(std::move(q)), UPoly(std::move(r))};
  }

  UPoly monic() const {
    if (is_zero()) return {};
    UPoly p(*this);
    Rational inv = 1 / lc();
    for (auto& x : p.c_) x *= inv;
    return p;
  }

  // Lowest exponent with a nonzero coefficient; 0 for the zero polynomial.
  std::size_t valuation() const {
    std::size_t k = 0;
    while (k < c_.size() && lnd::is_zero(c_[k])) ++k;
    return k < c_.size() ? k : 0;
  }

  // Divides by t^k; requires k <= valuation().
  UPoly shift_down(std::size_t k) const {
    if (k == 0) return *this;
    return UPoly(std::vector<Rational>(c_.begin() + static_cast<std::ptrdiff_t>(k), c_.end()));
  }

  // Monic gcd; gcd(0,0) = 0. Powers of t are split off first since
  // denominators are very often monomials.
  static UPoly gcd(UPoly a, UPoly b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    std::size_t k = std::min(a.valuation(), b.valuation());
    a = a.shift_down(a.valuation());
    b = b.shift_down(b.valuation());
    UPoly g = a.is_constant() || b.is_constant() ? UPoly(1) : euclid(std::move(a), std::move(b));
    return k ? g * monomial(k) : g;
  }

  static UPoly exact_div(const UPoly& a, const UPoly& b) {
    if (b.degree() == 0) return a * UPoly(1 / b.lc());
    return divmod(a, b).first;
  }

 private:
  static UPoly euclid(UPoly a, UPoly b) {
    while (!b.is_zero()) {
      UPoly r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

 public:

  UPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> v(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * static_cast<unsigned long>(i);
    return UPoly(std::move(v));
  }

  UPoly pow(unsigned e) const {
    UPoly r(1), b(*this);
    while (e) {
      if (e & 1u) r = r * b;
      e >>= 1u;
      if (e) b = b * b;
    }
    return r;
  }

  // Embeds into `ring` as a polynomial in variable slot `var`.
  Polynomial to_polynomial(const Ring& ring, std::size_t var) const {
    std::vector<Polynomial::Term> terms;
    for (std::size_t i = c_.size(); i-- > 0;)
      if (!lnd::is_zero(c_[i])) terms.emplace_back(Monomial::variable(var, static_cast<unsigned>(i)), c_[i]);
    return Polynomial::from_sorted_terms(ring, std::move(terms));
  }

  // Requires p to involve only variable `var`.
  static UPoly from_polynomial(const Polynomial& p, std::size_t var) {
    std::vector<Rational> v;
    for (const auto& [m, c] : p.terms()) {
      if (m.degree() != m[var]) throw InvalidArgument("polynomial is not univariate in the expected variable");
      if (v.size() <= m[var]) v.resize(m[var] + 1);
      v[m[var]] = c;
    }
    return UPoly(std::move(v));
  }

 private:
  void trim() {
    while (!c_.empty() && lnd::is_zero(c_.back())) c_.pop_back();
  }
  std::vector<Rational> c_;
};

inline bool is_zero(const UPoly& p) { return p.is_zero(); }

// Element of Q(x): numerator/denominator in x, coprime, denominator monic.
class RationalFunction {
 public:
  RationalFunction() : den_(1) {}
  RationalFunction(int c) : num_(c), den_(1) {}
  RationalFunction(const Rational& c) : num_(c), den_(1) {}
  RationalFunction(UPoly num) : num_(std::move(num)), den_(1) {}
  RationalFunction(UPoly num, UPoly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  static RationalFunction x() { return RationalFunction(UPoly::monomial(1)); }

  const UPoly& num() const { return num_; }
  const UPoly& den() const { return den_; }
  bool is_polynomial() const { return den_.degree() == 0; }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) { return add(a, b, false); }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return add(a, b, true); }
  RationalFunction operator-() const {
    RationalFunction r(*this);
    r.num_ = -r.num_;
    return r;
  }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_polynomial() && b.is_polynomial()) return RationalFunction(a.num_ * b.num_);
    if (a.num_.is_zero() || b.num_.is_zero()) return {};
    // cancel across first so the product is already reduced
    UPoly g1 = UPoly::gcd(a.num_, b.den_), g2 = UPoly::gcd(b.num_, a.den_);
    RationalFunction r;
    r.num_ = UPoly::exact_div(a.num_, g1) * UPoly::exact_div(b.num_, g2);
    r.den_ = UPoly::exact_div(a.den_, g2) * UPoly::exact_div(b.den_, g1);
    r.fix_sign();
    return r;
  }
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.num_.is_zero()) throw InvalidArgument("division by zero rational function");
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
  }
  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }

  RationalFunction inverse() const { return RationalFunction(1) / *this; }

  // d/dx by the quotient rule.
  RationalFunction derivative() const {
    return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
  }

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

 private:
  static RationalFunction add(const RationalFunction& a, const RationalFunction& b, bool negate) {
    UPoly bn = negate ? -b.num_ : b.num_;
    if (a.num_.is_zero()) return RationalFunction(bn, b.den_);
    if (b.num_.is_zero()) return a;
    if (a.den_ == b.den_) return RationalFunction(a.num_ + bn, a.den_);
    // lcm-based sum; only a factor of g can cancel afterwards
    UPoly g = UPoly::gcd(a.den_, b.den_);
    UPoly ac = UPoly::exact_div(a.den_, g), bc = UPoly::exact_div(b.den_, g);
    RationalFunction r;
    r.num_ = a.num_ * bc + bn * ac;
    r.den_ = ac * b.den_;
    if (r.num_.is_zero()) return {};
    if (g.degree() > 0) {
      UPoly h = UPoly::gcd(r.num_, g);
      if (h.degree() > 0) {
        r.num_ = UPoly::exact_div(r.num_, h);
        r.den_ = UPoly::exact_div(r.den_, h);
      }
    }
    r.fix_sign();
    return r;
  }

  void fix_sign() {
    Rational lc = den_.lc();
    if (lc != 1) {
      Rational inv = 1 / lc;
      num_ = num_ * UPoly(inv);
      den_ = den_ * UPoly(inv);
    }
  }

  void normalize() {
    if (den_.is_zero()) throw InvalidArgument("zero denominator in rational function");
    if (num_.is_zero()) {
      den_ = UPoly(1);
      return;
    }
    if (den_.degree() > 0) {
      UPoly g = UPoly::gcd(num_, den_);
      if (g.degree() > 0) {
        num_ = UPoly::divmod(num_, g).first;
        den_ = UPoly::divmod(den_, g).first;
      }
    }
    Rational lc = den_.lc();
    if (lc != 1) {
      Rational inv = 1 / lc;
      num_ = num_ * UPoly(inv);
      den_ = den_ * UPoly(inv);
    }
  }

  UPoly num_;
  UPoly den_;
};

inline bool is_zero(const RationalFunction& r) { return r.num().is_zero(); }

using PlanePolynomial = BasicPolynomial<RationalFunction>;

}  // namespace lnd
