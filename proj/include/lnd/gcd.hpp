#pragma once

#include <utility>
#include <vector>

#include "lnd/errors.hpp"
#include "lnd/ops.hpp"
#include "lnd/polynomial.hpp"
#include "lnd/rational_function.hpp"

namespace lnd {

namespace detail {

// p as a polynomial in variable v with coefficients free of v; out[i] is the
// coefficient of v^i.
inline std::vector<Polynomial> to_univariate(const Polynomial& p, std::size_t v) {
  std::vector<std::vector<Polynomial::Term>> buckets(p.degree_in(v) + 1);
  for (const auto& [m, c] : p.terms()) {
    Monomial r = m;
    r.set(v, 0);
    buckets[m[v]].emplace_back(r, c);
  }
  std::vector<Polynomial> out;
  for (auto& b : buckets) out.push_back(Polynomial::from_terms(p.ring(), std::move(b)));
  return out;
}

inline Polynomial from_univariate(const std::vector<Polynomial>& coeffs, const Ring& ring, std::size_t v) {
  std::vector<Polynomial::Term> terms;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    for (const auto& [m, c] : coeffs[i].terms()) terms.emplace_back(m * Monomial::variable(v, i), c);
  return Polynomial::from_terms(ring, std::move(terms));
}

inline void trim(std::vector<Polynomial>& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

// Pseudo-remainder of a by b in the main variable.
inline std::vector<Polynomial> prem(std::vector<Polynomial> a, const std::vector<Polynomial>& b) {
  const std::size_t db = b.size() - 1;
  const Polynomial& lb = b.back();
  if (a.size() < b.size()) return a;
  int e = static_cast<int>(a.size() - b.size()) + 1;
  while (!a.empty() && a.size() >= b.size()) {
    Polynomial la = a.back();
    std::size_t s = a.size() - 1 - db;
    for (auto& c : a) c = c * lb;
    for (std::size_t i = 0; i <= db; ++i) a[i + s] = a[i + s] - la * b[i];
    trim(a);
    --e;
  }
  if (e > 0) {
    Polynomial f = lb.pow(static_cast<unsigned>(e));
    for (auto& c : a) c = c * f;
  }
  return a;
}

}  // namespace detail

// Scales p to integer coefficients with gcd 1 and positive leading
// coefficient. Zero stays zero.
inline Polynomial normalize_content(const Polynomial& p) {
  if (p.is_zero()) return p;
  Integer den = 1, num = 0;
  for (const auto& t : p.terms()) den = lcm(den, t.second.get_den());
  for (const auto& t : p.terms()) num = gcd(num, Integer(t.second.get_num() * (den / t.second.get_den())));
  Rational scale(den, num);
  if (sgn(p.leading().second) < 0) scale = -scale;
  return p * scale;
}

Polynomial gcd_poly(const Polynomial& a, const Polynomial& b);

namespace detail {

inline Polynomial content_in(const std::vector<Polynomial>& coeffs) {
  Polynomial g(coeffs.front().ring());
  for (const auto& c : coeffs) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? normalize_content(c) : gcd_poly(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

inline std::vector<Polynomial> divide_coeffs(const std::vector<Polynomial>& a, const Polynomial& d) {
  std::vector<Polynomial> out;
  for (const auto& c : a) out.push_back(d.is_constant() ? c * (Rational(1) / d.constant_value()) : exact_div(c, d));
  return out;
}

inline std::vector<Polynomial> primitive_part(const std::vector<Polynomial>& a) {
  return divide_coeffs(a, content_in(a));
}

// Subresultant remainder sequence; a and b primitive with deg a >= deg b >= 1.
inline std::vector<Polynomial> subresultant_gcd(std::vector<Polynomial> a, std::vector<Polynomial> b) {
  const Ring ring = a.front().ring();
  Polynomial g = Polynomial::constant(ring, 1), h = Polynomial::constant(ring, 1);
  for (;;) {
    std::size_t d = a.size() - b.size();
    auto r = prem(a, b);
    if (r.empty()) return primitive_part(b);
    if (r.size() == 1) return {Polynomial::constant(ring, 1)};
    Polynomial div = g * h.pow(static_cast<unsigned>(d));
    a = std::move(b);
    b = divide_coeffs(r, div);
    g = a.back();
    if (d == 1) h = g;
    else if (d > 1) h = exact_div(g.pow(static_cast<unsigned>(d)), h.pow(static_cast<unsigned>(d - 1)));
  }
}

}  // namespace detail

// Greatest common divisor normalized to content 1 with a positive leading
// coefficient. Recursive in the most significant variable present.
inline Polynomial gcd_poly(const Polynomial& a, const Polynomial& b) {
  require_same_ring(a.ring(), b.ring());
  if (a.is_zero() && b.is_zero()) throw InvalidArgument("gcd of two zero polynomials");
  if (a.is_zero()) return normalize_content(b);
  if (b.is_zero()) return normalize_content(a);
  const Ring& ring = a.ring();
  if (a.is_constant() || b.is_constant()) return Polynomial::constant(ring, 1);

  std::size_t v = 0;
  bool found = false;
  for (std::size_t i = ring->arity(); i-- > 0 && !found;)
    if (a.uses_variable(i) || b.uses_variable(i)) {
      v = i;
      found = true;
    }

  auto ua = detail::to_univariate(a, v);
  auto ub = detail::to_univariate(b, v);
  Polynomial ca = detail::content_in(ua);
  Polynomial cb = detail::content_in(ub);
  Polynomial c = gcd_poly(ca, cb);
  if (ua.size() == 1 || ub.size() == 1) return normalize_content(c);

  auto pa = detail::divide_coeffs(ua, ca);
  auto pb = detail::divide_coeffs(ub, cb);
  if (pa.size() < pb.size()) std::swap(pa, pb);
  auto g = detail::subresultant_gcd(std::move(pa), std::move(pb));
  return normalize_content(c * detail::from_univariate(g, ring, v));
}

inline Polynomial gcd_poly(const std::vector<Polynomial>& ps) {
  Polynomial g;
  bool first = true;
  for (const auto& p : ps) {
    if (first) {
      g = p;
      first = false;
      continue;
    }
    if (g.is_zero() && p.is_zero()) continue;
    g = gcd_poly(g, p);
  }
  if (first) throw InvalidArgument("gcd of an empty list");
  return g.is_zero() ? g : normalize_content(g);
}

// L(p): terms of (y,z)-degree exactly one, with x treated as a coefficient.
// d(p): gcd in k[x] of all (y,z)-coefficients; d(0) = 0 with `zero` set.
struct LinearPartContent {
  Polynomial linear;
  Polynomial content;
  bool zero = false;
};

inline LinearPartContent linear_part_and_content(const Polynomial& p) {
  const auto& ring = *p.ring();
  std::size_t xi = ring.require("x");
  std::vector<Polynomial::Term> lin;
  for (const auto& t : p.terms())
    if (t.first.degree() - t.first[xi] == 1) lin.push_back(t);
  LinearPartContent out{Polynomial::from_sorted_terms(p.ring(), std::move(lin)), Polynomial(p.ring()), p.is_zero()};
  if (out.zero) return out;
  // group coefficients by their (y,z) part
  std::map<Monomial, std::vector<Polynomial::Term>> groups;
  for (const auto& [m, c] : p.terms()) {
    Monomial rest = m;
    rest.set(xi, 0);
    groups[rest].emplace_back(Monomial::variable(xi, m[xi]), c);
  }
  UPoly g;
  for (auto& [rest, terms] : groups) {
    g = UPoly::gcd(g, UPoly::from_polynomial(Polynomial::from_terms(p.ring(), std::move(terms)), xi));
    if (g.degree() == 0) break;
  }
  out.content = normalize_content(g.to_polynomial(p.ring(), xi));
  return out;
}

}  // namespace lnd
