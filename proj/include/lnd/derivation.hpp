#pragma once

#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lnd/errors.hpp"
#include "lnd/format.hpp"
#include "lnd/gcd.hpp"
#include "lnd/ops.hpp"
#include "lnd/polynomial.hpp"

namespace lnd {

inline constexpr unsigned kDefaultCap = 64;

// A k-derivation of a polynomial ring, fixed by the images of the variables.
class Derivation {
 public:
  Derivation() = default;
  Derivation(Ring ring, std::vector<Polynomial> images) : ring_(std::move(ring)), images_(std::move(images)) {
    if (images_.size() != ring_->arity()) throw InvalidArgument("derivation needs one image per variable");
    for (const auto& p : images_) require_same_ring(p.ring(), ring_);
  }

  static Derivation zero(const Ring& ring) { return Derivation(ring, std::vector<Polynomial>(ring->arity(), Polynomial(ring))); }

  // Partial derivative with respect to variable i.
  static Derivation partial(const Ring& ring, std::size_t i) {
    Derivation d = zero(ring);
    d.images_.at(i) = Polynomial::constant(ring, 1);
    return d;
  }
  static Derivation partial(const Ring& ring, const std::string& var) { return partial(ring, ring->require(var)); }

  // Images given as text, one per variable in ring order.
  static Derivation parse(const Ring& ring, const std::vector<std::string>& images) {
    if (images.size() != ring->arity()) throw InvalidArgument("derivation needs one image per variable");
    std::vector<Polynomial> v;
    for (const auto& s : images) v.push_back(parse_poly(s, ring));
    return Derivation(ring, std::move(v));
  }

  const Ring& ring() const { return ring_; }
  const std::vector<Polynomial>& images() const { return images_; }
  const Polynomial& image(std::size_t i) const { return images_.at(i); }
  const Polynomial& image(const std::string& var) const { return images_.at(ring_->require(var)); }

  bool is_zero() const {
    for (const auto& p : images_)
      if (!p.is_zero()) return false;
    return true;
  }

  // Leibniz extension: D(p) = sum_i dp/dx_i * D(x_i).
  Polynomial operator()(const Polynomial& p) const {
    require_same_ring(p.ring(), ring_);
    Polynomial out(ring_);
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (images_[i].is_zero() || !p.uses_variable(i)) continue;
      out += partial_derivative(p, i) * images_[i];
    }
    return out;
  }

  friend Derivation operator+(const Derivation& a, const Derivation& b) {
    require_same_ring(a.ring_, b.ring_);
    std::vector<Polynomial> v;
    for (std::size_t i = 0; i < a.images_.size(); ++i) v.push_back(a.images_[i] + b.images_[i]);
    return Derivation(a.ring_, std::move(v));
  }
  friend Derivation operator-(const Derivation& a, const Derivation& b) { return a + (-b); }
  Derivation operator-() const {
    std::vector<Polynomial> v;
    for (const auto& p : images_) v.push_back(-p);
    return Derivation(ring_, std::move(v));
  }
  friend Derivation operator*(const Polynomial& h, const Derivation& d) {
    require_same_ring(h.ring(), d.ring_);
    std::vector<Polynomial> v;
    for (const auto& p : d.images_) v.push_back(h * p);
    return Derivation(d.ring_, std::move(v));
  }
  friend bool operator==(const Derivation& a, const Derivation& b) {
    return same_ring(a.ring_, b.ring_) && a.images_ == b.images_;
  }
  friend bool operator!=(const Derivation& a, const Derivation& b) { return !(a == b); }

  // Same derivation scaled so the first nonzero image has a positive leading
  // coefficient and the images have coprime integer coefficients.
  Derivation normalized() const {
    Integer den = 1, num = 0;
    const Polynomial* first = nullptr;
    for (const auto& p : images_)
      for (const auto& t : p.terms()) {
        if (!first) first = &p;
        den = lcm(den, t.second.get_den());
      }
    if (!first) return *this;
    for (const auto& p : images_)
      for (const auto& t : p.terms()) num = gcd(num, Integer(t.second.get_num() * (den / t.second.get_den())));
    Rational s(den, num);
    if (sgn(first->leading().second) < 0) s = -s;
    std::vector<Polynomial> v;
    for (const auto& p : images_) v.push_back(p * s);
    return Derivation(ring_, std::move(v));
  }

  // Stable FNV-1a hash of the printed images.
  std::string fingerprint() const {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](const std::string& s) {
      for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
      }
      h ^= 0xff;
      h *= 1099511628211ull;
    };
    for (const auto& v : ring_->vars) mix(v);
    for (const auto& p : images_) mix(to_string(p));
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
  }

 private:
  Ring ring_;
  std::vector<Polynomial> images_;
};

inline Polynomial apply(const Derivation& d, const Polynomial& p) { return d(p); }

inline std::string to_string(const Derivation& d) {
  std::string s = "(";
  for (std::size_t i = 0; i < d.images().size(); ++i) s += (i ? ", " : "") + to_string(d.images()[i]);
  return s + ")";
}

// Degree function: the m with D^m(p) != 0 and D^{m+1}(p) = 0.
inline unsigned deg_D(const Derivation& d, const Polynomial& p, unsigned cap = kDefaultCap) {
  if (p.is_zero()) throw InvalidArgument("deg_D of the zero polynomial");
  Polynomial cur = p;
  for (unsigned m = 0; m <= cap; ++m) {
    Polynomial next = d(cur);
    if (next.is_zero()) return m;
    cur = std::move(next);
  }
  throw CapExceeded("deg_D did not terminate within " + std::to_string(cap) + " applications");
}

struct NilpotencyCertificate {
  std::string fingerprint;
  std::vector<std::string> variables;
  std::vector<unsigned> indices;  // least n with D^n(var) = 0
  unsigned cap = kDefaultCap;
};

inline NilpotencyCertificate certify_lnd(const Derivation& d, unsigned cap = kDefaultCap) {
  NilpotencyCertificate cert{d.fingerprint(), d.ring()->vars, {}, cap};
  for (std::size_t i = 0; i < d.ring()->arity(); ++i) {
    Polynomial cur = Polynomial::variable(d.ring(), i);
    unsigned n = 0;
    while (!cur.is_zero()) {
      if (n == cap) throw CapExceeded("D^n(" + d.ring()->vars[i] + ") nonzero for n = " + std::to_string(cap), d.ring()->vars[i]);
      cur = d(cur);
      ++n;
    }
    cert.indices.push_back(n);
  }
  return cert;
}

// Replays a certificate: D^{n-1}(var) != 0 and D^n(var) = 0 for each index.
inline bool verify_nilpotency(const Derivation& d, const NilpotencyCertificate& cert) {
  if (cert.fingerprint != d.fingerprint() || cert.indices.size() != d.ring()->arity()) return false;
  for (std::size_t i = 0; i < cert.indices.size(); ++i) {
    if (cert.indices[i] > cert.cap || cert.indices[i] == 0) return false;
    Polynomial cur = Polynomial::variable(d.ring(), i);
    for (unsigned k = 0; k + 1 < cert.indices[i]; ++k) cur = d(cur);
    if (cur.is_zero() || !d(cur).is_zero()) return false;
  }
  return true;
}

inline Polynomial det3(const Polynomial& a11, const Polynomial& a12, const Polynomial& a13, const Polynomial& a21,
                       const Polynomial& a22, const Polynomial& a23, const Polynomial& a31, const Polynomial& a32,
                       const Polynomial& a33) {
  return a11 * (a22 * a33 - a23 * a32) - a12 * (a21 * a33 - a23 * a31) + a13 * (a21 * a32 - a22 * a31);
}

// Jac(f,g,.) on k[x,y,z]: D(h) = det of rows (f, g, h), columns (dx, dy, dz).
inline Derivation jacobian3(const Polynomial& f, const Polynomial& g) {
  require_same_ring(f.ring(), g.ring());
  const Ring& ring = f.ring();
  if (ring->arity() != 3) throw InvalidArgument("jacobian3 needs a ring in three variables");
  Polynomial fx = partial_derivative(f, 0), fy = partial_derivative(f, 1), fz = partial_derivative(f, 2);
  Polynomial gx = partial_derivative(g, 0), gy = partial_derivative(g, 1), gz = partial_derivative(g, 2);
  // cofactor expansion along the last row
  return Derivation(ring, {fy * gz - fz * gy, fz * gx - fx * gz, fx * gy - fy * gx});
}

// alpha(x, F) * Jac(F, .) in the variables (y, z), x acting as a constant.
// `alpha` lives in k[x,t] with t standing for F.
inline Derivation jacobian2_over_R(const Polynomial& F, const Polynomial& alpha) {
  const Ring& ring = F.ring();
  std::size_t xi = ring->require("x"), yi = ring->require("y"), zi = ring->require("z");
  Polynomial Fy = partial_derivative(F, yi), Fz = partial_derivative(F, zi);
  if (Fy.is_zero() && Fz.is_zero()) throw ConditionFailed("gcd(dF/dy, dF/dz) = 1", "both partials vanish");
  Polynomial g = gcd_poly(Fy, Fz);
  if (!g.is_constant()) throw ConditionFailed("gcd(dF/dy, dF/dz) = 1", to_string(g));
  const Ring& ar = alpha.ring();
  std::vector<Polynomial> sub(ar->arity(), Polynomial(ring));
  for (std::size_t i = 0; i < ar->arity(); ++i) {
    const std::string& v = ar->vars[i];
    if (v == "x") sub[i] = Polynomial::variable(ring, xi);
    else if (v == "t") sub[i] = F;
    else throw InvalidArgument("alpha must be a polynomial in x and t (t standing for F)");
  }
  Polynomial a = evaluate(alpha, sub, ring);
  std::vector<Polynomial> im(ring->arity(), Polynomial(ring));
  im[yi] = -(a * Fz);
  im[zi] = a * Fy;
  return Derivation(ring, std::move(im));
}

inline Derivation commutator(const Derivation& d, const Derivation& e) {
  require_same_ring(d.ring(), e.ring());
  std::vector<Polynomial> v;
  for (std::size_t i = 0; i < d.ring()->arity(); ++i) v.push_back(d(e.image(i)) - e(d.image(i)));
  return Derivation(d.ring(), std::move(v));
}

struct IrreducibilityResult {
  bool irreducible;
  Polynomial gcd;
};

// D(B) lies in (a) exactly when a divides every generator image.
inline IrreducibilityResult is_irreducible(const Derivation& d) {
  if (d.is_zero()) throw InvalidArgument("irreducibility of the zero derivation");
  Polynomial g = gcd_poly(d.images());
  return {g.is_constant(), g};
}

// aD = bE for nonzero a, b iff all 2x2 minors of the image tuples vanish.
inline bool equivalent_check(const Derivation& d, const Derivation& e) {
  require_same_ring(d.ring(), e.ring());
  if (d.is_zero() || e.is_zero()) throw InvalidArgument("equivalence needs nonzero derivations");
  const std::size_t n = d.ring()->arity();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (d.image(i) * e.image(j) != d.image(j) * e.image(i)) return false;
  return true;
}

inline Derivation replica(const Polynomial& h, const Derivation& d) {
  Polynomial dh = d(h);
  if (!dh.is_zero()) throw ConditionFailed("h in Ker D", "D(h) = " + to_string(dh));
  return h * d;
}

// Pushes D forward along the coordinate change whose variable images are
// `alpha`: the result sends b to alpha_inv(D(alpha(b))), where alpha(b)
// substitutes the images of alpha into b.
inline Derivation conjugate(const Derivation& d, const std::vector<Polynomial>& alpha,
                            const std::vector<Polynomial>& alpha_inv) {
  const Ring& ring = d.ring();
  if (alpha.size() != ring->arity() || alpha_inv.size() != ring->arity())
    throw InvalidArgument("automorphism needs one image per variable");
  for (std::size_t i = 0; i < ring->arity(); ++i) {
    Polynomial back = evaluate(alpha[i], alpha_inv, ring);
    if (back != Polynomial::variable(ring, i))
      throw ConditionFailed("alpha o alpha_inv = id", ring->vars[i] + " -> " + to_string(back));
  }
  std::vector<Polynomial> v;
  for (std::size_t i = 0; i < ring->arity(); ++i) v.push_back(evaluate(d(alpha[i]), alpha_inv, ring));
  return Derivation(ring, std::move(v));
}

// E = Jac(x_var, g, .) for D with D(x_var) = 0 and D(g) a nonzero
// polynomial in x_var alone. Checks that E commutes with D and is an LND.
inline Derivation build_commuting_partner(const Derivation& d, const std::string& x_var, const Polynomial& g,
                                          unsigned cap = kDefaultCap) {
  const Ring& ring = d.ring();
  std::size_t xi = ring->require(x_var);
  Polynomial xv = Polynomial::variable(ring, xi);
  Polynomial dx = d(xv);
  if (!dx.is_zero()) throw ConditionFailed("D(" + x_var + ") = 0", to_string(dx));
  Polynomial dg = d(g);
  if (dg.is_zero()) throw ConditionFailed("D(g) nonzero in k[" + x_var + "]", "D(g) = 0");
  for (const auto& t : dg.terms())
    if (t.first.degree() != t.first[xi])
      throw ConditionFailed("D(g) nonzero in k[" + x_var + "]", "D(g) = " + to_string(dg));
  Derivation e = jacobian3(xv, g);
  Derivation c = commutator(d, e);
  if (!c.is_zero()) throw ConditionFailed("[D,E] = 0", to_string(c));
  certify_lnd(e, cap);
  return e;
}

struct RelationCheck {
  bool holds;
  std::string failure;  // empty when holds
};

// a1*Ep = a2*E + b*D on every generator, with b in Ker D.
inline RelationCheck verify_linear_relation(const Polynomial& a1, const Derivation& ep, const Polynomial& a2,
                                            const Derivation& e, const Polynomial& b, const Derivation& d) {
  if (a1.is_zero()) return {false, "a1 = 0"};
  const Ring& ring = d.ring();
  require_same_ring(ep.ring(), ring);
  require_same_ring(e.ring(), ring);
  Polynomial db = d(b);
  if (!db.is_zero()) return {false, "b not in Ker D: D(b) = " + to_string(db)};
  for (std::size_t i = 0; i < ring->arity(); ++i) {
    Polynomial lhs = a1 * ep.image(i);
    Polynomial rhs = a2 * e.image(i) + b * d.image(i);
    if (lhs != rhs) return {false, "generator " + ring->vars[i] + ": " + to_string(lhs) + " != " + to_string(rhs)};
  }
  return {true, {}};
}

}  // namespace lnd
