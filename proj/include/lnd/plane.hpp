#pragma once

// Automorphisms of K[y,z] for K = Q or Q(x), as point maps (y,z) -> (P,Q).
// compose(a, b) is a after b: its images are a's images evaluated at b's.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lnd/derivation.hpp"
#include "lnd/errors.hpp"
#include "lnd/format.hpp"
#include "lnd/ops.hpp"
#include "lnd/polynomial.hpp"
#include "lnd/rational_function.hpp"

namespace lnd {

enum class Field { Q, Qx };

inline const char* field_name(Field f) { return f == Field::Q ? "Q" : "Q(x)"; }

// ---- conversions between k[x,y,z] and Q(x)[y,z] --------------------------

inline PlanePolynomial to_plane(const Polynomial& p) {
  const auto& ring = *p.ring();
  std::size_t xi = ring.require("x"), yi = ring.require("y"), zi = ring.require("z");
  std::map<Monomial, std::vector<Rational>, std::greater<Monomial>> groups;
  for (const auto& [m, c] : p.terms()) {
    for (std::size_t i = 0; i < ring.arity(); ++i)
      if (i != xi && i != yi && i != zi && m[i]) throw RingMismatch("extra variable " + ring.vars[i]);
    Monomial yz;
    yz.set(0, m[yi]);
    yz.set(1, m[zi]);
    auto& v = groups[yz];
    if (v.size() <= m[xi]) v.resize(m[xi] + 1);
    v[m[xi]] += c;
  }
  std::vector<PlanePolynomial::Term> terms;
  for (auto& [m, v] : groups) terms.emplace_back(m, RationalFunction(UPoly(std::move(v))));
  return PlanePolynomial::from_terms(ring_qx_yz(), std::move(terms));
}

inline PlanePolynomial plane_constant(const RationalFunction& c) { return PlanePolynomial::constant(ring_qx_yz(), c); }
inline PlanePolynomial plane_y() { return PlanePolynomial::variable(ring_qx_yz(), 0); }
inline PlanePolynomial plane_z() { return PlanePolynomial::variable(ring_qx_yz(), 1); }

inline PlanePolynomial parse_plane(const std::string& text) {
  return parse_polynomial<RationalFunction>(text, ring_qx_yz());
}

// Lowest common (monic) denominator of all coefficients.
inline UPoly common_denominator(const PlanePolynomial& p) {
  UPoly l(1);
  for (const auto& t : p.terms()) {
    const UPoly& d = t.second.den();
    if (d.degree() == 0) continue;
    UPoly g = UPoly::gcd(l, d);
    l = UPoly::divmod(l * d, g).first;
  }
  return l.monic();
}

inline bool has_polynomial_coefficients(const PlanePolynomial& p) {
  for (const auto& t : p.terms())
    if (!t.second.is_polynomial()) return false;
  return true;
}

inline bool has_rational_coefficients(const PlanePolynomial& p) {
  for (const auto& t : p.terms())
    if (!t.second.is_constant()) return false;
  return true;
}

// L * p as an element of k[x,y,z], where L is the common denominator.
inline Polynomial cleared_numerator(const PlanePolynomial& p, const UPoly& l, const Ring& ring = ring_xyz()) {
  std::size_t xi = ring->require("x"), yi = ring->require("y"), zi = ring->require("z");
  std::vector<Polynomial::Term> terms;
  for (const auto& [m, c] : p.terms()) {
    RationalFunction scaled = c * RationalFunction(l);
    if (!scaled.is_polynomial()) throw InvalidArgument("denominator does not clear");
    const UPoly& n = scaled.num();
    Rational inv = 1 / scaled.den().lc();
    for (std::size_t i = 0; i < n.coeffs().size(); ++i) {
      if (is_zero(n.coeffs()[i])) continue;
      Monomial mm;
      mm.set(xi, i);
      mm.set(yi, m[0]);
      mm.set(zi, m[1]);
      terms.emplace_back(mm, n.coeffs()[i] * inv);
    }
  }
  return Polynomial::from_terms(ring, std::move(terms));
}

inline Polynomial from_plane(const PlanePolynomial& p, const Ring& ring = ring_xyz()) {
  if (!has_polynomial_coefficients(p)) throw InvalidArgument("plane polynomial has denominators in x");
  return cleared_numerator(p, UPoly(1), ring);
}

// "N" or "(N)/(L)" with a single common denominator.
inline std::string plane_to_string(const PlanePolynomial& p) {
  UPoly l = common_denominator(p);
  std::string n = to_string(cleared_numerator(p, l));
  if (l.degree() == 0) return n;
  return "(" + n + ")/(" + to_string(l, "x") + ")";
}

inline std::string rf_to_string(const RationalFunction& r) {
  if (r.is_polynomial()) return to_string(r.num(), "x");
  return "(" + to_string(r.num(), "x") + ")/(" + to_string(r.den(), "x") + ")";
}

inline RationalFunction parse_rf(const std::string& text) {
  auto p = parse_plane(text);
  if (!p.is_constant()) throw InvalidArgument("'" + text + "' is not an element of Q(x)");
  return p.constant_value();
}

// ---- automorphisms -------------------------------------------------------

struct PlaneAutomorphism {
  Field field = Field::Q;
  PlanePolynomial y = plane_y();
  PlanePolynomial z = plane_z();

  static PlaneAutomorphism identity(Field f = Field::Q) { return {f, plane_y(), plane_z()}; }
  static PlaneAutomorphism swap(Field f = Field::Q) { return {f, plane_z(), plane_y()}; }

  static PlaneAutomorphism make(Field f, PlanePolynomial py, PlanePolynomial pz) {
    if (f == Field::Q && !(has_rational_coefficients(py) && has_rational_coefficients(pz)))
      throw InvalidArgument("coefficients must lie in Q for field Q");
    return {f, std::move(py), std::move(pz)};
  }

  static PlaneAutomorphism parse(Field f, const std::string& py, const std::string& pz) {
    return make(f, parse_plane(py), parse_plane(pz));
  }

  friend bool operator==(const PlaneAutomorphism& a, const PlaneAutomorphism& b) {
    return a.y == b.y && a.z == b.z;
  }
  friend bool operator!=(const PlaneAutomorphism& a, const PlaneAutomorphism& b) { return !(a == b); }
};

inline std::string to_string(const PlaneAutomorphism& a) {
  return "(" + plane_to_string(a.y) + ", " + plane_to_string(a.z) + ")";
}

inline PlaneAutomorphism compose(const PlaneAutomorphism& a, const PlaneAutomorphism& b) {
  if (a.field != b.field) throw RingMismatch(std::string("field ") + field_name(a.field) + " vs " + field_name(b.field));
  std::vector<PlanePolynomial> at{b.y, b.z};
  return {a.field, evaluate(a.y, at, ring_qx_yz()), evaluate(a.z, at, ring_qx_yz())};
}

// (y, z) -> (u*y + c, v*z + F(y)) with u, v nonzero.
struct TriangularFactor {
  RationalFunction u = 1;
  RationalFunction c = 0;
  RationalFunction v = 1;
  PlanePolynomial F = PlanePolynomial(ring_qx_yz());

  static TriangularFactor identity() { return {}; }

  bool is_identity() const { return u == RationalFunction(1) && is_zero(c) && v == RationalFunction(1) && F.is_zero(); }
  // affine triangular factors, deg F <= 1
  bool is_affine() const { return F.total_degree() <= 1; }
  // (u*y + c, v*z + const)
  bool is_diagonal_translation() const { return F.total_degree() <= 0; }

  PlaneAutomorphism as_automorphism(Field f) const {
    return {f, plane_y() * u + plane_constant(c), plane_z() * v + F};
  }

  PlaneAutomorphism inverse(Field f) const {
    // y' = (y - c)/u, z' = (z - F(y'))/v
    RationalFunction ui = u.inverse(), vi = v.inverse();
    PlanePolynomial yp = plane_y() * ui - plane_constant(c * ui);
    PlanePolynomial fy = evaluate(F, {yp, plane_z()}, ring_qx_yz());
    return {f, yp, (plane_z() - fy) * vi};
  }

  // Reads a triangular automorphism back from its images.
  static TriangularFactor from_automorphism(const PlaneAutomorphism& a) {
    TriangularFactor t;
    const auto& P = a.y;
    if (P.total_degree() != 1 || P.degree_in(1) > 0) throw InvalidArgument("not triangular");
    t.u = P.coefficient(Monomial::variable(0));
    t.c = P.constant_term();
    PlanePolynomial Q = a.z;
    t.v = Q.coefficient(Monomial::variable(1));
    if (is_zero(t.u) || is_zero(t.v)) throw InvalidArgument("not triangular");
    t.F = Q - plane_z() * t.v;
    if (t.F.degree_in(1) > 0) throw InvalidArgument("not triangular");
    return t;
  }

  friend bool operator==(const TriangularFactor& a, const TriangularFactor& b) {
    return a.u == b.u && a.c == b.c && a.v == b.v && a.F == b.F;
  }
};

// Factors in application order tau_0, swap, tau_1, ..., swap, tau_m; the
// automorphism is tau_m o swap o ... o swap o tau_0.
struct DecompositionWord {
  Field field = Field::Q;
  std::vector<TriangularFactor> triangular;  // m + 1 factors

  std::size_t swap_count() const { return triangular.empty() ? 0 : triangular.size() - 1; }

  // Interior factors are not affine.
  bool is_reduced() const {
    for (std::size_t i = 1; i + 1 < triangular.size(); ++i)
      if (triangular[i].is_affine()) return false;
    return !triangular.empty();
  }
};

inline PlaneAutomorphism recompose(const DecompositionWord& w) {
  if (w.triangular.empty()) throw InvalidArgument("empty word");
  PlaneAutomorphism acc = w.triangular[0].as_automorphism(w.field);
  for (std::size_t i = 1; i < w.triangular.size(); ++i)
    acc = compose(w.triangular[i].as_automorphism(w.field), compose(PlaneAutomorphism::swap(w.field), acc));
  return acc;
}

namespace detail {

inline PlanePolynomial top_form(const PlanePolynomial& p) {
  std::vector<PlanePolynomial::Term> out;
  int d = p.total_degree();
  for (const auto& t : p.terms())
    if (static_cast<int>(t.first.degree()) == d) out.push_back(t);
  return PlanePolynomial::from_sorted_terms(p.ring(), std::move(out));
}

inline TriangularFactor compose_triangular(const TriangularFactor& a, const TriangularFactor& b) {
  return TriangularFactor::from_automorphism(compose(a.as_automorphism(Field::Qx), b.as_automorphism(Field::Qx)));
}

}  // namespace detail

// Degree-reduction peeling. Triangular pieces are stripped from the left;
// a swap is emitted whenever the first image has the larger degree.
inline DecompositionWord decompose_tame(const PlaneAutomorphism& a) {
  PlanePolynomial P = a.y, Q = a.z;
  std::vector<TriangularFactor> outer;  // tau_m first
  TriangularFactor acc;
  auto fail = [&](const std::string& why) { throw NotAnAutomorphism(why + " in " + to_string(a)); };
  for (;;) {
    int dp = P.total_degree(), dq = Q.total_degree();
    if (dp <= 0 || dq <= 0) fail("constant image");
    if (std::max(dp, dq) == 1) break;
    if (dq >= dp) {
      if (dq % dp) fail("leading forms are not related by a power");
      unsigned e = static_cast<unsigned>(dq / dp);
      PlanePolynomial tp = detail::top_form(P).pow(e);
      RationalFunction c = Q.leading().second / tp.leading().second;
      if (detail::top_form(Q) != tp * c) fail("leading forms are not related by a power");
      Q = Q - P.pow(e) * c;
      TriangularFactor t;
      t.F = PlanePolynomial::monomial(ring_qx_yz(), Monomial::variable(0, e), c);
      acc = detail::compose_triangular(acc, t);
    } else {
      outer.push_back(acc);
      acc = TriangularFactor{};
      std::swap(P, Q);
    }
  }
  // affine remainder (a11*y + a12*z + b1, a21*y + a22*z + b2)
  const Monomial my = Monomial::variable(0), mz = Monomial::variable(1);
  RationalFunction a11 = P.coefficient(my), a12 = P.coefficient(mz), b1 = P.constant_term();
  RationalFunction a21 = Q.coefficient(my), a22 = Q.coefficient(mz), b2 = Q.constant_term();
  RationalFunction det = a11 * a22 - a12 * a21;
  if (is_zero(det)) fail("singular linear part");
  if (is_zero(a12)) {
    TriangularFactor t;
    t.u = a11;
    t.c = b1;
    t.v = a22;
    t.F = plane_y() * a21 + plane_constant(b2);
    acc = detail::compose_triangular(acc, t);
    outer.push_back(acc);
  } else {
    RationalFunction lambda = a22 / a12;
    TriangularFactor left;
    left.F = plane_y() * lambda;
    TriangularFactor right;
    right.u = -det / a12;
    right.c = b2 - lambda * b1;
    right.v = a12;
    right.F = plane_y() * a11 + plane_constant(b1);
    outer.push_back(detail::compose_triangular(acc, left));
    outer.push_back(right);
  }
  DecompositionWord w{a.field, {outer.rbegin(), outer.rend()}};
  if (a.field == Field::Q) {
    // peeling never leaves Q when the input is over Q
    for (const auto& t : w.triangular)
      if (!t.u.is_constant() || !t.v.is_constant() || !t.c.is_constant() || !has_rational_coefficients(t.F))
        throw InvalidArgument("internal: factor left Q");
  }
  return w;
}

inline PlaneAutomorphism invert(const DecompositionWord& w) {
  if (w.triangular.empty()) throw InvalidArgument("empty word");
  // (tau_m o s o ... o s o tau_0)^-1 = tau_0^-1 o s o ... o s o tau_m^-1
  PlaneAutomorphism acc = w.triangular.back().inverse(w.field);
  for (std::size_t i = w.triangular.size() - 1; i-- > 0;)
    acc = compose(w.triangular[i].inverse(w.field), compose(PlaneAutomorphism::swap(w.field), acc));
  return acc;
}

inline PlaneAutomorphism invert(const PlaneAutomorphism& a) { return invert(decompose_tame(a)); }

// m = 0 gives 2, m = 1 with tau_0 = (u*y + c, v*z + c') gives 1, else m + 2.
inline unsigned level_from_word(const DecompositionWord& w) {
  if (!w.is_reduced()) throw InvalidArgument("level needs a reduced word");
  std::size_t m = w.swap_count();
  if (m == 0) return 2;
  if (m == 1 && w.triangular[0].is_diagonal_translation()) return 1;
  return static_cast<unsigned>(m + 2);
}

inline unsigned level(const PlaneAutomorphism& a) { return level_from_word(decompose_tame(a)); }

// The representative (f, slice/value) of the right T2-coset attached to an
// irreducible derivation with kernel generator f and D(slice) = value.
inline PlaneAutomorphism psi_representative(const PlanePolynomial& f_ker, const PlanePolynomial& slice,
                                            const RationalFunction& slice_value) {
  if (is_zero(slice_value)) throw InvalidArgument("slice value must be a unit");
  PlaneAutomorphism a{Field::Qx, f_ker, slice * slice_value.inverse()};
  decompose_tame(a);
  return a;
}

// Same, from data in k[x,y,z]; when a derivation is supplied it must kill
// f_ker and send slice to slice_value.
inline PlaneAutomorphism psi_representative(const Polynomial& f_ker, const Polynomial& slice,
                                            const Polynomial& slice_value, const Derivation* d = nullptr) {
  if (d) {
    Polynomial df = (*d)(f_ker), ds = (*d)(slice);
    if (!df.is_zero()) throw ConditionFailed("D(f) = 0", to_string(df));
    if (ds != slice_value) throw ConditionFailed("D(slice) = value", to_string(ds));
  }
  PlanePolynomial v = to_plane(slice_value);
  if (!v.is_constant() || v.is_zero()) throw InvalidArgument("slice value must be a nonzero element of k[x]");
  return psi_representative(to_plane(f_ker), to_plane(slice), v.constant_value());
}

// Both the map and its inverse have images without denominators in x.
inline bool is_B_automorphism(const PlaneAutomorphism& a) {
  PlaneAutomorphism inv = invert(decompose_tame(a));
  return has_polynomial_coefficients(a.y) && has_polynomial_coefficients(a.z) && has_polynomial_coefficients(inv.y) &&
         has_polynomial_coefficients(inv.z);
}

}  // namespace lnd
