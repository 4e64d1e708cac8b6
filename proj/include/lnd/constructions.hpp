#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lnd/derivation.hpp"
#include "lnd/errors.hpp"
#include "lnd/gcd.hpp"
#include "lnd/linear_solve.hpp"
#include "lnd/ops.hpp"
#include "lnd/plane.hpp"

namespace lnd {

inline const Ring& ring_t() {
  static const Ring r = make_ring({"t"});
  return r;
}
inline const Ring& ring_xt() {
  static const Ring r = make_ring({"x", "t"});
  return r;
}
inline const Ring& ring_fr() {
  static const Ring r = make_ring({"f", "r"});
  return r;
}

// p(t) with t replaced by `value`.
inline Polynomial evaluate_univariate(const Polynomial& p, const Polynomial& value) {
  return evaluate(p, {value}, value.ring());
}

// ---- C-construction ------------------------------------------------------

struct CConstruction {
  Derivation delta;
  unsigned bound = 0;                  // max over generators
  std::vector<unsigned> per_generator;  // e for each ring variable
};

// Delta = sum f_i * delta_i with the nilpotency bound e = l_1 + ... + l_m - m + 1,
// l_j = deg_{delta_j}(g * prod_{i>j} f_i^{l_i}) + 1 taken for j = m down to 1.
inline CConstruction c_construction(const std::vector<Derivation>& deltas, const std::vector<Polynomial>& fs,
                                    unsigned cap = kDefaultCap) {
  const std::size_t m = deltas.size();
  if (m == 0 || fs.size() != m) throw InvalidArgument("c_construction needs matching nonempty lists");
  const Ring& ring = deltas[0].ring();
  for (const auto& d : deltas) require_same_ring(d.ring(), ring);
  for (std::size_t i = 0; i < m; ++i)
    if (fs[i].is_zero()) throw InvalidArgument("f_" + std::to_string(i + 1) + " is zero");
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (!commutator(deltas[i], deltas[j]).is_zero())
        throw ConditionFailed("delta_" + std::to_string(i + 1) + " and delta_" + std::to_string(j + 1) + " commute",
                              to_string(commutator(deltas[i], deltas[j])));
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t i = k; i < m; ++i) {
      Polynomial v = deltas[i](fs[k]);
      if (!v.is_zero())
        throw ConditionFailed("f_" + std::to_string(k + 1) + " in Ker delta_" + std::to_string(i + 1),
                              "delta_" + std::to_string(i + 1) + "(f_" + std::to_string(k + 1) + ") = " + to_string(v));
    }
  Derivation delta = Derivation::zero(ring);
  for (std::size_t i = 0; i < m; ++i) delta = delta + fs[i] * deltas[i];

  CConstruction out{delta, 0, {}};
  for (std::size_t gi = 0; gi < ring->arity(); ++gi) {
    Polynomial g = Polynomial::variable(ring, gi);
    std::vector<unsigned> l(m);
    Polynomial acc = g;  // g * prod_{i>j} f_i^{l_i}
    for (std::size_t j = m; j-- > 0;) {
      l[j] = deg_D(deltas[j], acc, cap) + 1;
      acc = acc * fs[j].pow(l[j]);
    }
    unsigned e = 1;
    for (unsigned v : l) e += v;
    e -= static_cast<unsigned>(m);
    Polynomial cur = g;
    for (unsigned k = 0; k < e && !cur.is_zero(); ++k) cur = delta(cur);
    if (!cur.is_zero()) throw ConditionFailed("Delta^e(" + ring->vars[gi] + ") = 0", "e = " + std::to_string(e));
    out.per_generator.push_back(e);
    out.bound = std::max(out.bound, e);
  }
  return out;
}

// ---- MC-chains -----------------------------------------------------------

struct ChainRelation {
  Polynomial h, sigma, f;  // h*d_i = sigma*d_{i-1} + f*d_{i-2}
};

struct MCChain {
  std::vector<Derivation> derivations;
  std::vector<ChainRelation> relations;  // relations[k] belongs to derivations[k + 2]
};

// Irreducible derivation of k[x,y,z] attached to the coset T2*gamma:
// Jac(gamma_y, .) cleared of denominators and content.
inline Derivation derivation_from_coset(const PlaneAutomorphism& gamma, const Ring& ambient = ring_xyz()) {
  PlanePolynomial fy = partial_derivative(gamma.y, std::size_t{0});
  PlanePolynomial fz = partial_derivative(gamma.y, std::size_t{1});
  PlanePolynomial dy = -fz, dz = fy;
  UPoly l = common_denominator(dy);
  UPoly l2 = common_denominator(dz);
  l = UPoly::divmod(l * l2, UPoly::gcd(l, l2)).first;
  Polynomial ny = cleared_numerator(dy, l, ambient), nz = cleared_numerator(dz, l, ambient);
  Polynomial g = gcd_poly(ny, nz);
  std::vector<Polynomial> im(ambient->arity(), Polynomial(ambient));
  im[ambient->require("y")] = exact_div(ny, g);
  im[ambient->require("z")] = exact_div(nz, g);
  return Derivation(ambient, std::move(im)).normalized();
}

// Solves h*a = sigma*b + f*c on the y and z images by Cramer's rule.
inline ChainRelation chain_relation(const Derivation& a, const Derivation& b, const Derivation& c) {
  const Ring& ring = a.ring();
  std::size_t yi = ring->require("y"), zi = ring->require("z");
  const Polynomial &ay = a.image(yi), &az = a.image(zi), &by = b.image(yi), &bz = b.image(zi), &cy = c.image(yi),
                   &cz = c.image(zi);
  Polynomial M = by * cz - bz * cy;
  if (M.is_zero()) throw ConditionFailed("previous chain elements independent", "determinant 0");
  Polynomial N1 = ay * cz - az * cy;
  Polynomial N2 = by * az - bz * ay;
  Polynomial g = gcd_poly(std::vector<Polynomial>{M, N1, N2});
  ChainRelation rel{exact_div(M, g), exact_div(N1, g), exact_div(N2, g)};
  if (sgn(rel.h.leading().second) < 0) {
    rel.h = -rel.h;
    rel.sigma = -rel.sigma;
    rel.f = -rel.f;
  }
  return rel;
}

struct ChainCheck {
  std::string name;
  bool pass;
  std::string witness;
};

inline bool in_k_x(const Polynomial& p) {
  std::size_t xi = p.ring()->require("x");
  for (const auto& t : p.terms())
    if (t.first.degree() != t.first[xi]) return false;
  return true;
}

// All MCChain invariants, one entry per check.
inline std::vector<ChainCheck> validate_chain(const MCChain& chain) {
  std::vector<ChainCheck> out;
  const auto& ds = chain.derivations;
  if (ds.empty()) return {{"nonempty", false, ""}};
  const Ring& ring = ds[0].ring();
  out.push_back({"d_1 = d/dy", ds[0] == Derivation::partial(ring, "y"), to_string(ds[0])});
  if (ds.size() >= 2) out.push_back({"d_2 = d/dz", ds[1] == Derivation::partial(ring, "z"), to_string(ds[1])});
  std::size_t expected = ds.size() > 2 ? ds.size() - 2 : 0;
  out.push_back({"relation count", chain.relations.size() == expected, std::to_string(chain.relations.size())});
  for (std::size_t i = 0; i < ds.size(); ++i) {
    auto irr = is_irreducible(ds[i]);
    out.push_back({"d_" + std::to_string(i + 1) + " irreducible", irr.irreducible, to_string(irr.gcd)});
    if (i + 1 < ds.size()) {
      Derivation c = commutator(ds[i], ds[i + 1]);
      out.push_back({"[d_" + std::to_string(i + 1) + ", d_" + std::to_string(i + 2) + "] = 0", c.is_zero(), to_string(c)});
    }
  }
  for (std::size_t k = 0; k < chain.relations.size() && k + 2 < ds.size(); ++k) {
    const auto& rel = chain.relations[k];
    std::string idx = std::to_string(k + 3);
    auto chk = verify_linear_relation(rel.h, ds[k + 2], rel.sigma, ds[k + 1], rel.f, ds[k]);
    out.push_back({"h_" + idx + "*d_" + idx + " = sigma*d_" + std::to_string(k + 2) + " + f*d_" + std::to_string(k + 1),
                   chk.holds, chk.holds ? "h = " + to_string(rel.h) + ", sigma = " + to_string(rel.sigma) + ", f = " +
                                              to_string(rel.f)
                                        : chk.failure});
    Polynomial ds_sigma = ds[k + 1](rel.sigma);
    out.push_back({"d_" + std::to_string(k + 2) + "(sigma_" + idx + ") = 0", ds_sigma.is_zero(), to_string(ds_sigma)});
    bool hk = !rel.h.is_zero() && in_k_x(rel.h), fk = !rel.f.is_zero() && in_k_x(rel.f);
    out.push_back({"h_" + idx + ", f_" + idx + " nonzero in k[x]", hk && fk, to_string(rel.h) + "; " + to_string(rel.f)});
  }
  return out;
}

inline MCChain mc_chain_from_word(const DecompositionWord& word, const Ring& ambient = ring_xyz()) {
  if (!word.is_reduced()) throw InvalidArgument("mc_chain_from_word needs a reduced word");
  MCChain chain;
  const std::size_t m = word.swap_count();
  chain.derivations.push_back(Derivation::partial(ambient, "y"));
  if (level_from_word(word) == 1) return chain;
  chain.derivations.push_back(Derivation::partial(ambient, "z"));
  // cosets theta*tau_0, theta*tau_1*theta*tau_0, ...
  PlaneAutomorphism gamma = PlaneAutomorphism::identity(Field::Qx);
  for (std::size_t i = 0; i < m; ++i) {
    gamma = compose(PlaneAutomorphism::swap(Field::Qx), compose(word.triangular[i].as_automorphism(Field::Qx), gamma));
    chain.derivations.push_back(derivation_from_coset(gamma, ambient));
    const std::size_t k = chain.derivations.size() - 1;
    chain.relations.push_back(chain_relation(chain.derivations[k], chain.derivations[k - 1], chain.derivations[k - 2]));
  }
  for (const auto& c : validate_chain(chain))
    if (!c.pass) throw ConditionFailed("chain invariant: " + c.name, c.witness);
  return chain;
}

// ---- minimal phi ---------------------------------------------------------

struct PhiResult {
  Polynomial phi;    // in k[f, r], monic in r
  Polynomial value;  // phi(f, r) in the ambient ring
  unsigned degree = 0;
  unsigned deg_cap = 0;
  unsigned coeff_deg_cap = 0;
};

// Least d with r^d + sum_{j<d} c_j(f) r^j in gB, deg c_j <= coeff_deg_cap.
inline PhiResult minimal_phi_search(const Polynomial& f, const Polynomial& g, const Polynomial& r, unsigned deg_cap,
                                    unsigned coeff_deg_cap = 0) {
  require_same_ring(f.ring(), g.ring());
  require_same_ring(f.ring(), r.ring());
  if (g.is_zero()) throw InvalidArgument("g must be nonzero");
  if (deg_cap == 0) throw InvalidArgument("deg_cap must be positive");
  if (coeff_deg_cap == 0) coeff_deg_cap = 3 * deg_cap;
  auto nf = [&](const Polynomial& p) { return normal_form_mod_principal(p, g); };
  std::vector<Polynomial> fpow{nf(Polynomial::constant(f.ring(), 1))};
  for (unsigned k = 1; k <= coeff_deg_cap; ++k) fpow.push_back(nf(fpow.back() * nf(f)));
  std::vector<Polynomial> rpow{fpow[0]};
  const Polynomial nr = nf(r);
  for (unsigned d = 1; d <= deg_cap; ++d) {
    rpow.push_back(nf(rpow.back() * nr));
    std::vector<Polynomial> basis;
    for (unsigned j = 0; j < d; ++j)
      for (unsigned k = 0; k <= coeff_deg_cap; ++k) basis.push_back(nf(fpow[k] * rpow[j]));
    auto sol = solve_in_span(-rpow[d], basis);
    if (!sol.feasible) continue;
    const Ring& fr = ring_fr();
    Polynomial F = Polynomial::variable(fr, 0), R = Polynomial::variable(fr, 1);
    Polynomial phi = R.pow(d);
    std::size_t idx = 0;
    for (unsigned j = 0; j < d; ++j)
      for (unsigned k = 0; k <= coeff_deg_cap; ++k, ++idx)
        if (!is_zero(sol.coefficients[idx])) phi += F.pow(k) * R.pow(j) * sol.coefficients[idx];
    Polynomial value = evaluate(phi, {f, r}, f.ring());
    if (!normal_form_mod_principal(value, g).is_zero()) throw ConditionFailed("phi(r) in gB", to_string(phi));
    return {phi, value, d, deg_cap, coeff_deg_cap};
  }
  throw NotFoundWithinBounds("no monic phi of r-degree <= " + std::to_string(deg_cap) + " with coefficient degree <= " +
                             std::to_string(coeff_deg_cap));
}

// ---- local slice construction ---------------------------------------------

struct LocalSlice {
  Polynomial P;  // in k[t], D(r) = g * P(f)
  PhiResult phi;
  Polynomial h;
  Derivation delta;
  NilpotencyCertificate nilpotency;
  Rational scalar{1};  // D = scalar * Jac(f, g, .), so Delta(r) = -h*P(f)/scalar
};

// Writes q as a polynomial P(t) with q = P(f), if possible.
inline std::optional<Polynomial> express_in_powers(const Polynomial& q, const Polynomial& f) {
  if (f.total_degree() <= 0) throw InvalidArgument("f must be nonconstant");
  if (q.is_zero()) return Polynomial(ring_t());
  unsigned top = static_cast<unsigned>(q.total_degree() / f.total_degree());
  std::vector<Polynomial> basis{Polynomial::constant(f.ring(), 1)};
  for (unsigned k = 1; k <= top; ++k) basis.push_back(basis.back() * f);
  auto sol = solve_in_span(q, basis);
  if (!sol.feasible) return std::nullopt;
  Polynomial P(ring_t());
  for (unsigned k = 0; k <= top; ++k) P += Polynomial::variable(ring_t(), 0).pow(k) * sol.coefficients[k];
  return P;
}

struct SliceCaps {
  unsigned deg_cap = 8;
  unsigned coeff_deg_cap = 0;
  unsigned nil_cap = kDefaultCap;
};

inline LocalSlice local_slice_construction(const Derivation& d, const Polynomial& f, const Polynomial& g,
                                           const Polynomial& r, const SliceCaps& caps = {}) {
  Polynomial df = d(f), dg = d(g);
  if (!df.is_zero()) throw ConditionFailed("D(f) = 0", to_string(df));
  if (!dg.is_zero()) throw ConditionFailed("D(g) = 0", to_string(dg));
  Polynomial dr = d(r);
  if (dr.is_zero()) throw ConditionFailed("D(r) = g*P(f) != 0", "D(r) = 0");
  auto q = try_exact_div(dr, g);
  if (!q) throw ConditionFailed("D(r) = g*P(f) != 0", "D(r) = " + to_string(dr) + " not divisible by g");
  auto P = express_in_powers(*q, f);
  if (!P) throw ConditionFailed("D(r) = g*P(f) != 0", "D(r)/g = " + to_string(*q) + " is not a polynomial in f");
  Derivation jfg = jacobian3(f, g);
  Rational c{0};
  for (std::size_t i = 0; i < d.ring()->arity() && is_zero(c); ++i)
    if (!jfg.image(i).is_zero()) c = d.image(i).leading().second / jfg.image(i).leading().second;
  if (is_zero(c) || Polynomial::constant(d.ring(), c) * jfg != d) throw ConditionFailed("D = c*Jac(f, g, .)", "Jac(f, g, .) = " + to_string(jfg));
  Polynomial rem = normal_form_mod_principal(r, g);
  if (rem.is_zero()) throw ConditionFailed("r not in gB", "r = " + to_string(r));
  PhiResult phi = minimal_phi_search(f, g, r, caps.deg_cap, caps.coeff_deg_cap);
  Polynomial h = exact_div(phi.value, g);
  Derivation delta = jacobian3(f, h);
  Polynomial pf = evaluate_univariate(*P, f);
  Polynomial lhs = delta(r);
  if (lhs != -(h * pf) * (1 / c)) throw ConditionFailed("Delta(r) = -h*P(f)/c", to_string(lhs));
  auto nil = certify_lnd(delta, caps.nil_cap);
  return {*P, phi, h, delta, nil, c};
}

// ---- family E(m, n, F) ---------------------------------------------------

struct FamilyParamsE {
  unsigned m = 2;
  unsigned n = 1;
  Polynomial F;  // in k[t1, t2]
};

inline void validate(const FamilyParamsE& p) {
  if (p.m < 2) throw InvalidArgument("m must be at least 2");
  if (p.n < 1) throw InvalidArgument("n must be at least 1");
  const Ring& ring = p.F.ring();
  if (!ring || ring->arity() != 2) throw InvalidArgument("F must be a polynomial in (t1, t2)");
  Polynomial f0 = evaluate(p.F, {Polynomial::variable(ring, 0), Polynomial(ring)}, ring);
  if (f0.is_constant()) throw ConditionFailed("F(t1, 0) not constant", "F(t1, 0) = " + to_string(f0));
}

struct FamilyE {
  FamilyParamsE params;
  Polynomial f, g, r, h;
  Derivation E;
  NilpotencyCertificate nilpotency;
};

inline Polynomial family_f(unsigned m) {
  const Ring& R = ring_xyz();
  return Polynomial::variable(R, 0) * Polynomial::variable(R, 2) - Polynomial::variable(R, 1).pow(m);
}

inline FamilyE family_E(const FamilyParamsE& params, unsigned cap = kDefaultCap) {
  validate(params);
  const Ring& R = ring_xyz();
  Polynomial x = Polynomial::variable(R, 0), y = Polynomial::variable(R, 1);
  Polynomial f = family_f(params.m);
  Polynomial Fxf = evaluate(params.F, {x, f}, R);
  Polynomial r = x * Fxf + y * f.pow(params.n);
  Polynomial h = exact_div(f.pow(params.m * params.n + 1) + r.pow(params.m), x);
  Derivation E = jacobian3(f, h);
  auto nil = certify_lnd(E, cap);
  Polynomial er = E(r);
  if (er != -(h * f.pow(params.n))) throw ConditionFailed("E(r) = -h*f^n", to_string(er));
  auto irr = is_irreducible(E);
  if (!irr.irreducible) throw ConditionFailed("E irreducible", to_string(irr.gcd));
  return {params, f, x, r, h, E, nil};
}

// ---- Example family (r1, r2, h1, h2) ----------------------------------------

struct FamilyParamsEx1 {
  Polynomial r1, r2;  // in k[x]
  Polynomial h1, h2;  // in k[x, t]
};

inline void validate(const FamilyParamsEx1& p) {
  for (const auto* r : {&p.r1, &p.r2}) {
    if (r->is_zero()) throw InvalidArgument("r1, r2 must be nonzero");
    if (r->ring()->arity() != 1) throw InvalidArgument("r1, r2 must be polynomials in x");
  }
  Polynomial g = gcd_poly(p.r1, p.r2);
  if (g.is_constant()) throw ConditionFailed("gcd(r1, r2) nonconstant", to_string(g));
  for (const auto* h : {&p.h1, &p.h2}) {
    if (h->ring()->arity() != 2) throw InvalidArgument("h1, h2 must be polynomials in (x, t)");
    int deg = h->degree_in(1);
    if (deg < 2) throw ConditionFailed("h = a*t^k + ... + b(x)*t^2 with k >= 2", to_string(*h));
    for (const auto& [m, c] : h->terms()) {
      if (m[1] < 2) throw ConditionFailed("h has no t^1 or t^0 terms", to_string(*h));
      if (static_cast<int>(m[1]) == deg && m[0] != 0)
        throw ConditionFailed("leading t-coefficient of h is a rational", to_string(*h));
    }
  }
}

struct FamilyEx1 {
  FamilyParamsEx1 params;
  Derivation D;
  MCChain chain;
  Polynomial f, g;
  PlaneAutomorphism alpha;
  DecompositionWord word;
  NilpotencyCertificate nilpotency;
};

inline FamilyEx1 family_ex1(const FamilyParamsEx1& p, unsigned cap = kDefaultCap) {
  validate(p);
  const Ring& R = ring_xyz();
  Polynomial x = Polynomial::variable(R, 0), y = Polynomial::variable(R, 1), z = Polynomial::variable(R, 2);
  auto lift_x = [&](const Polynomial& q) { return evaluate(q, {x}, R); };
  auto lift_xt = [&](const Polynomial& q, const Polynomial& t) { return evaluate(q, {x, t}, R); };
  Polynomial r1 = lift_x(p.r1), r2 = lift_x(p.r2);
  Polynomial sigma = r1 * z - lift_xt(p.h1, y);
  Polynomial f = r2 * y - lift_xt(p.h2, sigma);
  Polynomial h1p = partial_derivative(p.h1, std::size_t{1}), h2p = partial_derivative(p.h2, std::size_t{1});
  Polynomial h2s = lift_xt(h2p, sigma);
  Derivation D(R, {Polynomial(R), h2s * r1, r2 + h2s * lift_xt(h1p, y)});
  auto nil = certify_lnd(D, cap);
  Polynomial df = D(f);
  if (!df.is_zero()) throw ConditionFailed("D(f) = 0", to_string(df));
  Polynomial dg = D(sigma);
  if (dg != r1 * r2) throw ConditionFailed("D(g) = r1*r2", to_string(dg));

  DecompositionWord word{Field::Qx, {}};
  TriangularFactor b1, b2;
  b1.v = to_plane(r1).constant_value();
  b1.F = -to_plane(lift_xt(p.h1, y));
  b2.v = to_plane(r2).constant_value();
  b2.F = -to_plane(lift_xt(p.h2, y));
  word.triangular = {b1, b2, TriangularFactor{}};
  PlaneAutomorphism alpha = recompose(word);
  if (alpha.y != to_plane(f) || alpha.z != to_plane(sigma))
    throw ConditionFailed("alpha = (f, g)", to_string(alpha));
  MCChain chain = mc_chain_from_word(word, R);
  if (!equivalent_check(chain.derivations.back(), D))
    throw ConditionFailed("last chain element equivalent to D", to_string(chain.derivations.back()));
  return {p, D, chain, f, sigma, alpha, word, nil};
}

}  // namespace lnd
