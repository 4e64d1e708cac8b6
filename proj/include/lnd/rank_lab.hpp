#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lnd/constructions.hpp"
#include "lnd/derivation.hpp"
#include "lnd/errors.hpp"
#include "lnd/gcd.hpp"
#include "lnd/linear_solve.hpp"
#include "lnd/ops.hpp"

namespace lnd {

struct Check {
  std::string name;
  bool pass;
  std::string witness;
};

inline bool all_pass(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

inline void throw_first_failure(const std::vector<Check>& checks) {
  for (const auto& c : checks)
    if (!c.pass) throw ConditionFailed(c.name, c.witness);
}

// Symbols used in localization expressions: kernel elements f, h, the slice
// r, and the coordinates x, y, z once they have been recovered.
inline const Ring& ring_symbols() {
  static const Ring r = make_ring({"f", "h", "r", "x", "y", "z"});
  return r;
}

// ---- non-triangularizability ---------------------------------------------

struct NonTriangularizabilityCertificate {
  Polynomial f, g;
  long pw = 1, qw = 0;
  std::vector<Check> checks;
  bool valid() const { return checks.size() == 5 && all_pass(checks); }
};

inline NonTriangularizabilityCertificate evaluate_non_triangularizable(const Polynomial& f, const Polynomial& g,
                                                                       long pw, long qw) {
  if (pw < 0 || qw < 0 || (pw == 0 && qw == 0)) throw InvalidArgument("weights must be nonnegative and not both zero");
  NonTriangularizabilityCertificate cert{f, g, pw, qw, {}};
  auto& cs = cert.checks;
  {
    auto lf = linear_part_and_content(f), lg = linear_part_and_content(g);
    auto cf = linear_part_and_content(lf.linear), cg = linear_part_and_content(lg.linear);
    if (cf.zero || cg.zero) {
      cs.push_back({"gcd(d(L(f)), d(L(g))) nonconstant", false, cf.zero ? "L(f) = 0" : "L(g) = 0"});
    } else {
      Polynomial gg = gcd_poly(cf.content, cg.content);
      cs.push_back({"gcd(d(L(f)), d(L(g))) nonconstant", !gg.is_constant(), to_string(gg)});
    }
  }
  {
    auto dg = linear_part_and_content(g);
    cs.push_back({"g primitive", !dg.zero && dg.content.is_constant(), dg.zero ? "g = 0" : to_string(dg.content)});
  }
  {
    const Ring& R = g.ring();
    Polynomial g0 = substitute(g, {{"y", Polynomial(R)}, {"z", Polynomial(R)}});
    cs.push_back({"g(x,0,0) = 0", g0.is_zero(), to_string(g0)});
  }
  if (f.is_zero() || g.is_zero()) {
    cs.push_back({"leading form of f primitive", false, "zero input"});
    cs.push_back({"deg of leading form of f > deg of leading form of g", false, "zero input"});
    return cert;
  }
  auto fb = weighted_leading_form(f, pw, qw), gb = weighted_leading_form(g, pw, qw);
  auto dfb = linear_part_and_content(fb.form);
  cs.push_back({"leading form of f primitive", dfb.content.is_constant(),
                "leading form " + to_string(fb.form) + ", content " + to_string(dfb.content)});
  cs.push_back({"deg of leading form of f > deg of leading form of g", fb.degree > gb.degree,
                std::to_string(fb.degree) + " vs " + std::to_string(gb.degree)});
  return cert;
}

// Certifies that no k[x]-automorphism sends y to an element of the shape
// u1(v0*g + F0(f)), hence the associated derivation is not triangularizable.
inline NonTriangularizabilityCertificate non_triangularizable_check(const Polynomial& f, const Polynomial& g, long pw,
                                                                    long qw) {
  auto cert = evaluate_non_triangularizable(f, g, pw, qw);
  throw_first_failure(cert.checks);
  return cert;
}

// ---- localization steps ----------------------------------------------------

// target * divisor^power = numerator, divisor and numerator in ring_symbols().
struct LocalizationStep {
  std::string target;
  Polynomial divisor;
  unsigned power = 1;
  Polynomial numerator;
};

struct Bindings {
  Polynomial f, h, r;
};

inline Polynomial bind_symbols(const Polynomial& expr, const Bindings& b) {
  const Ring& R = b.f.ring();
  return evaluate(expr, {b.f, b.h, b.r, Polynomial::variable(R, "x"), Polynomial::variable(R, "y"),
                         Polynomial::variable(R, "z")},
                  R);
}

struct MembershipResult {
  bool holds;
  Polynomial difference;  // target*divisor^power - numerator
};

inline MembershipResult localized_membership_check(const std::string& target, const Polynomial& numerator,
                                                   const Polynomial& divisor, unsigned power, const Bindings& b) {
  const Ring& R = b.f.ring();
  Polynomial t = Polynomial::variable(R, target);
  Polynomial lhs = t * bind_symbols(divisor, b).pow(power);
  Polynomial diff = lhs - bind_symbols(numerator, b);
  return {diff.is_zero(), diff};
}

inline unsigned binomial(unsigned n, unsigned k) {
  unsigned long long r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return static_cast<unsigned>(r);
}

// x*h = f^(mn+1) + r^m, y*f^n = r - x*F(x,f),
// z*f^(mn) = h - sum_{k<m} C(m,k) x^(m-1-k) F(x,f)^(m-k) y^k f^(nk).
inline std::vector<LocalizationStep> family_localization_steps(const FamilyParamsE& p) {
  const Ring& S = ring_symbols();
  Polynomial f = Polynomial::variable(S, "f"), h = Polynomial::variable(S, "h"), r = Polynomial::variable(S, "r");
  Polynomial x = Polynomial::variable(S, "x"), y = Polynomial::variable(S, "y");
  Polynomial F = evaluate(p.F, {x, f}, S);
  const unsigned m = p.m, n = p.n;
  Polynomial tail(S);
  for (unsigned k = 0; k < m; ++k)
    tail += x.pow(m - 1 - k) * F.pow(m - k) * y.pow(k) * f.pow(n * k) * Rational(binomial(m, k));
  return {
      {"x", h, 1, f.pow(m * n + 1) + r.pow(m)},
      {"y", f, n, r - x * F},
      {"z", f, m * n, h - tail},
  };
}

// ---- rank 3 ------------------------------------------------------------------

struct DivisorCandidate {
  Polynomial base;
  unsigned max_exponent = 1;
};

struct CandidateRecord {
  std::vector<unsigned> exponents;
  std::string q;
  bool divides_v = false;
  bool infeasible = false;
  std::string proof;  // "direct ..." or "implied by ..."
};

struct Rank3Certificate {
  Derivation E;
  Polynomial f, h, r, v;
  std::vector<DivisorCandidate> candidates;
  unsigned p_deg_cap = 0;
  std::vector<LocalizationStep> steps;
  Polynomial v_expr;                        // v as a polynomial in symbols f, h
  std::vector<std::string> univariate_tested;
  std::vector<CandidateRecord> minimality;
  std::optional<NilpotencyCertificate> nilpotency;
  std::vector<Check> checks;
  bool valid() const { return all_pass(checks); }
};

namespace detail {

// v = V(f, h) over products with i*deg f + j*deg h <= deg v.
inline std::optional<Polynomial> express_in_fh(const Polynomial& v, const Polynomial& f, const Polynomial& h) {
  const Ring& S = ring_symbols();
  if (v.is_zero()) return Polynomial(S);
  int df = f.total_degree(), dh = h.total_degree(), dv = v.total_degree();
  if (df <= 0 || dh <= 0) return std::nullopt;
  std::vector<Polynomial> basis;
  std::vector<std::pair<unsigned, unsigned>> ex;
  std::vector<Polynomial> fp{Polynomial::constant(f.ring(), 1)};
  for (int i = 1; i * df <= dv; ++i) fp.push_back(fp.back() * f);
  Polynomial hp = Polynomial::constant(f.ring(), 1);
  for (int j = 0; j * dh <= dv; ++j) {
    for (int i = 0; i * df + j * dh <= dv; ++i) {
      basis.push_back(fp[i] * hp);
      ex.emplace_back(i, j);
    }
    hp = hp * h;
  }
  auto sol = solve_in_span(v, basis);
  if (!sol.feasible) return std::nullopt;
  Polynomial F = Polynomial::variable(S, "f"), H = Polynomial::variable(S, "h");
  Polynomial V(S);
  for (std::size_t k = 0; k < basis.size(); ++k)
    if (!is_zero(sol.coefficients[k])) V += F.pow(ex[k].first) * H.pow(ex[k].second) * sol.coefficients[k];
  return V;
}

inline bool uses_only(const Polynomial& p, std::initializer_list<const char*> names) {
  const Ring& R = p.ring();
  for (std::size_t i = 0; i < R->arity(); ++i) {
    if (!p.uses_variable(i)) continue;
    if (std::find_if(names.begin(), names.end(), [&](const char* n) { return R->vars[i] == n; }) == names.end())
      return false;
  }
  return true;
}

// Is V a polynomial in a single variable of k[F,H] from the tested family?
// Returns the witness variable when it is.
inline std::optional<std::string> univariate_witness(const Polynomial& V, std::vector<std::string>& tested) {
  const Ring& S = V.ring();
  Polynomial F = Polynomial::variable(S, "f"), H = Polynomial::variable(S, "h");
  tested.push_back("f");
  tested.push_back("h");
  if (V.is_constant()) return std::string("constant");
  if (uses_only(V, {"f"})) return std::string("f");
  if (uses_only(V, {"h"})) return std::string("h");
  // V in k[F + beta*H] forces the top form to be c*(F + beta*H)^e
  int e = V.total_degree();
  Monomial fe = Monomial::variable(0, e);
  Monomial fe1h = Monomial::variable(0, e - 1) * Monomial::variable(1, 1);
  Rational c = V.coefficient(fe);
  if (is_zero(c)) return std::nullopt;
  Rational beta = V.coefficient(fe1h) / (c * e);
  if (is_zero(beta)) return std::nullopt;
  Polynomial w = F + H * beta;
  tested.push_back(to_string(w));
  std::vector<Polynomial> basis{Polynomial::constant(S, 1)};
  for (int k = 1; k <= e; ++k) basis.push_back(basis.back() * w);
  if (solve_in_span(V, basis).feasible) return to_string(w);
  return std::nullopt;
}

}  // namespace detail

struct Rank3Options {
  unsigned nil_cap = kDefaultCap;
  unsigned p_deg_cap = 0;  // 0: total degree of r
};

inline Rank3Certificate evaluate_rank3(const Derivation& E, const Polynomial& f, const Polynomial& h,
                                       const Polynomial& r, const Polynomial& v,
                                       const std::vector<DivisorCandidate>& candidates,
                                       const std::vector<LocalizationStep>& steps, const Rank3Options& opt = {}) {
  Rank3Certificate cert;
  cert.E = E;
  cert.f = f;
  cert.h = h;
  cert.r = r;
  cert.v = v;
  cert.candidates = candidates;
  cert.steps = steps;
  cert.p_deg_cap = opt.p_deg_cap ? opt.p_deg_cap : static_cast<unsigned>(std::max(r.total_degree(), 0));
  cert.v_expr = Polynomial(ring_symbols());
  auto& cs = cert.checks;

  try {
    cert.nilpotency = certify_lnd(E, opt.nil_cap);
    cs.push_back({"E locally nilpotent", true, "cap " + std::to_string(opt.nil_cap)});
  } catch (const CapExceeded& e) {
    cs.push_back({"E locally nilpotent", false, e.what()});
  }
  if (E.is_zero()) {
    cs.push_back({"E irreducible", false, "E = 0"});
  } else {
    auto irr = is_irreducible(E);
    cs.push_back({"E irreducible", irr.irreducible, to_string(irr.gcd)});
  }

  // (i)
  Polynomial ef = E(f), eh = E(h), er = E(r);
  std::string w1;
  bool ok1 = ef.is_zero() && eh.is_zero() && er == v;
  if (!ef.is_zero()) w1 = "E(f) = " + to_string(ef);
  else if (!eh.is_zero()) w1 = "E(h) = " + to_string(eh);
  else if (er != v) w1 = "E(r) = " + to_string(er);
  std::optional<Polynomial> V;
  if (ok1) {
    V = detail::express_in_fh(v, f, h);
    if (!V) {
      ok1 = false;
      w1 = "v is not in the span of the products f^i*h^j";
    } else {
      cert.v_expr = *V;
      w1 = "v = " + to_string(*V);
    }
  }
  cs.push_back({"(i) E(f) = E(h) = 0 and E(r) = v(f,h)", ok1, w1});

  // (ii)
  if (V) {
    auto uw = detail::univariate_witness(*V, cert.univariate_tested);
    std::string tested;
    for (const auto& t : cert.univariate_tested) tested += (tested.empty() ? "" : ", ") + t;
    cs.push_back({"(ii) v not univariate", !uw.has_value(),
                  uw ? "v is a polynomial in " + *uw : "checked variables: " + tested});
  } else {
    cs.push_back({"(ii) v not univariate", false, "requires (i)"});
  }

  // (iii)
  {
    bool ok3 = !v.is_zero();
    std::string w3 = ok3 ? "" : "v = 0";
    std::vector<std::vector<unsigned>> exps{{}};
    for (const auto& c : candidates) {
      std::vector<std::vector<unsigned>> next;
      for (const auto& e : exps)
        for (unsigned k = 0; k <= c.max_exponent; ++k) {
          auto n = e;
          n.push_back(k);
          next.push_back(n);
        }
      exps = std::move(next);
    }
    struct Cand {
      std::vector<unsigned> e;
      Polynomial q;
    };
    std::vector<Cand> cands;
    for (const auto& e : exps) {
      Polynomial q = Polynomial::constant(v.ring(), 1);
      for (std::size_t i = 0; i < e.size(); ++i) q = q * candidates[i].base.pow(e[i]);
      if (q.is_constant()) continue;
      cands.push_back({e, q});
    }
    std::stable_sort(cands.begin(), cands.end(),
                     [](const Cand& a, const Cand& b) { return a.q.total_degree() < b.q.total_degree(); });
    auto name = [&](const std::vector<unsigned>& e) {
      std::string s;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (!e[i]) continue;
        if (!s.empty()) s += "*";
        s += "(" + to_string(candidates[i].base) + ")";
        if (e[i] > 1) s += "^" + std::to_string(e[i]);
      }
      return s;
    };
    auto divides_exps = [](const std::vector<unsigned>& a, const std::vector<unsigned>& b) {
      for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
      return true;
    };
    for (const auto& c : cands) {
      if (!ok3) break;
      CandidateRecord rec{c.e, name(c.e), false, false, ""};
      rec.divides_v = try_exact_div(v, c.q).has_value();
      if (!rec.divides_v) {
        rec.proof = "does not divide v";
        cert.minimality.push_back(rec);
        continue;
      }
      for (const auto& prev : cert.minimality)
        if (prev.divides_v && prev.infeasible && prev.exponents != c.e && divides_exps(prev.exponents, c.e)) {
          rec.infeasible = true;
          rec.proof = "implied by " + prev.q;
          break;
        }
      if (!rec.infeasible) {
        // r = p(f,h) mod q with p of degree <= cap in (f,h)
        const unsigned cap = cert.p_deg_cap;
        auto nf = [&](const Polynomial& p) { return normal_form_mod_principal(p, c.q); };
        Polynomial nf_f = nf(f), nf_h = nf(h);
        std::vector<Polynomial> hp{nf(Polynomial::constant(v.ring(), 1))};
        for (unsigned j = 1; j <= cap; ++j) hp.push_back(hp.back().is_zero() ? hp.back() : nf(hp.back() * nf_h));
        std::vector<Polynomial> basis;
        std::vector<std::pair<unsigned, unsigned>> ex;
        for (unsigned j = 0; j <= cap; ++j) {
          Polynomial cur = hp[j];
          for (unsigned i = 0; i + j <= cap && !cur.is_zero(); ++i) {
            basis.push_back(cur);
            ex.emplace_back(i, j);
            if (i + j < cap) cur = nf(cur * nf_f);
          }
        }
        auto sol = solve_in_span(nf(r), basis);
        rec.infeasible = !sol.feasible;
        if (rec.infeasible) {
          rec.proof = "direct: inconsistent system, " + std::to_string(basis.size()) + " unknowns, rank " +
                      std::to_string(sol.rank) + ", " + std::to_string(sol.rows) + " equations";
        } else {
          const Ring& S = ring_symbols();
          Polynomial p(S);
          for (std::size_t k = 0; k < basis.size(); ++k)
            if (!is_zero(sol.coefficients[k]))
              p += Polynomial::variable(S, "f").pow(ex[k].first) * Polynomial::variable(S, "h").pow(ex[k].second) *
                   sol.coefficients[k];
          rec.proof = "feasible: r = " + to_string(p) + " mod q";
          ok3 = false;
          w3 = "r - p in qB for q = " + rec.q + ", p = " + to_string(p);
        }
      }
      cert.minimality.push_back(rec);
    }
    if (ok3) {
      std::size_t n = 0;
      for (const auto& rec : cert.minimality) n += rec.divides_v;
      w3 = std::to_string(n) + " dividing candidates infeasible, p-degree cap " + std::to_string(cert.p_deg_cap);
    }
    cs.push_back({"(iii) r minimal local slice over the candidate lattice", ok3, w3});
  }

  // (iv)
  {
    bool ok4 = true;
    std::string w4;
    std::vector<std::string> known;
    Bindings b{f, h, r};
    for (const auto& s : steps) {
      auto fail = [&](const std::string& why) {
        ok4 = false;
        w4 = s.target + ": " + why;
      };
      if (s.target != "x" && s.target != "y" && s.target != "z") {
        fail("unknown target");
        break;
      }
      bool allowed = true;
      for (std::size_t i = 3; i < 6; ++i)
        if (s.numerator.uses_variable(i) &&
            std::find(known.begin(), known.end(), ring_symbols()->vars[i]) == known.end())
          allowed = false;
      if (!allowed || !detail::uses_only(s.divisor, {"f", "h"})) {
        fail("expression uses a coordinate that is not yet recovered");
        break;
      }
      if (V) {
        bool divides_power = false;
        Polynomial vp = *V;
        for (int k = 1; k <= std::max(1, s.divisor.total_degree()) && !divides_power; ++k, vp = vp * *V)
          divides_power = try_exact_div(vp, s.divisor).has_value();
        if (!divides_power) {
          fail("divisor " + to_string(s.divisor) + " does not divide a power of v");
          break;
        }
      }
      auto mr = localized_membership_check(s.target, s.numerator, s.divisor, s.power, b);
      if (!mr.holds) {
        fail("identity fails, difference " + to_string(mr.difference));
        break;
      }
      known.push_back(s.target);
    }
    if (ok4)
      for (const char* t : {"x", "y", "z"})
        if (std::find(known.begin(), known.end(), t) == known.end()) {
          ok4 = false;
          w4 = std::string("no expression for ") + t;
          break;
        }
    if (ok4) {
      for (const auto& s : steps)
        w4 += (w4.empty() ? "" : "; ") + s.target + "*(" + to_string(s.divisor) + ")^" + std::to_string(s.power) + " = " +
              to_string(s.numerator);
    }
    cs.push_back({"(iv) x, y, z in k[f,h,r,1/v]", ok4, w4});
  }
  return cert;
}

inline Rank3Certificate rank3_certify(const Derivation& E, const Polynomial& f, const Polynomial& h,
                                      const Polynomial& r, const Polynomial& v,
                                      const std::vector<DivisorCandidate>& candidates,
                                      const std::vector<LocalizationStep>& steps, const Rank3Options& opt = {}) {
  auto cert = evaluate_rank3(E, f, h, r, v, candidates, steps, opt);
  throw_first_failure(cert.checks);
  return cert;
}

inline std::vector<DivisorCandidate> default_candidates(const Polynomial& f, const Polynomial& h, unsigned n) {
  return {{f, n}, {h, 1}};
}

// Rank-3 certificate for the family member E(m, n, F).
inline Rank3Certificate family_rank3(const FamilyE& fam, const Rank3Options& opt = {}) {
  Polynomial v = -(fam.h * fam.f.pow(fam.params.n));
  return rank3_certify(fam.E, fam.f, fam.h, fam.r, v, default_candidates(fam.f, fam.h, fam.params.n),
                       family_localization_steps(fam.params), opt);
}

// Recognizes family data: g = x, f = xz - y^m, P = t^n and r = x*F(x,f) + y*f^n.
inline std::optional<FamilyParamsE> detect_family_E(const Polynomial& f, const Polynomial& g, const Polynomial& r,
                                                     const Polynomial& P) {
  const Ring& R = f.ring();
  if (!same_ring(R, ring_xyz())) return std::nullopt;
  if (g != Polynomial::variable(R, 0)) return std::nullopt;
  int m = f.degree_in(1);
  if (m < 2 || f != family_f(static_cast<unsigned>(m))) return std::nullopt;
  if (P.size() != 1 || P.leading().second != 1) return std::nullopt;
  unsigned n = P.leading().first[0];
  if (n < 1) return std::nullopt;
  auto q = try_exact_div(r - Polynomial::variable(R, 1) * f.pow(n), g);
  if (!q) return std::nullopt;
  // q = F(x, f)
  int dq = q->total_degree();
  std::vector<Polynomial> basis;
  std::vector<std::pair<unsigned, unsigned>> ex;
  Polynomial x = Polynomial::variable(R, 0);
  for (int b = 0; b * m <= std::max(dq, 0); ++b)
    for (int a = 0; a + b * m <= std::max(dq, 0); ++a) {
      basis.push_back(x.pow(a) * f.pow(b));
      ex.emplace_back(a, b);
    }
  auto sol = solve_in_span(*q, basis);
  if (!sol.feasible) return std::nullopt;
  const Ring& T = ring_t1t2();
  Polynomial F(T);
  for (std::size_t k = 0; k < basis.size(); ++k)
    if (!is_zero(sol.coefficients[k]))
      F += Polynomial::variable(T, 0).pow(ex[k].first) * Polynomial::variable(T, 1).pow(ex[k].second) *
           sol.coefficients[k];
  FamilyParamsE p{static_cast<unsigned>(m), n, F};
  try {
    validate(p);
  } catch (const Error&) {
    return std::nullopt;
  }
  return p;
}

struct LscorResult {
  LocalSlice slice;
  Rank3Certificate certificate;
};

// Local slice construction followed by the rank-3 certificate with
// v = -h*P(f)/c and candidates {f^c h^d : c <= 2 deg P, d <= 1}.
inline LscorResult lscor_certify(const Derivation& D, const Polynomial& f, const Polynomial& g, const Polynomial& r,
                                 const SliceCaps& caps = {},
                                 std::optional<std::vector<LocalizationStep>> steps = std::nullopt,
                                 const Rank3Options& opt = {}) {
  LocalSlice ls = local_slice_construction(D, f, g, r, caps);
  auto irr = is_irreducible(ls.delta);
  if (!irr.irreducible) throw ConditionFailed("E irreducible", to_string(irr.gcd));
  if (!steps) {
    auto fam = detect_family_E(f, g, r, ls.P);
    if (!fam) throw InvalidArgument("localization steps are required for data outside the family");
    steps = family_localization_steps(*fam);
  }
  Polynomial v = -(ls.h * evaluate_univariate(ls.P, f)) * (1 / ls.scalar);
  unsigned degP = static_cast<unsigned>(std::max(ls.P.total_degree(), 0));
  auto cert = rank3_certify(ls.delta, f, ls.h, r, v, {{f, 2 * degP}, {ls.h, 1}}, *steps, opt);
  return {ls, cert};
}

}  // namespace lnd
