#pragma once

// Independent reference arithmetic for tests: polynomials as plain
// std::map<exponent vector, rational> with schoolbook operations.

#include <map>
#include <random>
#include <vector>

#include "lnd/lnd.hpp"

namespace oracle {

using lnd::Rational;
using Exps = std::vector<int>;
using Naive = std::map<Exps, Rational>;

inline void clean(Naive& p) {
  for (auto it = p.begin(); it != p.end();) it = (it->second == 0) ? p.erase(it) : std::next(it);
}

inline Naive from(const lnd::Polynomial& p) {
  Naive n;
  for (const auto& [m, c] : p.terms()) {
    Exps e(p.ring()->arity());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = m[i];
    n[e] = c;
  }
  return n;
}

inline lnd::Polynomial to(const Naive& n, const lnd::Ring& ring) {
  std::vector<lnd::Polynomial::Term> terms;
  for (const auto& [e, c] : n) {
    lnd::Monomial m;
    for (std::size_t i = 0; i < e.size(); ++i) m.set(i, e[i]);
    terms.emplace_back(m, c);
  }
  return lnd::Polynomial::from_terms(ring, terms);
}

inline Naive add(Naive a, const Naive& b, int sign = 1) {
  for (const auto& [e, c] : b) a[e] += sign * c;
  clean(a);
  return a;
}

inline Naive mul(const Naive& a, const Naive& b) {
  Naive r;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      Exps e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r[e] += ca * cb;
    }
  clean(r);
  return r;
}

inline Naive power(const Naive& a, int e, std::size_t arity) {
  Naive r{{Exps(arity, 0), Rational(1)}};
  for (int i = 0; i < e; ++i) r = mul(r, a);
  return r;
}

inline Naive diff(const Naive& a, std::size_t var) {
  Naive r;
  for (const auto& [e, c] : a) {
    if (e[var] == 0) continue;
    Exps d = e;
    d[var] -= 1;
    r[d] += c * e[var];
  }
  clean(r);
  return r;
}

// Random polynomial with small integer coefficients.
inline lnd::Polynomial random_poly(std::mt19937& rng, const lnd::Ring& ring, int max_deg, int max_terms) {
  std::uniform_int_distribution<int> nterms(1, max_terms), coef(-5, 5), deg(0, max_deg);
  Naive n;
  int k = nterms(rng);
  for (int t = 0; t < k; ++t) {
    Exps e(ring->arity(), 0);
    int budget = deg(rng);
    for (int s = 0; s < budget; ++s) e[std::uniform_int_distribution<int>(0, ring->arity() - 1)(rng)]++;
    n[e] += coef(rng);
  }
  clean(n);
  if (n.empty()) n[Exps(ring->arity(), 0)] = 1;
  return to(n, ring);
}

}  // namespace oracle
