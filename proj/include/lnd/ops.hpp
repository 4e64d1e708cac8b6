#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lnd/errors.hpp"
#include "lnd/format.hpp"
#include "lnd/polynomial.hpp"
#include "lnd/rational_function.hpp"

namespace lnd {

template <class C>
struct DivisionResult {
  BasicPolynomial<C> quotient;
  BasicPolynomial<C> remainder;
};

// Multivariate division by a single divisor under graded lex. The remainder
// has no term divisible by the leading monomial of g, so it is zero exactly
// when g divides p.
template <class C>
DivisionResult<C> divide(const BasicPolynomial<C>& p, const BasicPolynomial<C>& g) {
  require_same_ring(p.ring(), g.ring());
  if (g.is_zero()) throw InvalidArgument("division by zero polynomial");
  using Term = typename BasicPolynomial<C>::Term;
  const auto& [lm, lc] = g.leading();
  const C inv = C(1) / lc;

  if (g.size() == 1) {
    std::vector<Term> q, r;
    for (const auto& [m, c] : p.terms()) {
      if (lm.divides(m)) q.emplace_back(m / lm, C(c * inv));
      else r.emplace_back(m, c);
    }
    return {BasicPolynomial<C>::from_sorted_terms(p.ring(), std::move(q)),
            BasicPolynomial<C>::from_sorted_terms(p.ring(), std::move(r))};
  }

  std::map<Monomial, C, std::greater<Monomial>> work;
  for (const auto& [m, c] : p.terms()) work.emplace_hint(work.end(), m, c);
  std::vector<Term> q, r;
  while (!work.empty()) {
    auto it = work.begin();
    Monomial m = it->first;
    C c = std::move(it->second);
    work.erase(it);
    if (!lm.divides(m)) {
      r.emplace_back(m, std::move(c));
      continue;
    }
    Monomial qm = m / lm;
    C qc = c * inv;
    for (std::size_t k = 1; k < g.size(); ++k) {
      const auto& [gm, gc] = g.terms()[k];
      Monomial t = gm * qm;
      C delta = gc * qc;
      auto [pos, inserted] = work.try_emplace(t, -delta);
      if (!inserted) {
        pos->second -= delta;
        if (detail::coeff_is_zero(pos->second)) work.erase(pos);
      }
    }
    q.emplace_back(qm, std::move(qc));
  }
  return {BasicPolynomial<C>::from_sorted_terms(p.ring(), std::move(q)),
          BasicPolynomial<C>::from_sorted_terms(p.ring(), std::move(r))};
}

template <class C>
BasicPolynomial<C> normal_form_mod_principal(const BasicPolynomial<C>& p, const BasicPolynomial<C>& g) {
  return divide(p, g).remainder;
}

template <class C>
BasicPolynomial<C> exact_div(const BasicPolynomial<C>& a, const BasicPolynomial<C>& b) {
  auto res = divide(a, b);
  if (!res.remainder.is_zero()) throw NotDivisible(to_string(a) + " by " + to_string(b));
  return std::move(res.quotient);
}

template <class C>
std::optional<BasicPolynomial<C>> try_exact_div(const BasicPolynomial<C>& a, const BasicPolynomial<C>& b) {
  auto res = divide(a, b);
  if (!res.remainder.is_zero()) return std::nullopt;
  return std::move(res.quotient);
}

// Partial derivative in a monomial variable, or (for Q(x) rings) in the
// coefficient variable, where each coefficient is differentiated.
template <class C>
BasicPolynomial<C> partial_derivative(const BasicPolynomial<C>& p, std::size_t var) {
  using Term = typename BasicPolynomial<C>::Term;
  std::vector<Term> out;
  for (const auto& [m, c] : p.terms()) {
    unsigned e = m[var];
    if (!e) continue;
    Monomial d = m;
    d.set(var, e - 1);
    out.emplace_back(d, C(c * C(static_cast<int>(e))));
  }
  return BasicPolynomial<C>::from_terms(p.ring(), std::move(out));
}

inline PlanePolynomial coefficient_derivative(const PlanePolynomial& p) {
  std::vector<PlanePolynomial::Term> out;
  for (const auto& [m, c] : p.terms()) out.emplace_back(m, c.derivative());
  return PlanePolynomial::from_terms(p.ring(), std::move(out));
}

template <class C>
BasicPolynomial<C> partial_derivative(const BasicPolynomial<C>& p, const std::string& var) {
  if (auto i = p.ring()->index_of(var)) return partial_derivative(p, *i);
  if constexpr (std::is_same_v<C, RationalFunction>) {
    if (p.ring()->coeff_var && *p.ring()->coeff_var == var) return coefficient_derivative(p);
  }
  throw UnknownVariable(var);
}

// Evaluates p with variable i replaced by images[i]; all images live in
// `target`. Powers are cached per variable.
template <class C>
BasicPolynomial<C> evaluate(const BasicPolynomial<C>& p, const std::vector<BasicPolynomial<C>>& images,
                            const Ring& target) {
  const std::size_t n = p.ring()->arity();
  if (images.size() != n) throw InvalidArgument("wrong number of substitution images");
  for (const auto& im : images) require_same_ring(im.ring(), target);
  std::vector<std::vector<BasicPolynomial<C>>> powers(n);
  auto power = [&](std::size_t i, unsigned e) -> const BasicPolynomial<C>& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(BasicPolynomial<C>::constant(target, C(1)));
    while (cache.size() <= e) cache.push_back(cache.back() * images[i]);
    return cache[e];
  };
  BasicPolynomial<C> result(target);
  std::vector<BasicPolynomial<C>> partials;
  for (const auto& [m, c] : p.terms()) {
    BasicPolynomial<C> t = BasicPolynomial<C>::constant(target, c);
    for (std::size_t i = 0; i < n && !t.is_zero(); ++i)
      if (m[i]) t = t * power(i, m[i]);
    partials.push_back(std::move(t));
  }
  // pairwise summation keeps merges balanced
  while (partials.size() > 1) {
    std::vector<BasicPolynomial<C>> next;
    for (std::size_t i = 0; i + 1 < partials.size(); i += 2) next.push_back(partials[i] + partials[i + 1]);
    if (partials.size() % 2) next.push_back(std::move(partials.back()));
    partials = std::move(next);
  }
  return partials.empty() ? result : std::move(partials[0]);
}

// Simultaneous substitution of some variables; unbound variables stay.
template <class C>
BasicPolynomial<C> substitute(const BasicPolynomial<C>& p, const std::map<std::string, BasicPolynomial<C>>& bindings) {
  const Ring& ring = p.ring();
  std::vector<BasicPolynomial<C>> images;
  for (std::size_t i = 0; i < ring->arity(); ++i) images.push_back(BasicPolynomial<C>::variable(ring, i));
  for (const auto& [name, value] : bindings) {
    images[ring->require(name)] = value;
    require_same_ring(value.ring(), ring);
  }
  return evaluate(p, images, ring);
}

// Sum of the terms of largest weighted degree.
struct WeightedForm {
  Polynomial form;
  long degree;
};

inline WeightedForm weighted_leading_form(const Polynomial& p, const std::vector<long>& weights) {
  if (p.is_zero()) throw InvalidArgument("weighted leading form of zero polynomial");
  bool any = false;
  for (long w : weights) {
    if (w < 0) throw InvalidArgument("negative weight");
    any = any || w > 0;
  }
  if (!any) throw InvalidArgument("all weights are zero");
  auto wdeg = [&](const Monomial& m) {
    long d = 0;
    for (std::size_t i = 0; i < weights.size() && i < p.ring()->arity(); ++i) d += weights[i] * m[i];
    return d;
  };
  long best = -1;
  for (const auto& t : p.terms()) best = std::max(best, wdeg(t.first));
  std::vector<Polynomial::Term> out;
  for (const auto& t : p.terms())
    if (wdeg(t.first) == best) out.push_back(t);
  return {Polynomial::from_sorted_terms(p.ring(), std::move(out)), best};
}

// Weights (p_w, q_w) for y and z of k[x,y,z]; x has weight 0.
inline WeightedForm weighted_leading_form(const Polynomial& p, long pw, long qw) {
  const auto& ring = *p.ring();
  std::vector<long> w(ring.arity(), 0);
  w[ring.require("y")] = pw;
  w[ring.require("z")] = qw;
  return weighted_leading_form(p, w);
}

}  // namespace lnd
