#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lnd/errors.hpp"
#include "lnd/monomial.hpp"
#include "lnd/rational.hpp"
#include "lnd/ring.hpp"

namespace lnd {

namespace detail {
template <class Coeff>
bool coeff_is_zero(const Coeff& c) {
  return is_zero(c);
}
}  // namespace detail

// Sparse multivariate polynomial with exact coefficients of type `Coeff`
// (Rational, or RationalFunction for K = Q(x)). Terms are kept sorted in
// descending graded-lex order with no zero coefficients, so structural
// equality is mathematical equality.
//
// Coeff must be constructible from int, closed under + - * and unary -,
// and provide an ADL-visible `is_zero(const Coeff&)`.
template <class Coeff>
class BasicPolynomial {
 public:
  using coeff_type = Coeff;
  using Term = std::pair<Monomial, Coeff>;

  BasicPolynomial() = default;
  explicit BasicPolynomial(Ring ring) : ring_(std::move(ring)) {}

  static BasicPolynomial constant(Ring ring, const Coeff& c) {
    BasicPolynomial p(std::move(ring));
    if (!lnd_is_zero(c)) p.terms_.emplace_back(Monomial{}, c);
    return p;
  }

  static BasicPolynomial variable(Ring ring, std::size_t index) {
    if (index >= ring->arity()) throw InvalidArgument("variable index out of range");
    BasicPolynomial p(std::move(ring));
    p.terms_.emplace_back(Monomial::variable(index), Coeff(1));
    return p;
  }

  static BasicPolynomial variable(Ring ring, const std::string& name) {
    std::size_t i = ring->require(name);
    return variable(std::move(ring), i);
  }

  static BasicPolynomial monomial(Ring ring, const Monomial& m, const Coeff& c) {
    BasicPolynomial p(std::move(ring));
    if (!lnd_is_zero(c)) p.terms_.emplace_back(m, c);
    return p;
  }

  // Builds from arbitrary (possibly unsorted, repeated, zero) terms.
  static BasicPolynomial from_terms(Ring ring, std::vector<Term> terms) {
    BasicPolynomial p(std::move(ring));
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first > b.first; });
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().first == t.first) {
        p.terms_.back().second = p.terms_.back().second + t.second;
        if (lnd_is_zero(p.terms_.back().second)) p.terms_.pop_back();
      } else if (!lnd_is_zero(t.second)) {
        p.terms_.push_back(std::move(t));
      }
    }
    return p;
  }

  // Terms already sorted descending, distinct and nonzero.
  static BasicPolynomial from_sorted_terms(Ring ring, std::vector<Term> terms) {
    BasicPolynomial p(std::move(ring));
    p.terms_ = std::move(terms);
    return p;
  }

  const Ring& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }

  Coeff constant_value() const {
    if (terms_.empty()) return Coeff(0);
    if (!is_constant()) throw InvalidArgument("polynomial is not constant");
    return terms_[0].second;
  }

  // Coefficient of the monomial 1.
  Coeff constant_term() const {
    if (!terms_.empty() && terms_.back().first.is_one()) return terms_.back().second;
    return Coeff(0);
  }

  const Term& leading() const {
    if (terms_.empty()) throw InvalidArgument("leading term of zero polynomial");
    return terms_.front();
  }

  // -1 for the zero polynomial.
  int total_degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.front().first.degree()); }

  int degree_in(std::size_t var) const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.first[var]));
    return d;
  }

  bool uses_variable(std::size_t var) const {
    for (const auto& t : terms_)
      if (t.first[var] != 0) return true;
    return false;
  }

  Coeff coefficient(const Monomial& m) const {
    for (const auto& t : terms_)
      if (t.first == m) return t.second;
    return Coeff(0);
  }

  BasicPolynomial operator-() const {
    BasicPolynomial p(*this);
    for (auto& t : p.terms_) t.second = -t.second;
    return p;
  }

  friend BasicPolynomial operator+(const BasicPolynomial& a, const BasicPolynomial& b) { return merge(a, b, false); }
  friend BasicPolynomial operator-(const BasicPolynomial& a, const BasicPolynomial& b) { return merge(a, b, true); }

  friend BasicPolynomial operator*(const BasicPolynomial& a, const BasicPolynomial& b) {
    require_same_ring(a.ring_, b.ring_);
    if (a.is_zero() || b.is_zero()) return BasicPolynomial(a.ring_);
    if (a.size() == 1) return b.mul_term(a.terms_[0].first, a.terms_[0].second);
    if (b.size() == 1) return a.mul_term(b.terms_[0].first, b.terms_[0].second);
    return multiply(a, b);
  }

  friend BasicPolynomial operator*(const BasicPolynomial& a, const Coeff& c) { return a.mul_term(Monomial{}, c); }
  friend BasicPolynomial operator*(const Coeff& c, const BasicPolynomial& a) { return a.mul_term(Monomial{}, c); }

  BasicPolynomial& operator+=(const BasicPolynomial& o) { return *this = *this + o; }
  BasicPolynomial& operator-=(const BasicPolynomial& o) { return *this = *this - o; }
  BasicPolynomial& operator*=(const BasicPolynomial& o) { return *this = *this * o; }

  BasicPolynomial mul_term(const Monomial& m, const Coeff& c) const {
    BasicPolynomial p(ring_);
    if (lnd_is_zero(c)) return p;
    p.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
      Coeff v = t.second * c;
      if (!lnd_is_zero(v)) p.terms_.emplace_back(t.first * m, std::move(v));
    }
    return p;
  }

  BasicPolynomial pow(unsigned e) const {
    BasicPolynomial result = constant(ring_, Coeff(1));
    BasicPolynomial base = *this;
    while (e) {
      if (e & 1u) result = result * base;
      e >>= 1u;
      if (e) base = base * base;
    }
    return result;
  }

  friend bool operator==(const BasicPolynomial& a, const BasicPolynomial& b) {
    if (!same_ring(a.ring_, b.ring_)) return false;
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (a.terms_[i].first != b.terms_[i].first || !(a.terms_[i].second == b.terms_[i].second)) return false;
    return true;
  }
  friend bool operator!=(const BasicPolynomial& a, const BasicPolynomial& b) { return !(a == b); }

  // Same terms reinterpreted in another ring of at least the same arity.
  BasicPolynomial with_ring(Ring ring) const {
    for (const auto& t : terms_)
      for (std::size_t i = ring->arity(); i < kMaxVars; ++i)
        if (t.first[i]) throw RingMismatch("cannot move polynomial to smaller ring " + ring->describe());
    BasicPolynomial p(std::move(ring));
    p.terms_ = terms_;
    return p;
  }

 private:
  static bool lnd_is_zero(const Coeff& c) { return detail::coeff_is_zero(c); }

  static BasicPolynomial merge(const BasicPolynomial& a, const BasicPolynomial& b, bool subtract) {
    require_same_ring(a.ring_, b.ring_);
    BasicPolynomial p(a.ring_);
    p.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      int c;
      if (i == a.terms_.size()) c = -1;
      else if (j == b.terms_.size()) c = 1;
      else c = compare(a.terms_[i].first, b.terms_[j].first);
      if (c > 0) {
        p.terms_.push_back(a.terms_[i++]);
      } else if (c < 0) {
        const auto& t = b.terms_[j++];
        p.terms_.emplace_back(t.first, subtract ? Coeff(-t.second) : t.second);
      } else {
        Coeff v = subtract ? Coeff(a.terms_[i].second - b.terms_[j].second) : Coeff(a.terms_[i].second + b.terms_[j].second);
        if (!lnd_is_zero(v)) p.terms_.emplace_back(a.terms_[i].first, std::move(v));
        ++i;
        ++j;
      }
    }
    return p;
  }

  // Collects all index pairs keyed by product monomial, sorts, then sums each
  // run once. Avoids allocating a coefficient per partial product.
  static BasicPolynomial multiply(const BasicPolynomial& a, const BasicPolynomial& b) {
    struct Entry {
      Monomial m;
      std::uint32_t i, j;
    };
    std::vector<Entry> entries;
    entries.reserve(a.terms_.size() * b.terms_.size());
    for (std::uint32_t i = 0; i < a.terms_.size(); ++i)
      for (std::uint32_t j = 0; j < b.terms_.size(); ++j)
        entries.push_back({a.terms_[i].first * b.terms_[j].first, i, j});
    std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) { return x.m > y.m; });
    BasicPolynomial p(a.ring_);
    std::size_t k = 0;
    while (k < entries.size()) {
      std::size_t end = k + 1;
      while (end < entries.size() && entries[end].m == entries[k].m) ++end;
      Coeff sum = a.terms_[entries[k].i].second * b.terms_[entries[k].j].second;
      for (std::size_t r = k + 1; r < end; ++r) sum += a.terms_[entries[r].i].second * b.terms_[entries[r].j].second;
      if (!lnd_is_zero(sum)) p.terms_.emplace_back(entries[k].m, std::move(sum));
      k = end;
    }
    return p;
  }

  Ring ring_;
  std::vector<Term> terms_;
};

using Polynomial = BasicPolynomial<Rational>;

template <class Coeff>
BasicPolynomial<Coeff> pow(const BasicPolynomial<Coeff>& p, unsigned e) {
  return p.pow(e);
}

}  // namespace lnd
