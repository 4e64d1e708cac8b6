#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>

#include "lnd/errors.hpp"
#include "lnd/ring.hpp"

namespace lnd {

// Exponent vector with one slot per ring variable; unused slots stay zero.
// The cached total degree keeps the graded comparison cheap.
class Monomial {
 public:
  using Exponent = std::uint16_t;

  Monomial() = default;

  static Monomial variable(std::size_t index, unsigned power = 1) {
    Monomial m;
    m.set(index, power);
    return m;
  }

  Exponent operator[](std::size_t i) const { return exps_[i]; }
  unsigned degree() const { return degree_; }

  void set(std::size_t i, unsigned power) {
    if (i >= kMaxVars) throw InvalidArgument("monomial slot out of range");
    if (power > 0xFFFFu) throw InvalidArgument("exponent overflow");
    degree_ = degree_ - exps_[i] + power;
    exps_[i] = static_cast<Exponent>(power);
  }

  bool is_one() const { return degree_ == 0; }

  bool divides(const Monomial& other) const {
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (exps_[i] > other.exps_[i]) return false;
    return true;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      unsigned s = unsigned(a.exps_[i]) + b.exps_[i];
      if (s > 0xFFFFu) throw InvalidArgument("exponent overflow");
      m.exps_[i] = static_cast<Exponent>(s);
    }
    m.degree_ = a.degree_ + b.degree_;
    return m;
  }

  // Requires b.divides(a).
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i) m.exps_[i] = static_cast<Exponent>(a.exps_[i] - b.exps_[i]);
    m.degree_ = a.degree_ - b.degree_;
    return m;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

  // Graded lexicographic order; the last ring variable is the most
  // significant, so for (x,y,z) we get x < y < z.
  friend int compare(const Monomial& a, const Monomial& b) {
    if (a.degree_ != b.degree_) return a.degree_ < b.degree_ ? -1 : 1;
    for (std::size_t i = kMaxVars; i-- > 0;)
      if (a.exps_[i] != b.exps_[i]) return a.exps_[i] < b.exps_[i] ? -1 : 1;
    return 0;
  }
  friend bool operator<(const Monomial& a, const Monomial& b) { return compare(a, b) < 0; }
  friend bool operator>(const Monomial& a, const Monomial& b) { return compare(a, b) > 0; }

  std::size_t hash() const {
    std::uint64_t h = 1469598103934665603ull;
    for (auto e : exps_) {
      h ^= e;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }

 private:
  std::array<Exponent, kMaxVars> exps_{};
  unsigned degree_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

}  // namespace lnd
