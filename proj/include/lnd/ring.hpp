#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lnd/errors.hpp"

namespace lnd {

inline constexpr std::size_t kMaxVars = 8;

// Ordered variable names plus the coefficient field. When `coeff_var` is set
// the coefficients are rational functions in that variable and it does not
// occupy a monomial slot.
struct RingDescriptor {
  std::vector<std::string> vars;
  std::optional<std::string> coeff_var;

  std::size_t arity() const { return vars.size(); }

  std::optional<std::size_t> index_of(const std::string& name) const {
    auto it = std::find(vars.begin(), vars.end(), name);
    if (it == vars.end()) return std::nullopt;
    return static_cast<std::size_t>(it - vars.begin());
  }

  std::size_t require(const std::string& name) const {
    auto i = index_of(name);
    if (!i) throw UnknownVariable(name);
    return *i;
  }

  std::string describe() const {
    std::string s = coeff_var ? "Q(" + *coeff_var + ")[" : "Q[";
    for (std::size_t i = 0; i < vars.size(); ++i) s += (i ? "," : "") + vars[i];
    return s + "]";
  }

  friend bool operator==(const RingDescriptor& a, const RingDescriptor& b) {
    return a.vars == b.vars && a.coeff_var == b.coeff_var;
  }
};

using Ring = std::shared_ptr<const RingDescriptor>;

inline Ring make_ring(std::vector<std::string> vars, std::optional<std::string> coeff_var = std::nullopt) {
  if (vars.size() > kMaxVars) throw InvalidArgument("too many ring variables");
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (vars[i].empty()) throw InvalidArgument("empty variable name");
    for (std::size_t j = 0; j < i; ++j)
      if (vars[i] == vars[j]) throw InvalidArgument("duplicate variable '" + vars[i] + "'");
    if (coeff_var && vars[i] == *coeff_var)
      throw InvalidArgument("coefficient variable '" + vars[i] + "' cannot be a monomial variable");
  }
  return std::make_shared<const RingDescriptor>(RingDescriptor{std::move(vars), std::move(coeff_var)});
}

// Parses "x,y,z".
inline Ring parse_ring(const std::string& spec, std::optional<std::string> coeff_var = std::nullopt) {
  std::vector<std::string> vars;
  std::string cur;
  for (char c : spec) {
    if (c == ',') {
      vars.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (!cur.empty()) vars.push_back(cur);
  return make_ring(std::move(vars), std::move(coeff_var));
}

inline bool same_ring(const Ring& a, const Ring& b) { return a == b || (a && b && *a == *b); }

inline void require_same_ring(const Ring& a, const Ring& b) {
  if (!same_ring(a, b)) throw RingMismatch(a->describe() + " vs " + b->describe());
}

// Shared instances for the rings used throughout.
inline const Ring& ring_xyz() {
  static const Ring r = make_ring({"x", "y", "z"});
  return r;
}
inline const Ring& ring_x() {
  static const Ring r = make_ring({"x"});
  return r;
}
inline const Ring& ring_t1t2() {
  static const Ring r = make_ring({"t1", "t2"});
  return r;
}
inline const Ring& ring_qx_yz() {
  static const Ring r = make_ring({"y", "z"}, std::string("x"));
  return r;
}

}  // namespace lnd
