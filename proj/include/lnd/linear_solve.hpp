#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "lnd/errors.hpp"
#include "lnd/polynomial.hpp"
#include "lnd/rational.hpp"

namespace lnd {

// Exact row-by-row Gaussian elimination for A c = b. Pivot rows are kept in
// reduced echelon form so rows can be streamed in without storing A.
class LinearSystem {
 public:
  explicit LinearSystem(std::size_t unknowns) : n_(unknowns) {}

  // Returns false once the system has become inconsistent.
  bool add_row(std::vector<Rational> row, Rational rhs) {
    if (row.size() != n_) throw InvalidArgument("row has the wrong number of unknowns");
    ++rows_;
    if (inconsistent_) return false;
    for (const auto& p : pivots_) {
      const Rational& f = row[p.col];
      if (is_zero(f)) continue;
      Rational k = f;
      for (std::size_t j = p.col; j < n_; ++j)
        if (!is_zero(p.row[j])) row[j] -= k * p.row[j];
      rhs -= k * p.rhs;
    }
    std::size_t col = n_;
    for (std::size_t j = 0; j < n_; ++j)
      if (!is_zero(row[j])) {
        col = j;
        break;
      }
    if (col == n_) {
      if (!is_zero(rhs)) inconsistent_ = true;
      return !inconsistent_;
    }
    Rational inv = 1 / row[col];
    for (std::size_t j = col; j < n_; ++j) row[j] *= inv;
    rhs *= inv;
    // keep the existing pivot rows reduced with respect to the new pivot
    for (auto& p : pivots_) {
      Rational f = p.row[col];
      if (is_zero(f)) continue;
      for (std::size_t j = col; j < n_; ++j)
        if (!is_zero(row[j])) p.row[j] -= f * row[j];
      p.rhs -= f * rhs;
    }
    pivots_.push_back({col, std::move(row), std::move(rhs)});
    return true;
  }

  bool consistent() const { return !inconsistent_; }
  std::size_t rank() const { return pivots_.size(); }
  std::size_t rows() const { return rows_; }
  std::size_t unknowns() const { return n_; }

  // A solution with all free unknowns set to zero.
  std::optional<std::vector<Rational>> solution() const {
    if (inconsistent_) return std::nullopt;
    std::vector<Rational> x(n_);
    for (const auto& p : pivots_) x[p.col] = p.rhs;
    return x;
  }

 private:
  struct Pivot {
    std::size_t col;
    std::vector<Rational> row;
    Rational rhs;
  };
  std::size_t n_;
  std::size_t rows_ = 0;
  bool inconsistent_ = false;
  std::vector<Pivot> pivots_;
};

// Solves target = sum_k c_k * basis[k] coefficientwise.
struct SpanSolution {
  bool feasible;
  std::vector<Rational> coefficients;
  std::size_t rank;
  std::size_t rows;
};

inline SpanSolution solve_in_span(const Polynomial& target, const std::vector<Polynomial>& basis) {
  std::map<Monomial, std::vector<Rational>, std::greater<Monomial>> rows;
  std::map<Monomial, Rational, std::greater<Monomial>> rhs;
  const std::size_t n = basis.size();
  for (std::size_t k = 0; k < n; ++k)
    for (const auto& [m, c] : basis[k].terms()) {
      auto& r = rows[m];
      if (r.empty()) r.resize(n);
      r[k] = c;
    }
  for (const auto& [m, c] : target.terms()) {
    rhs[m] = c;
    auto& r = rows[m];
    if (r.empty()) r.resize(n);
  }
  LinearSystem sys(n);
  for (auto& [m, r] : rows) {
    auto it = rhs.find(m);
    if (!sys.add_row(std::move(r), it == rhs.end() ? Rational(0) : it->second)) break;
  }
  auto sol = sys.solution();
  return {sol.has_value(), sol.value_or(std::vector<Rational>{}), sys.rank(), sys.rows()};
}

}  // namespace lnd
