#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hmpack/rational.hpp"

namespace hmpack {

using RatVector = std::vector<Rational>;
using IntVector = std::vector<std::int64_t>;

/// Dense row-major rational matrix with explicit dimensions.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  /// Builds from a list of equally long rows; throws InputError on ragged input.
  static RatMatrix from_rows(const std::vector<RatVector>& rows, std::size_t cols);
  static RatMatrix from_int_rows(const std::vector<IntVector>& rows, std::size_t cols);
  static RatMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Rational> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<Rational> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

  RatVector operator*(std::span<const Rational> x) const;
  RatMatrix transpose() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

RatVector to_rational(std::span<const std::int64_t> v);
Rational dot(std::span<const Rational> a, std::span<const Rational> b);

/// Solves M x = rhs. M may be overdetermined; the solution is returned only when
/// it exists and is unique (full column rank and consistent right-hand side).
std::optional<RatVector> solve_linear_system(const RatMatrix& m, std::span<const Rational> rhs);

/// Rank by exact elimination.
std::size_t rank(const RatMatrix& m);

/// Indices of a maximal linearly independent subset of the given vectors, greedy in input order.
std::vector<std::size_t> independent_subset(const std::vector<RatVector>& vectors);

}  // namespace hmpack
