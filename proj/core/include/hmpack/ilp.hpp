#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hmpack/linalg.hpp"

namespace hmpack {

/// Integer feasibility problem { x ∈ Z^n : A x <= b } with optional per-variable bounds.
/// Rows flagged in `equality` are read as A_i x = b_i.
struct IlpProblem {
  std::size_t n = 0;
  std::vector<IntVector> a;
  IntVector b;
  std::vector<bool> equality;  // empty means all rows are inequalities
  std::vector<std::optional<std::int64_t>> lower;  // empty means no explicit bounds
  std::vector<std::optional<std::int64_t>> upper;

  explicit IlpProblem(std::size_t vars = 0) : n(vars), lower(vars), upper(vars) {}

  void add_row(IntVector row, std::int64_t rhs, bool eq = false);
  void set_bounds(std::size_t j, std::optional<std::int64_t> lo, std::optional<std::int64_t> hi);
};

struct IlpOptions {
  std::uint64_t node_budget = 1'000'000;
  /// Solve in an LLL-reduced basis of the constraint lattice. Never changes the answer.
  bool lll = false;
};

struct IlpResult {
  bool feasible = false;
  IntVector x;
  std::uint64_t nodes = 0;
};

/// Branch-and-bound on exact LP relaxations. Throws InputError when the relaxation is unbounded
/// in a variable without explicit bounds and ResourceError("ilp_nodes") past the node budget.
IlpResult ilp_feasible(const IlpProblem& p, const IlpOptions& options = {});

/// LLL-reduces the columns of `basis` (δ = 3/4). Returns a unimodular U with basis·U reduced,
/// or std::nullopt when the columns are dependent.
std::optional<std::vector<IntVector>> lll_reduce(const std::vector<IntVector>& basis_rows, std::size_t cols);

}  // namespace hmpack
