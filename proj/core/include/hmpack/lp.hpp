#pragma once

#include <optional>
#include <span>
#include <vector>

#include "hmpack/linalg.hpp"

namespace hmpack {

enum class Sense { Minimize, Maximize };
enum class LpStatus { Optimal, Infeasible, Unbounded };

struct VarBounds {
  std::optional<Rational> lower;
  std::optional<Rational> upper;
};

/// min/max c^T x subject to rows of `a` (<= b, or == b where `equality[i]` is set)
/// and optional per-variable bounds. Variables without bounds are free.
struct LinearProgram {
  RatMatrix a;
  RatVector b;
  std::vector<bool> equality;  // empty means all rows are inequalities
  RatVector c;
  Sense sense = Sense::Maximize;
  std::vector<VarBounds> bounds;  // empty means all variables are free
};

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  RatVector x;  // basic optimal solution when status == Optimal
  Rational value;
};

/// Exact two-phase primal simplex with Bland's rule.
LpResult solve_lp(const LinearProgram& lp);

/// Optimizes c^T x over { x : A x <= b } with x free.
LpResult lp_optimize(const RatMatrix& a, std::span<const Rational> b, std::span<const Rational> c,
                     Sense sense);

/// Pivot counter for diagnostics and benchmarks (per thread).
std::size_t lp_pivot_count();

}  // namespace hmpack
