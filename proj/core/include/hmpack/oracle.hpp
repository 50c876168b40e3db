#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hmpack/geometry.hpp"
#include "hmpack/scheduling.hpp"
#include "hmpack/solver.hpp"
#include "hmpack/structure.hpp"

namespace hmpack::oracle {

/// Exact bin packing optimum by memoized search over residual demand vectors.
/// Throws ResourceError("bp_cap") when Σ a_i exceeds `cap`.
std::int64_t bp_brute_force(const BinPackingInstance& inst, std::int64_t cap = 12);

/// Exact fractional optimum over all patterns s^T x <= 1, not only those below a. Throws ResourceError("pattern_count") past `max_patterns`.
Rational fractional_opt(const BinPackingInstance& inst, std::size_t max_patterns = 100'000);

struct BruteConeResult {
  bool found = false;
  IntPoint y;
  Combination lambda;
};

/// Breadth-first search over partial sums inside the box [lo, hi], using the lattice points of P
/// in the same box as generators. Exact whenever every relevant partial sum stays in the box,
/// which holds for P and Q in the non-negative orthant with Q ∩ orthant ⊆ box.
/// Throws ResourceError("brute_box") past `max_states`.
BruteConeResult int_cone_brute(const Polytope& p, const Polytope& q, const IntPoint& lo, const IntPoint& hi,
                               std::size_t max_states = 2'000'000);

struct CoverViolation {
  enum class Kind { Uncovered, Containment, Integrality, Degenerate } kind;
  std::size_t parallelepiped = 0;  // unused for Uncovered
  IntPoint point;                  // uncovered point
  std::string message;
};

/// Checks P ∩ Z^d ⊆ ∪Π ⊆ P and that every parallelepiped has integral vertices and independent
/// directions. An empty result means the cover is valid.
std::vector<CoverViolation> cover_verify(const std::vector<Parallelepiped>& cover, const Polytope& p,
                                         std::uint64_t max_box_points = 2'000'000);

/// Non-preemptive feasibility of x on one machine of type i: every distinct job order, each job
/// started as early as possible. Throws ResourceError("np_brute") past Σ x = 6.
bool nonpreemptive_brute(const IntPoint& x, const SchedulingInstance& inst, std::size_t i);

/// Preemptive feasibility of x on one machine of type i as a flow of copies into unit time slots.
/// Throws ResourceError("pre_brute") past horizon 200 or 60 copies.
bool preemptive_brute(const IntPoint& x, const SchedulingInstance& inst, std::size_t i);

/// Least machine cost of an assignment (variant decides the feasibility oracle), by memoized search
/// over residual demand. Throws ResourceError("assign_cap") past Σ a = `cap`.
std::int64_t assign_brute(const SchedulingInstance& inst, std::int64_t cap = 8);

/// Least penalty of unscheduled copies with exactly M_i machines of type i, non-preemptive.
/// Throws ResourceError("tardy_cap") past Σ a = `cap`.
std::int64_t tardy_brute(const SchedulingInstance& inst, std::int64_t cap = 8);

}  // namespace hmpack::oracle
