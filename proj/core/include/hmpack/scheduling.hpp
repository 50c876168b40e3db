#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hmpack/polytope.hpp"
#include "hmpack/solver.hpp"

namespace hmpack {

enum class SchedulingVariant { Preemptive, NonPreemptive, Tardy };

struct JobWindow {
  std::int64_t release = 0;
  std::int64_t deadline = 0;
  std::int64_t processing = 1;
};

/// d job types on m machine types. Windows are machine-type dependent.
struct SchedulingInstance {
  SchedulingVariant variant = SchedulingVariant::Preemptive;
  std::vector<std::vector<JobWindow>> windows;  // [machine type][job type]
  IntVector multiplicities;                     // a_j
  IntVector machine_costs;                      // c_i, assignment variants
  IntVector machine_counts;                     // M_i, tardy variant
  IntVector penalties;                          // c_j, tardy variant

  std::size_t jobs() const { return multiplicities.size(); }
  std::size_t machines() const { return windows.size(); }
  const JobWindow& window(std::size_t i, std::size_t j) const { return windows.at(i).at(j); }

  /// Sorted, deduplicated release times and deadlines of machine type i.
  IntVector critical_points(std::size_t i) const;
  /// Largest deadline on machine type i.
  std::int64_t horizon(std::size_t i) const;

  void validate() const;

  /// "d m variant" (preemptive | nonpreemptive | tardy), d·m lines "i j r d p" (1-based i, j),
  /// the d multiplicities, then m machine costs, or m machine counts followed by d penalties.
  static SchedulingInstance parse(std::string_view text);
  std::string str() const;
};

/// One processed piece of copy `copy` of job type `job` in [start, end).
struct TimedPiece {
  std::size_t job = 0;
  std::int64_t copy = 0;
  std::int64_t start = 0;
  std::int64_t end = 0;

  friend bool operator==(const TimedPiece&, const TimedPiece&) = default;
};
using TimedSchedule = std::vector<TimedPiece>;

struct MachineSchedule {
  std::size_t type = 0;
  IntPoint x;
  TimedSchedule schedule;
};

struct ScheduleSolution {
  std::vector<MachineSchedule> machines;
  /// Machine cost (assignment variants) or penalty of unscheduled copies (tardy).
  std::int64_t objective = 0;
  IntVector scheduled;  // Σ x over machines
};

/// Throws InternalError unless the schedule runs exactly x on one machine of type i: no overlap,
/// every piece inside its window, full processing per copy and one piece per copy when
/// `preemptive` is false.
void validate_schedule(const SchedulingInstance& inst, std::size_t i, const IntPoint& x,
                       const TimedSchedule& schedule, bool preemptive);

/// {x >= 0 : Σ_{j : r_j, d_j ∈ [t1, t2]} p_j x_j <= t2 - t1 for critical t1 <= t2}.
Polytope build_edf_polytope(const SchedulingInstance& inst, std::size_t i);

struct EdfResult {
  bool feasible = false;
  TimedSchedule schedule;                                   // when feasible
  std::optional<std::pair<std::int64_t, std::int64_t>> violation;  // overloaded [t1, t2] otherwise
};

/// Event-driven earliest-deadline-first simulation; deadline ties go to the lower job type.
EdfResult edf_simulate(const IntPoint& x, const SchedulingInstance& inst, std::size_t i);

/// Coordinates of the non-preemptive polytope: (x, x_0, τ_1..τ_K, y_{0..d,1..K}, z_{1..d,1..K}), K = 4d.
struct NonpreemptiveLayout {
  std::size_t d = 0;

  explicit NonpreemptiveLayout(std::size_t jobs) : d(jobs) {}
  std::size_t cycles() const { return 4 * d; }
  std::size_t x(std::size_t j) const { return j; }  // j in [0, d)
  std::size_t x0() const { return d; }
  std::size_t tau(std::size_t k) const { return d + 1 + (k - 1); }  // k in [1, K]
  std::size_t y(std::size_t j, std::size_t k) const { return d + 1 + cycles() + j * cycles() + (k - 1); }  // j in [0, d]
  std::size_t z(std::size_t j, std::size_t k) const {  // j in [1, d]
    return d + 1 + cycles() + (d + 1) * cycles() + (j - 1) * cycles() + (k - 1);
  }
  std::size_t dim() const { return d + 1 + cycles() + (d + 1) * cycles() + d * cycles(); }
};

/// The cyclic-schedule polytope for one machine of type i, with Δ the horizon of type i.
Polytope build_nonpreemptive_polytope(const SchedulingInstance& inst, std::size_t i);

/// Integral completion (x, x_0, τ, y, z) inside the non-preemptive polytope, or std::nullopt when
/// none exists. Decided exactly by dynamic programming over cycles, states (τ_k, remaining jobs).
std::optional<IntPoint> nonpreemptive_completion(const IntPoint& x, const SchedulingInstance& inst, std::size_t i);

/// Reads cycle start times and counts off an integral point of the non-preemptive polytope:
/// each cycle runs its dummy prefix, then job types 1..d back to back.
TimedSchedule extract_cyclic_schedule(const IntPoint& aux, const SchedulingInstance& inst, std::size_t i);

/// Minimum machine cost with preemption (no migration).
ScheduleSolution preemptive_assign(const SchedulingInstance& inst, const SolverOptions& options = {});

/// Minimum machine cost without preemption.
ScheduleSolution nonpreemptive_assign(const SchedulingInstance& inst, const SolverOptions& options = {});

/// Minimum total penalty of unscheduled copies with exactly M_i machines of type i (non-preemptive).
ScheduleSolution tardy_min_penalty(const SchedulingInstance& inst, const SolverOptions& options = {});

/// Dispatches on the instance variant.
ScheduleSolution solve_scheduling(const SchedulingInstance& inst, const SolverOptions& options = {});

}  // namespace hmpack
