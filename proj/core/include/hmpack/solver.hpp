#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hmpack/ilp.hpp"
#include "hmpack/structure.hpp"

namespace hmpack {

enum class SolverMode { Faithful, Joint };

struct SolverOptions {
  SolverMode mode = SolverMode::Faithful;
  IlpOptions ilp;
  CoverOptions cover;
  /// Faithful mode: number of guess ILPs before the remaining guess space is settled by
  /// the single joint ILP, whose feasible set contains that of every guess.
  std::size_t guess_budget = 64;
  /// Bin packing: narrow the binary search with the fractional optimum and first-fit decreasing.
  bool lp_bounds = true;
  /// Multi-polytope selection: integer box budget for the lifted selector polytope. Larger
  /// selectors are decided by the generator ILP over the enumerated part points instead.
  std::uint64_t selector_box_limit = 200'000;
};

/// How a Found answer (or an Empty certificate) was obtained.
struct GuessRecord {
  std::vector<std::size_t> parallelepipeds;  // indices into the cover (the guessed X')
  std::size_t special_points = 0;            // |X'|
  std::size_t extra_points = 0;              // k
  std::size_t guesses_tried = 0;
  bool joint = false;                        // answered by the joint ILP
};

struct IntConeResult {
  bool found = false;
  IntPoint y;
  Combination lambda;
  GuessRecord guess;
};

/// Reusable int.cone(P ∩ Z^D) ∩ Q oracle for a fixed bounded P (cover and X computed once).
class IntConeSolver {
 public:
  explicit IntConeSolver(Polytope p, SolverOptions options = {});

  IntConeResult solve(const Polytope& q) const;

  const Polytope& polytope() const { return p_; }
  const std::vector<IntPoint>& lattice() const { return lattice_; }
  const StructureSet& structure() const { return structure_; }
  const SolverOptions& options() const { return options_; }

 private:
  std::optional<IntConeResult> solve_guess(const Polytope& q, const std::vector<IntPoint>& gens,
                                           std::size_t k, bool optional_slots, std::int64_t w) const;
  std::int64_t weight_bound(const Polytope& q) const;

  Polytope p_;
  SolverOptions options_;
  std::vector<IntPoint> lattice_;
  StructureSet structure_;
  IntVector lo_, hi_;  // integer bounding box of P
};

/// Decides whether some y ∈ Q is a non-negative integer combination of P ∩ Z^D.
IntConeResult int_cone_intersect(const Polytope& p, const Polytope& q, const SolverOptions& options = {});

// ---------------------------------------------------------------------------
// Bin packing and cutting stock

struct BinPackingInstance {
  std::vector<Rational> sizes;   // each in (0, 1]
  IntVector multiplicities;      // each >= 0

  std::size_t dim() const { return sizes.size(); }
  /// Largest denominator or multiplicity.
  std::int64_t delta() const;
  /// Throws InputError on zero, negative or oversized items and length mismatch.
  void validate() const;

  /// "d" then d lines "p/q a_i". Diagnostics carry line:column.
  static BinPackingInstance parse(std::string_view text);
  std::string str() const;
};

struct BinType {
  Rational capacity;
  std::int64_t cost = 1;
};

struct CuttingStockInstance {
  BinPackingInstance items;
  std::vector<BinType> bins;

  void validate() const;
  /// Bin packing block followed by "m" and m lines "w c".
  static CuttingStockInstance parse(std::string_view text);
  std::string str() const;
};

struct PatternUse {
  IntPoint pattern;
  std::size_t bin_type = 0;
  std::int64_t multiplicity = 0;
};

struct PackingSolution {
  std::vector<PatternUse> patterns;  // sorted by (bin type, pattern)
  std::int64_t objective = 0;
  GuessRecord guess;
  std::size_t cone_queries = 0;
};

/// Throws InternalError unless every pattern fits its bin, demand is met exactly and the
/// objective equals the total cost.
void verify_packing(const CuttingStockInstance& inst, const PackingSolution& sol);
void verify_packing(const BinPackingInstance& inst, const PackingSolution& sol);

/// Minimum number of unit bins.
PackingSolution bin_packing(const BinPackingInstance& inst, const SolverOptions& options = {});

/// Minimum total cost over the given bin types.
PackingSolution cutting_stock(const CuttingStockInstance& inst, const SolverOptions& options = {});

/// Lowest-common-denominator scaling: integer sizes and capacity.
struct ScaledSizes {
  IntVector sizes;
  std::int64_t scale = 1;
};
ScaledSizes scale_sizes(const std::vector<Rational>& sizes, const std::vector<Rational>& capacities = {});

/// {(x, 1) : 0 <= x <= a, s^T x <= 1}, integral after scaling.
Polytope lifted_pattern_polytope(const BinPackingInstance& inst);

// ---------------------------------------------------------------------------
// Selecting from several polytopes

/// Part of a multi-polytope selection: points x ∈ Z^d that extend to some (x, y) ∈ P ∩ Z^{d+d_i}.
struct PolytopePart {
  Polytope polytope;               // over d + d_i coordinates, projected ones first
  std::size_t projected_dim = 0;   // d
  std::int64_t cost = 0;
  /// Optional exact decision procedure for "x extends into P"; replaces the completion ILP.
  std::function<bool(const IntPoint&)> extends;
  /// Optional integer bounds on the projected coordinates, replacing the LP bounds. Must contain
  /// every projected point.
  std::vector<std::pair<std::int64_t, std::int64_t>> projected_box;
};

struct SelectedPoint {
  std::size_t part = 0;
  IntPoint x;
  std::int64_t multiplicity = 0;
};

struct SelectionResult {
  bool found = false;
  std::vector<SelectedPoint> points;  // sorted by (part, x)
  IntPoint y;
  std::int64_t cost = 0;
  bool via_selector = false;  // decided by int.cone on the lifted selector polytope
};

/// All projected integer points of a part, sorted, without the origin.
std::vector<IntPoint> part_points(const PolytopePart& part, const EnumerationLimits& limits = {},
                                  const IlpOptions& ilp = {});

/// Exact generator ILP: Σ λ_{i,x} x ∈ Q with Σ c_i λ_{i,x} <= delta.
SelectionResult select_from_generators(const std::vector<std::vector<IntPoint>>& generators,
                                       const std::vector<std::int64_t>& costs, const Polytope& q,
                                       std::int64_t delta, const IlpOptions& ilp = {});

/// Found iff some combination of part points lies in Q within cost budget delta.
SelectionResult multi_polytope_select(const std::vector<PolytopePart>& parts, const Polytope& q,
                                      std::int64_t delta, const SolverOptions& options = {});

/// Least budget with a Found answer by binary search over [0, upper]; std::nullopt when even
/// `upper` is infeasible.
std::optional<SelectionResult> multi_polytope_minimize(const std::vector<PolytopePart>& parts,
                                                       const Polytope& q, std::int64_t upper,
                                                       const SolverOptions& options = {});

/// The lifted selector polytope over (x, γ, x_1, y_1, z_1, ..., x_n, y_n, z_n): (x_i, y_i) ∈ P_i,
/// Σ z_i = 1, z >= 0 and |(x, γ) - (x_i, c_i)| <= M (1 - z_i) coordinatewise. Its integer points
/// project onto the union of {(x, c_i) : x a point of part i}. M comes from exact coordinate bounds.
/// Every part must contain an integer point, since unselected parts still constrain (x_i, y_i).
Polytope selector_polytope(const std::vector<PolytopePart>& parts);

}  // namespace hmpack
