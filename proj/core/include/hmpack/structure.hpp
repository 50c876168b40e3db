#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "hmpack/geometry.hpp"
#include "hmpack/polytope.hpp"

namespace hmpack {

/// Sparse non-negative integer combination of lattice points. Zero weights are never stored.
using Combination = std::map<IntPoint, std::int64_t>;

/// Adds `w` to the weight of `x`, erasing the entry when it drops to zero.
/// Throws InternalError if a weight would become negative.
void combo_add(Combination& c, const IntPoint& x, std::int64_t w);

/// Σ λ_x x. The empty combination sums to the zero vector of length `dim`.
IntVector combo_sum(const Combination& c, std::size_t dim);
/// Same, with the dimension taken from the support; {} for an empty combination.
IntVector combo_sum(const Combination& c);

/// Σ λ_x.
std::int64_t combo_weight(const Combination& c);

/// Support reduction by repeated parity pairing: the lexicographically first pair of support
/// points with equal parity is replaced by its midpoint until at most 2^d points remain.
/// Sum and total weight are preserved and the support stays inside conv(supp(λ)).
Combination reduce_support(Combination lambda);

/// Redistributes w copies of x_star inside pp: the result has the same sum and weight,
/// support in pp ∩ Z^d, weight at most one on non-vertices, and at most 2^d non-vertices.
/// Throws InputError when x_star is outside pp.
Combination redistribute_in_pp(const Parallelepiped& pp, const IntPoint& x_star, std::int64_t w);

/// Same procedure for an arbitrary combination supported in pp.
Combination redistribute_in_pp(const Parallelepiped& pp, Combination c);

/// The special set X (all cover vertices) together with the cover and a point locator.
struct StructureSet {
  std::vector<IntPoint> special_points;       // sorted, unique
  std::vector<Parallelepiped> cover;
  std::map<IntPoint, std::size_t> locator;     // lowest index of a parallelepiped containing the point
  std::size_t dim = 0;

  bool is_special(const IntPoint& x) const;
};

StructureSet compute_structure_set(const Polytope& p, const CoverOptions& options = {});
StructureSet structure_set_from_cover(const Polytope& p, const Cover& cover);

struct StructureReport {
  bool binary_off_special = true;  // λ_x ∈ {0,1} for x outside X
  std::size_t support_on_special = 0;
  std::size_t support_off_special = 0;

  /// Conditions with the 2^{2d} bounds.
  bool holds(std::size_t dim) const;
};

StructureReport check_structure(const Combination& c, const StructureSet& s);

/// Normal form with weight in {0,1} off X and both support parts bounded by 2^{2d}.
/// Preserves sum and total weight. Throws InputError on an unlocatable support point.
Combination normalize_combination(const Combination& lambda, const StructureSet& s);

}  // namespace hmpack
