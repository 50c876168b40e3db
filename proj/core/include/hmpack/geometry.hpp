#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hmpack/linalg.hpp"
#include "hmpack/polytope.hpp"

namespace hmpack {

/// { center + sum_i mu_i * directions[i] : |mu_i| <= 1 } with independent directions.
/// Integral when every one of its 2^k vertices is integral.
struct Parallelepiped {
  RatVector center;
  std::vector<RatVector> directions;

  std::size_t dim() const { return center.size(); }
  std::size_t rank() const { return directions.size(); }

  /// Throws InternalError when directions are dependent or a vertex is fractional.
  void validate() const;

  friend bool operator==(const Parallelepiped&, const Parallelepiped&) = default;
};

/// All 2^k sign patterns center ± v_1 ± ... ± v_k, in sign-pattern order
/// (bit i set means +v_i). Throws InternalError on a fractional vertex.
std::vector<IntPoint> pp_vertices(const Parallelepiped& pp);

/// Coordinates alpha with x = center + sum alpha_i v_i and all |alpha_i| <= 1,
/// or std::nullopt when x is outside.
std::optional<RatVector> pp_coordinates(const Parallelepiped& pp, const IntPoint& x);

inline bool pp_contains(const Parallelepiped& pp, const IntPoint& x) {
  return pp_coordinates(pp, x).has_value();
}

/// True iff every vertex lies in P (and therefore, by convexity, all of pp).
bool pp_inside(const Parallelepiped& pp, const Polytope& p);

/// Exact slack-interval grid alpha_0 = 0, alpha_j = (1 + 1/d^2)^(j-2) for j >= 1,
/// extended until the last value exceeds `limit`.
std::vector<Rational> alpha_grid(std::size_t d, const Rational& limit);

/// Largest j with alpha_j <= slack (slack >= 0).
std::size_t alpha_index(const std::vector<Rational>& grid, std::int64_t slack);

/// Lattice points whose slacks fall into the same grid interval for every constraint.
struct Cell {
  std::vector<std::size_t> signature;  // one interval index per constraint
  std::vector<IntPoint> members;        // sorted
  IntPoint anchor;                      // lexicographically smallest member
};

/// Partition of P ∩ Z^d into nonempty cells, sorted by signature.
std::vector<Cell> cell_partition(const Polytope& p, const EnumerationLimits& limits = {});
std::vector<Cell> cell_partition(const Polytope& p, const std::vector<IntPoint>& lattice);

struct EllipsoidResult {
  std::vector<double> center;
  std::vector<std::vector<double>> shape;  // in the reduced coordinates of the affine hull
  std::size_t affine_dim = 0;
  /// One representative per ± pair; the contact set is these points and their mirrors.
  std::vector<std::size_t> contact_indices;
  bool used_fallback = false;
};

/// Contact points of the minimum-volume ellipsoid of a point set symmetric about
/// `center`. The returned representatives x_j satisfy, verified exactly,
/// conv(points) ⊆ conv{center ± ceil(sqrt(r)) (x_j - center)} with r the affine dimension.
EllipsoidResult mvee_contact_points(const std::vector<RatVector>& points, const RatVector& center);

struct CoverOptions {
  EnumerationLimits limits;
  /// Try a few large parallelepipeds spanned by integer-hull vertices before the per-cell construction.
  bool global_phase = true;
  std::size_t global_vertex_cap = 12;
  std::size_t global_candidate_cap = 400;
};

struct CoverStats {
  std::size_t lattice_points = 0;
  std::size_t cells = 0;
  std::size_t cells_built = 0;
  std::size_t global_parallelepipeds = 0;
  std::size_t shrunk = 0;
  std::size_t discarded = 0;
  std::size_t point_fallbacks = 0;
  std::size_t mvee_fallbacks = 0;
};

struct Cover {
  std::vector<Parallelepiped> parallelepipeds;
  std::vector<IntPoint> lattice;  // P ∩ Z^d used to build the cover
  CoverStats stats;
};

/// Integral parallelepipeds with P ∩ Z^d ⊆ union ⊆ P.
Cover build_cover(const Polytope& p, const CoverOptions& options = {});
std::vector<Parallelepiped> parallelepiped_cover(const Polytope& p, const CoverOptions& options = {});

}  // namespace hmpack
