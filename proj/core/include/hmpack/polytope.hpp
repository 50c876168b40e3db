#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hmpack/linalg.hpp"

namespace hmpack {

class TokenReader;

/// Integral point; lexicographic comparison of std::vector gives the canonical order.
using IntPoint = std::vector<std::int64_t>;

/// { x in R^d : A x <= b } with integral A and b.
class Polytope {
 public:
  Polytope() = default;
  /// Throws InputError when rows have inconsistent length, m == 0 or d == 0.
  Polytope(std::vector<IntVector> a, IntVector b);

  /// Box lo <= x <= hi.
  static Polytope box(const IntPoint& lo, const IntPoint& hi);

  /// Text block: "m d" then m lines of d+1 integers (row of A, then b).
  /// Errors carry a line:column position.
  static Polytope parse(std::string_view text);
  static Polytope read(TokenReader& in);
  std::string str() const;

  std::size_t dim() const noexcept { return dim_; }
  std::size_t rows() const noexcept { return b_.size(); }
  const IntVector& row(std::size_t i) const { return a_[i]; }
  std::int64_t rhs(std::size_t i) const { return b_[i]; }
  const std::vector<IntVector>& a() const noexcept { return a_; }
  const IntVector& b() const noexcept { return b_; }
  std::int64_t max_coefficient() const noexcept { return delta_; }

  /// b_i - A_i x, exactly.
  std::int64_t slack(std::size_t i, std::span<const std::int64_t> x) const;
  bool contains(std::span<const std::int64_t> x) const;
  bool contains(std::span<const Rational> x) const;

  RatMatrix a_rational() const;
  RatVector b_rational() const;

  /// Appends rows; dimensions must agree.
  Polytope with_rows(const std::vector<IntVector>& a, const IntVector& b) const;

  friend bool operator==(const Polytope&, const Polytope&) = default;

 private:
  std::vector<IntVector> a_;
  IntVector b_;
  std::size_t dim_ = 0;
  std::int64_t delta_ = 0;
};

struct Interval {
  Rational lo;
  Rational hi;
};

/// Per-coordinate extent of P from 2d exact LPs. std::nullopt when P is unbounded.
/// An infeasible P yields an empty vector.
std::optional<std::vector<Interval>> coordinate_bounds(const Polytope& p);

struct EnumerationLimits {
  std::uint64_t max_box_points = 2'000'000;
};

/// Exactly P ∩ Z^d, sorted lexicographically. Throws ResourceError("lattice_box") when the
/// integer bounding box exceeds the budget and InputError when P is unbounded.
std::vector<IntPoint> lattice_points(const Polytope& p, const EnumerationLimits& limits = {});

/// Exact membership of `x` in conv(points) by an LP feasibility test.
bool in_convex_hull(std::span<const Rational> x, const std::vector<RatVector>& points);
bool in_convex_hull(const IntPoint& x, const std::vector<IntPoint>& points);

/// Vertices of conv(points), sorted. Input may contain duplicates.
std::vector<IntPoint> hull_vertices(std::vector<IntPoint> points);

/// Vertices of the integer hull conv(P ∩ Z^d); empty iff P has no lattice point.
std::vector<IntPoint> integer_hull_vertices(const Polytope& p, const EnumerationLimits& limits = {});

/// Dimension of the affine hull of the points (-1 for an empty set).
int affine_dimension(const std::vector<IntPoint>& points);

}  // namespace hmpack
