#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hmpack/geometry.hpp"

namespace hmpack {

/// Precomputed coordinate solver for one parallelepiped. Keeps a reference to `pp`,
/// which must outlive the frame.
class PpFrame {
 public:
  explicit PpFrame(const Parallelepiped& pp);

  /// Same contract as pp_coordinates.
  std::optional<RatVector> coordinates(std::span<const std::int64_t> x) const;
  bool contains(std::span<const std::int64_t> x) const { return coordinates(x).has_value(); }

 private:
  const Parallelepiped* pp_;
  std::vector<std::size_t> rows_;
  RatMatrix inverse_;
};

}  // namespace hmpack
