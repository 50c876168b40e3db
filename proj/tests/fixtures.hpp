#pragma once

#include "hmpack/polytope.hpp"
#include "hmpack/solver.hpp"

namespace testing_fixtures {

/// Knapsack polytope {x >= 0, 0.13 x1 + 0.205 x2 <= 1} scaled to integers.
inline hmpack::Polytope knapsack_polytope() {
  return hmpack::Polytope({{-1, 0}, {0, -1}, {26, 41}}, {0, 0, 200});
}

/// Three item types where two bins suffice fractionally (OPT_f = 59/30) but three are needed.
inline hmpack::BinPackingInstance gap_instance() {
  using hmpack::Rational;
  return {{Rational(1, 2), Rational(1, 3), Rational(1, 5)}, {1, 2, 4}};
}

}  // namespace testing_fixtures
