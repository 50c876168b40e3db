#include <gtest/gtest.h>

#include <random>
#include <set>

#include "fixtures.hpp"
#include "hmpack/errors.hpp"
#include "hmpack/geometry.hpp"
#include "hmpack/polytope.hpp"

using namespace hmpack;

namespace {

void expect_valid_cover(const Polytope& p, const Cover& cover) {
  for (const auto& pp : cover.parallelepipeds) {
    EXPECT_NO_THROW(pp.validate());
    for (const auto& v : pp_vertices(pp)) EXPECT_TRUE(p.contains(v));
  }
  for (const auto& x : lattice_points(p)) {
    bool found = false;
    for (const auto& pp : cover.parallelepipeds) found = found || pp_contains(pp, x);
    EXPECT_TRUE(found);
  }
}

}  // namespace

TEST(Polytope, ParseAndDiagnostics) {
  const auto p = Polytope::parse("2 1\n1 3\n-1 0\n");
  EXPECT_EQ(p.dim(), 1u);
  EXPECT_EQ(p.rows(), 2u);
  EXPECT_EQ(Polytope::parse(p.str()), p);
  try {
    (void)Polytope::parse("2 1\n1 3\n-1 x\n");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_EQ(std::string(e.what()).substr(0, 4), "3:4:");
  }
  EXPECT_THROW(Polytope::parse("1 1\n1"), InputError);
  EXPECT_THROW(Polytope::parse("0 1\n"), InputError);
}

TEST(Geometry, CoordinateBounds) {
  auto knap = testing_fixtures::knapsack_polytope();
  auto b = coordinate_bounds(knap);
  ASSERT_TRUE(b && b->size() == 2);
  EXPECT_EQ((*b)[0].lo, 0);
  EXPECT_EQ((*b)[0].hi, Rational(100, 13));
  EXPECT_EQ((*b)[1].hi, Rational(200, 41));
  auto seg = coordinate_bounds(Polytope({{1}, {-1}}, {5, 0}));
  ASSERT_TRUE(seg);
  EXPECT_EQ((*seg)[0].hi, 5);
  EXPECT_FALSE(coordinate_bounds(Polytope({{-1}}, {0})));
}

TEST(Geometry, LatticePoints) {
  auto knap = testing_fixtures::knapsack_polytope();
  // columnwise count: for each x1, floor((1 - 0.13 x1) / 0.205) + 1 points
  std::size_t expected = 0;
  for (int x1 = 0; 13 * x1 <= 100; ++x1) expected += static_cast<std::size_t>((200 - 26 * x1) / 41) + 1;
  EXPECT_EQ(expected, 25u);
  auto pts = lattice_points(knap);
  EXPECT_EQ(pts.size(), 25u);
  EXPECT_TRUE(std::is_sorted(pts.begin(), pts.end()));
  EXPECT_EQ(lattice_points(Polytope({{1, 0}, {-1, 0}, {0, 1}, {0, -1}}, {0, 0, 0, 0})),
            (std::vector<IntPoint>{{0, 0}}));
  EXPECT_EQ(lattice_points(Polytope({{-1, 0}, {0, -1}, {1, 1}}, {0, 0, 1})),
            (std::vector<IntPoint>{{0, 0}, {0, 1}, {1, 0}}));
  EXPECT_THROW(lattice_points(Polytope::box({0, 0}, {5000, 5000})), ResourceError);
  try {
    (void)lattice_points(Polytope::box({0, 0}, {5000, 5000}));
  } catch (const ResourceError& e) {
    EXPECT_EQ(e.budget(), "lattice_box");
  }
}

TEST(Geometry, IntegerHull) {
  auto knap = testing_fixtures::knapsack_polytope();
  EXPECT_EQ(integer_hull_vertices(knap), (std::vector<IntPoint>{{0, 0}, {0, 4}, {1, 4}, {6, 1}, {7, 0}}));
  EXPECT_EQ(integer_hull_vertices(Polytope::box({3, -2}, {3, -2})), (std::vector<IntPoint>{{3, -2}}));
  EXPECT_EQ(integer_hull_vertices(Polytope({{-1, 0}, {0, -1}, {2, 2}}, {0, 0, 5})),
            (std::vector<IntPoint>{{0, 0}, {0, 2}, {2, 0}}));
  EXPECT_TRUE(integer_hull_vertices(Polytope({{2}, {-2}}, {1, -1})).empty());
}

TEST(GeometryProperty, HullMatchesBruteForce) {
  // brute-force extreme points: x is a vertex iff it is not in the hull of the others
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> coef(-4, 4);
  for (int t = 0; t < 40; ++t) {
    const std::size_t d = 1 + t % 3;
    std::vector<IntVector> a;
    IntVector b;
    for (std::size_t i = 0; i < 4; ++i) {
      IntVector r(d);
      for (auto& e : r) e = coef(rng);
      a.push_back(r);
      b.push_back(coef(rng) + 6);
    }
    Polytope p(a, b);
    for (std::size_t j = 0; j < d; ++j) {
      IntVector up(d, 0), down(d, 0);
      up[j] = 1;
      down[j] = -1;
      p = p.with_rows({up, down}, {3, 3});
    }
    auto pts = lattice_points(p);
    std::vector<IntPoint> brute;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      std::vector<IntPoint> others;
      for (std::size_t k = 0; k < pts.size(); ++k)
        if (k != i) others.push_back(pts[k]);
      if (!in_convex_hull(pts[i], others)) brute.push_back(pts[i]);
    }
    EXPECT_EQ(hull_vertices(pts), brute) << "trial " << t;
  }
}

TEST(Parallelepiped, VerticesAndCoordinates) {
  Parallelepiped point{{5, 7}, {}};
  EXPECT_EQ(pp_vertices(point), (std::vector<IntPoint>{{5, 7}}));
  Parallelepiped sq{{1, 1}, {{1, 0}, {0, 1}}};
  auto vs = pp_vertices(sq);
  EXPECT_EQ(std::set<IntPoint>(vs.begin(), vs.end()), (std::set<IntPoint>{{0, 0}, {2, 0}, {0, 2}, {2, 2}}));
  Parallelepiped seg{{1}, {{1}}};
  EXPECT_EQ(pp_vertices(seg), (std::vector<IntPoint>{{0}, {2}}));
  EXPECT_EQ(pp_coordinates(seg, {0}), (RatVector{-1}));
  EXPECT_EQ(pp_coordinates(seg, {1}), (RatVector{0}));
  EXPECT_FALSE(pp_coordinates(seg, {3}));
  Parallelepiped frac{{Rational(1, 2)}, {{Rational(1, 4)}}};
  EXPECT_THROW(pp_vertices(frac), InternalError);
  Parallelepiped dependent{{0, 0}, {{1, 1}, {2, 2}}};
  EXPECT_THROW(dependent.validate(), InternalError);
  // a tilted direction in 2D: off the segment is outside
  Parallelepiped diag{{1, 1}, {{1, 1}}};
  EXPECT_EQ(pp_coordinates(diag, {2, 2}), (RatVector{1}));
  EXPECT_FALSE(pp_coordinates(diag, {1, 2}));
}

TEST(Cells, AlphaGrid) {
  for (std::size_t d = 1; d <= 4; ++d) {
    const auto grid = alpha_grid(d, Rational(5000));
    const Rational ratio = Rational(1) + Rational(1, static_cast<std::int64_t>(d * d));
    EXPECT_EQ(grid[0], 0);
    EXPECT_EQ(grid[2], 1);
    EXPECT_GT(grid.back(), 5000);
    for (std::size_t j = 2; j + 1 < grid.size(); ++j) {
      EXPECT_EQ(grid[j + 1] / grid[j], ratio);
      // consecutive integers p <= q inside [alpha_j, alpha_{j+1}] satisfy q/p <= ratio
      const auto lo = grid[j].ceil(), hi = grid[j + 1].floor();
      if (lo >= 1 && lo <= hi) EXPECT_LE(Rational(hi) / Rational(lo), ratio);
    }
  }
  const auto g = alpha_grid(1, Rational(10));
  EXPECT_EQ(alpha_index(g, 0), 0u);
  EXPECT_EQ(alpha_index(g, 1), 2u);
  EXPECT_EQ(alpha_index(g, 3), 3u);
}

TEST(Cells, Partition) {
  auto cells = cell_partition(Polytope({{1}, {-1}}, {1, 0}));
  EXPECT_EQ(cells.size(), 2u);
  EXPECT_EQ(cell_partition(Polytope::box({2, 2}, {2, 2})).size(), 1u);

  auto knap = testing_fixtures::knapsack_polytope();
  auto knap_cells = cell_partition(knap);
  std::vector<IntPoint> all;
  for (const auto& c : knap_cells) {
    ASSERT_FALSE(c.members.empty());
    EXPECT_EQ(c.anchor, c.members.front());
    all.insert(all.end(), c.members.begin(), c.members.end());
  }
  std::sort(all.begin(), all.end());
  EXPECT_EQ(all, lattice_points(knap));
  std::set<std::vector<std::size_t>> sigs;
  for (const auto& c : knap_cells) sigs.insert(c.signature);
  EXPECT_EQ(sigs.size(), knap_cells.size());
}

TEST(Mvee, Examples) {
  std::vector<RatVector> square{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
  auto sq = mvee_contact_points(square, {0, 0});
  EXPECT_EQ(sq.affine_dim, 2u);
  EXPECT_EQ(sq.contact_indices.size(), 2u);  // both diagonal pairs
  std::vector<RatVector> seg{{-2, 0}, {2, 0}};
  auto s = mvee_contact_points(seg, {0, 0});
  EXPECT_EQ(s.affine_dim, 1u);
  EXPECT_EQ(s.contact_indices.size(), 1u);
  std::vector<RatVector> hex{{2, 0}, {-2, 0}, {1, 1}, {-1, -1}, {1, -1}, {-1, 1}};
  auto h = mvee_contact_points(hex, {0, 0});
  EXPECT_LE(h.contact_indices.size(), 5u);
  std::vector<RatVector> gens;
  for (auto i : h.contact_indices) {
    gens.push_back({2 * hex[i][0], 2 * hex[i][1]});
    gens.push_back({-2 * hex[i][0], -2 * hex[i][1]});
  }
  for (const auto& x : hex) EXPECT_TRUE(in_convex_hull(x, gens));
}

TEST(Cover, Examples) {
  auto seg = Polytope({{1}, {-1}}, {3, 0});
  auto cover = build_cover(seg);
  ASSERT_EQ(cover.parallelepipeds.size(), 1u);
  EXPECT_EQ(cover.parallelepipeds[0].center, (RatVector{Rational(3, 2)}));
  EXPECT_EQ(cover.parallelepipeds[0].directions, (std::vector<RatVector>{{Rational(3, 2)}}));

  auto pt = Polytope::box({1, 2}, {1, 2});
  auto pc = build_cover(pt);
  ASSERT_EQ(pc.parallelepipeds.size(), 1u);
  EXPECT_EQ(pc.parallelepipeds[0].rank(), 0u);

  auto knap = testing_fixtures::knapsack_polytope();
  expect_valid_cover(knap, build_cover(knap));
  CoverOptions local;
  local.global_phase = false;
  expect_valid_cover(knap, build_cover(knap, local));
  expect_valid_cover(seg, build_cover(seg, local));
}

TEST(CoverProperty, RandomPolytopes) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> coef(-9, 9);
  for (int t = 0; t < 30; ++t) {
    const std::size_t d = 1 + t % 3;
    std::vector<IntVector> a;
    IntVector b;
    for (std::size_t i = 0; i < 3; ++i) {
      IntVector r(d);
      for (auto& e : r) e = coef(rng);
      a.push_back(r);
      b.push_back(coef(rng) + 12);
    }
    Polytope p(a, b);
    for (std::size_t j = 0; j < d; ++j) {
      IntVector up(d, 0), down(d, 0);
      up[j] = 1;
      down[j] = -1;
      p = p.with_rows({up, down}, {5, 5});
    }
    if (lattice_points(p).empty()) continue;
    CoverOptions local;
    local.global_phase = t % 2 == 0;
    expect_valid_cover(p, build_cover(p, local));
  }
}
