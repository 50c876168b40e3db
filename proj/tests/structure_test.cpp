#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "hmpack/errors.hpp"
#include "hmpack/structure.hpp"

using namespace hmpack;

TEST(Combination, Sum) {
  EXPECT_EQ(combo_sum({}, 3), (IntVector{0, 0, 0}));
  EXPECT_EQ(combo_sum({{{1, 0}, 2}, {{0, 3}, 1}}), (IntVector{2, 3}));
  EXPECT_EQ(combo_sum({{{7, 0}, 1}, {{6, 1}, 1}}), (IntVector{13, 1}));
  EXPECT_THROW(combo_sum({{{1}, 1}, {{1, 2}, 1}}), InputError);
}

TEST(ReduceSupport, Examples) {
  EXPECT_EQ(reduce_support({{{0}, 1}, {{1}, 2}, {{2}, 1}}), (Combination{{{1}, 4}}));
  Combination small{{{0, 0}, 3}, {{5, 1}, 2}};
  EXPECT_EQ(reduce_support(small), small);
  Combination five{{{0, 0}, 1}, {{2, 0}, 1}, {{0, 2}, 1}, {{2, 2}, 1}, {{1, 1}, 1}};
  auto mu = reduce_support(five);
  EXPECT_LE(mu.size(), 4u);
  EXPECT_EQ(combo_sum(mu), (IntVector{5, 5}));
  EXPECT_EQ(combo_weight(mu), 5);
}

TEST(Redistribute, Examples) {
  Parallelepiped seg{{1}, {{1}}};
  EXPECT_EQ(redistribute_in_pp(seg, IntPoint{1}, 5), (Combination{{{0}, 2}, {{1}, 1}, {{2}, 2}}));
  EXPECT_EQ(redistribute_in_pp(seg, IntPoint{1}, 2), (Combination{{{0}, 1}, {{2}, 1}}));
  EXPECT_EQ(redistribute_in_pp(seg, IntPoint{2}, 9), (Combination{{{2}, 9}}));
  EXPECT_THROW(redistribute_in_pp(seg, IntPoint{3}, 1), InputError);
}

TEST(RedistributeProperty, VertexConditions) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> small(-3, 3), weight(1, 40);
  for (int t = 0; t < 200; ++t) {
    const std::size_t d = 1 + t % 3;
    // integral parallelepiped: integer center and directions, or half-integral pairs
    Parallelepiped pp;
    pp.center.assign(d, Rational(0));
    for (std::size_t i = 0; i < d; ++i) {
      RatVector v(d);
      for (auto& e : v) e = small(rng);
      pp.directions.push_back(v);
    }
    if (independent_subset(pp.directions).size() != d) continue;
    // pick lattice points inside by sampling integer coordinates in the span
    Combination c;
    for (int k = 0; k < 4; ++k) {
      IntPoint x(d, 0);
      for (std::size_t i = 0; i < d; ++i) {
        const int s = small(rng) % 2;
        for (std::size_t j = 0; j < d; ++j) x[j] += s * pp.directions[i][j].to_int64();
      }
      combo_add(c, x, weight(rng));
    }
    const auto out = redistribute_in_pp(pp, c);
    EXPECT_EQ(combo_sum(out, d), combo_sum(c, d));
    EXPECT_EQ(combo_weight(out), combo_weight(c));
    std::size_t non_vertex = 0;
    for (const auto& [x, w] : out) {
      auto a = pp_coordinates(pp, x);
      ASSERT_TRUE(a);
      bool vertex = true;
      for (const auto& e : *a) vertex = vertex && abs(e) == Rational(1);
      if (!vertex) {
        ++non_vertex;
        EXPECT_EQ(w, 1);
      }
    }
    EXPECT_LE(non_vertex, std::size_t{1} << d);
  }
}

TEST(StructureSet, Examples) {
  auto single = compute_structure_set(Polytope::box({4}, {4}));
  EXPECT_EQ(single.special_points, (std::vector<IntPoint>{{4}}));
  EXPECT_EQ(single.cover.size(), 1u);

  auto seg = compute_structure_set(Polytope({{1}, {-1}}, {3, 0}));
  for (std::int64_t x = 0; x <= 3; ++x) EXPECT_TRUE(seg.locator.count({x}));
  EXPECT_EQ(seg.special_points, (std::vector<IntPoint>{{0}, {3}}));

  auto knap = compute_structure_set(testing_fixtures::knapsack_polytope());
  EXPECT_EQ(knap.locator.size(), 25u);
  EXPECT_FALSE(knap.special_points.empty());
}

TEST(Normalize, Examples) {
  auto seg = compute_structure_set(Polytope({{1}, {-1}}, {3, 0}));
  EXPECT_TRUE(normalize_combination({}, seg).empty());
  Combination on_x{{{0}, 4}, {{3}, 2}};
  EXPECT_EQ(normalize_combination(on_x, seg), on_x);
  auto out = normalize_combination({{{1}, 10}}, seg);
  EXPECT_EQ(combo_sum(out), (IntVector{10}));
  EXPECT_EQ(combo_weight(out), 10);
  std::size_t interior = 0;
  for (const auto& [x, w] : out)
    if (x[0] == 1 || x[0] == 2) {
      ++interior;
      EXPECT_EQ(w, 1);
    }
  EXPECT_LE(interior, 1u);
  EXPECT_THROW(normalize_combination({{{7}, 1}}, seg), InputError);
}
