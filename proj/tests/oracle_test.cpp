#include <gtest/gtest.h>

#include "hmpack/errors.hpp"
#include "hmpack/oracle.hpp"

using namespace hmpack;

namespace {
BinPackingInstance make_bp(std::vector<Rational> s, IntVector a) { return {std::move(s), std::move(a)}; }
}  // namespace

TEST(BruteForce, Examples) {
  EXPECT_EQ(oracle::bp_brute_force(make_bp({Rational(1, 2)}, {3})), 2);
  EXPECT_EQ(oracle::bp_brute_force(make_bp({Rational(1, 2), Rational(1, 3)}, {2, 3})), 2);
  EXPECT_EQ(oracle::bp_brute_force(make_bp({Rational(1, 2), Rational(1, 3)}, {0, 0})), 0);
}

TEST(BruteForce, Cap) {
  EXPECT_THROW(oracle::bp_brute_force(make_bp({Rational(1, 2)}, {13})), ResourceError);
  EXPECT_EQ(oracle::bp_brute_force(make_bp({Rational(1, 2)}, {13}), 20), 7);
}

TEST(FractionalOpt, Examples) {
  EXPECT_EQ(oracle::fractional_opt(make_bp({Rational(1, 2)}, {3})), Rational(3, 2));
  EXPECT_EQ(oracle::fractional_opt(make_bp({Rational(1, 2), Rational(1, 3)}, {2, 3})), Rational(2));
  EXPECT_EQ(oracle::fractional_opt(make_bp({Rational(1, 2)}, {0})), Rational(0));
}

TEST(ConeBrute, Examples) {
  const auto gens12 = Polytope::box({1}, {2});
  const auto r = oracle::int_cone_brute(gens12, Polytope::box({5}, {5}), {0}, {10});
  ASSERT_TRUE(r.found);
  EXPECT_EQ(combo_sum(r.lambda, 1), IntPoint{5});
  EXPECT_FALSE(oracle::int_cone_brute(Polytope::box({2}, {2}), Polytope::box({3}, {3}), {0}, {10}).found);
}

TEST(CoverVerify, Examples) {
  const auto p = Polytope::box({0}, {3});
  const Parallelepiped whole{{Rational(3, 2)}, {{Rational(3, 2)}}};
  EXPECT_TRUE(oracle::cover_verify({whole}, p).empty());

  const Parallelepiped left{{Rational(1, 2)}, {{Rational(1, 2)}}};
  const Parallelepiped three{{Rational(3)}, {}};
  const auto missing = oracle::cover_verify({left, three}, p);
  ASSERT_EQ(missing.size(), 1u);
  EXPECT_EQ(missing[0].kind, oracle::CoverViolation::Kind::Uncovered);
  EXPECT_EQ(missing[0].point, IntPoint{2});

  const Parallelepiped wide{{Rational(2)}, {{Rational(2)}}};
  const auto outside = oracle::cover_verify({wide}, p);
  ASSERT_FALSE(outside.empty());
  EXPECT_EQ(outside[0].kind, oracle::CoverViolation::Kind::Containment);

  const Parallelepiped half{{Rational(1)}, {{Rational(1, 2)}}};
  const auto frac = oracle::cover_verify({half, whole}, p);
  ASSERT_FALSE(frac.empty());
  EXPECT_EQ(frac[0].kind, oracle::CoverViolation::Kind::Integrality);
}

TEST(CoverVerify, BuiltCoversPass) {
  const Polytope tri({{-1, 0}, {0, -1}, {3, 5}}, {0, 0, 30});
  EXPECT_TRUE(oracle::cover_verify(parallelepiped_cover(tri), tri).empty());
}
