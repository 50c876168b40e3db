#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "hmpack/errors.hpp"
#include "hmpack/linalg.hpp"
#include "hmpack/lp.hpp"
#include "hmpack/rational.hpp"

using namespace hmpack;

TEST(Rational, CanonicalForm) {
  Rational r(6, -4);
  EXPECT_EQ(r.str(), "-3/2");
  EXPECT_EQ(Rational(10, 5).str(), "2");
  EXPECT_EQ(Rational::parse("13/100") + Rational::parse("41/200"), Rational(67, 200));
  EXPECT_THROW(Rational::parse("1/0"), InputError);
  EXPECT_THROW(Rational::parse("abc"), InputError);
  EXPECT_THROW(Rational::parse("1/"), InputError);
}

TEST(Rational, PromotesAndDemotes) {
  const Rational big(std::int64_t{1} << 61);
  const Rational sq = big * big;
  EXPECT_FALSE(sq.is_small());
  EXPECT_EQ((sq / big), big);
  EXPECT_TRUE((sq / big).is_small());
  EXPECT_EQ((sq - sq + Rational(3)).str(), "3");
  EXPECT_EQ(Rational(7, 2).floor(), 3);
  EXPECT_EQ(Rational(-7, 2).floor(), -4);
  EXPECT_EQ(Rational(-7, 2).ceil(), -3);
}

TEST(Rational, MatchesGmpOnRandomArithmetic) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> dist(-(std::int64_t{1} << 40), std::int64_t{1} << 40);
  Rational acc(1);
  mpq_class ref(1);
  for (int i = 0; i < 2000; ++i) {
    std::int64_t n = dist(rng), d = dist(rng);
    if (d == 0) d = 1;
    const Rational x(n, d);
    mpq_class qx(n, d);
    qx.canonicalize();
    switch (i % 4) {
      case 0: acc += x; ref += qx; break;
      case 1: acc -= x; ref -= qx; break;
      case 2: acc *= x; ref *= qx; break;
      default:
        if (n != 0) { acc /= x; ref /= qx; }
    }
    if (i % 50 == 0) {  // keep sizes moderate
      acc = Rational(n % 97 + 1, 3);
      ref = mpq_class(n % 97 + 1, 3);
      ref.canonicalize();
    }
    ASSERT_EQ(acc.to_mpq(), ref) << "step " << i;
    ASSERT_EQ(acc <=> Rational(0), ref.get_num() > 0 ? std::strong_ordering::greater
                                   : ref.get_num() < 0 ? std::strong_ordering::less
                                                       : std::strong_ordering::equal);
  }
}

TEST(Lp, KnapsackVertex) {
  // x >= 0, 13/100 x1 + 41/200 x2 <= 1
  RatMatrix a = RatMatrix::from_rows({{-1, 0}, {0, -1}, {Rational(13, 100), Rational(41, 200)}}, 2);
  RatVector b{0, 0, 1};
  auto res = lp_optimize(a, b, RatVector{1, 0}, Sense::Maximize);
  ASSERT_EQ(res.status, LpStatus::Optimal);
  EXPECT_EQ(res.value, Rational(100, 13));
  EXPECT_EQ(res.x, (RatVector{Rational(100, 13), 0}));
}

TEST(Lp, Infeasible) {
  RatMatrix a = RatMatrix::from_rows({{1}, {-1}}, 1);
  auto res = lp_optimize(a, RatVector{-1, 0}, RatVector{0}, Sense::Minimize);
  EXPECT_EQ(res.status, LpStatus::Infeasible);
}

TEST(Lp, Unbounded) {
  RatMatrix a = RatMatrix::from_rows({{-1}}, 1);
  auto res = lp_optimize(a, RatVector{0}, RatVector{1}, Sense::Maximize);
  EXPECT_EQ(res.status, LpStatus::Unbounded);
}

TEST(Lp, DimensionMismatchIsInputError) {
  RatMatrix a = RatMatrix::from_rows({{1, 1}}, 2);
  EXPECT_THROW(lp_optimize(a, RatVector{1, 2}, RatVector{1, 1}, Sense::Maximize), InputError);
  EXPECT_THROW(lp_optimize(a, RatVector{1}, RatVector{1}, Sense::Maximize), InputError);
}

TEST(Lp, EqualitiesAndBounds) {
  LinearProgram lp;
  lp.a = RatMatrix::from_rows({{1, 1, 1}}, 3);
  lp.b = {4};
  lp.equality = {true};
  lp.c = {1, 2, 3};
  lp.sense = Sense::Minimize;
  lp.bounds = {{Rational(1), Rational(2)}, {Rational(0), std::nullopt}, {Rational(1), std::nullopt}};
  auto res = solve_lp(lp);
  ASSERT_EQ(res.status, LpStatus::Optimal);
  EXPECT_EQ(res.value, Rational(7));
  EXPECT_EQ(res.x, (RatVector{2, 1, 1}));
}

namespace {

// Best objective over all vertices obtained from d tight constraints.
std::optional<Rational> vertex_enumeration(const RatMatrix& a, const RatVector& b, const RatVector& c) {
  const std::size_t m = a.rows(), d = a.cols();
  std::optional<Rational> best;
  std::vector<std::size_t> idx(d);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
    if (pos == d) {
      RatMatrix sub(d, d);
      RatVector rhs(d);
      for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t k = 0; k < d; ++k) sub(r, k) = a(idx[r], k);
        rhs[r] = b[idx[r]];
      }
      auto x = solve_linear_system(sub, rhs);
      if (!x) return;
      for (std::size_t r = 0; r < m; ++r)
        if (dot(a.row(r), *x) > b[r]) return;
      Rational v = dot(c, *x);
      if (!best || v > *best) best = v;
      return;
    }
    for (std::size_t i = start; i < m; ++i) {
      idx[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
  return best;
}

}  // namespace

TEST(LpProperty, AgreesWithVertexEnumeration) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coef(-6, 6), dims(1, 3), rows(1, 6);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t d = dims(rng), m = rows(rng);
    std::vector<RatVector> rs;
    RatVector b;
    for (std::size_t i = 0; i < m; ++i) {
      RatVector r(d);
      for (auto& e : r) e = coef(rng);
      rs.push_back(r);
      b.push_back(coef(rng) + 3);
    }
    for (std::size_t j = 0; j < d; ++j) {  // box |x_j| <= 8 keeps it bounded
      RatVector up(d), down(d);
      up[j] = 1;
      down[j] = -1;
      rs.push_back(up);
      rs.push_back(down);
      b.push_back(8);
      b.push_back(8);
    }
    RatMatrix a = RatMatrix::from_rows(rs, d);
    RatVector c(d);
    for (auto& e : c) e = coef(rng);
    auto res = lp_optimize(a, b, c, Sense::Maximize);
    auto ref = vertex_enumeration(a, b, c);
    if (!ref) {
      EXPECT_EQ(res.status, LpStatus::Infeasible) << "trial " << trial;
      continue;
    }
    ASSERT_EQ(res.status, LpStatus::Optimal) << "trial " << trial;
    EXPECT_EQ(res.value, *ref) << "trial " << trial;
    EXPECT_EQ(dot(c, res.x), res.value);
    for (std::size_t r = 0; r < a.rows(); ++r) EXPECT_LE(dot(a.row(r), res.x), b[r]);
  }
}

TEST(LinearSystem, Examples) {
  EXPECT_EQ(solve_linear_system(RatMatrix::identity(2), RatVector{3, -2}), (RatVector{3, -2}));
  EXPECT_EQ(solve_linear_system(RatMatrix::from_rows({{2}}, 1), RatVector{7}), (RatVector{Rational(7, 2)}));
  EXPECT_FALSE(solve_linear_system(RatMatrix::from_rows({{1, 1}, {2, 2}}, 2), RatVector{1, 2}));
  EXPECT_THROW(solve_linear_system(RatMatrix::identity(2), RatVector{1}), InputError);
}

TEST(LinearSystem, RoundTrip) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> coef(-9, 9), dims(1, 5);
  int solved = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = dims(rng);
    RatMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) m(r, c) = Rational(coef(rng), 1 + (coef(rng) + 9) % 4);
    if (rank(m) < n) continue;
    RatVector x(n);
    for (auto& e : x) e = Rational(coef(rng), 1 + (coef(rng) + 9) % 5);
    const RatVector rhs = m * x;
    EXPECT_EQ(solve_linear_system(m, rhs), x);
    ++solved;
  }
  EXPECT_GT(solved, 200);
}

TEST(LinearSystem, IndependentSubsetIsGreedy) {
  std::vector<RatVector> v{{1, 0, 0}, {2, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0, 0, 3}};
  EXPECT_EQ(independent_subset(v), (std::vector<std::size_t>{0, 2, 4}));
  EXPECT_EQ(rank(RatMatrix::from_rows(v, 3)), 3u);
}
