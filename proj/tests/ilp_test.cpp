#include <gtest/gtest.h>

#include <random>

#include "hmpack/errors.hpp"
#include "hmpack/ilp.hpp"

using namespace hmpack;

namespace {

bool satisfies(const IlpProblem& p, const IntVector& x) {
  for (std::size_t i = 0; i < p.a.size(); ++i) {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < p.n; ++j) s += p.a[i][j] * x[j];
    const bool eq = !p.equality.empty() && p.equality[i];
    if (eq ? s != p.b[i] : s > p.b[i]) return false;
  }
  for (std::size_t j = 0; j < p.n; ++j) {
    if (p.lower[j] && x[j] < *p.lower[j]) return false;
    if (p.upper[j] && x[j] > *p.upper[j]) return false;
  }
  return true;
}

bool enumerate_box(const IlpProblem& p, std::int64_t lo, std::int64_t hi) {
  IntVector x(p.n, lo);
  for (;;) {
    if (satisfies(p, x)) return true;
    std::size_t j = 0;
    while (j < p.n && x[j] == hi) x[j++] = lo;
    if (j == p.n) return false;
    ++x[j];
  }
}

}  // namespace

TEST(Ilp, Examples) {
  IlpProblem p(2);
  p.add_row({2, 3}, 7, true);
  p.set_bounds(0, 0, std::nullopt);
  p.set_bounds(1, 0, std::nullopt);
  auto r = ilp_feasible(p);
  ASSERT_TRUE(r.feasible);
  EXPECT_EQ(r.x, (IntVector{2, 1}));

  IlpProblem parity(1);
  parity.add_row({2}, 1, true);
  EXPECT_FALSE(ilp_feasible(parity).feasible);

  IlpProblem empty(1);
  empty.add_row({-1}, 0);
  empty.add_row({1}, -1);
  EXPECT_FALSE(ilp_feasible(empty).feasible);
}

TEST(Ilp, UnboundedNeedsBounds) {
  IlpProblem p(2);
  p.add_row({1, -1}, 0);
  EXPECT_THROW(ilp_feasible(p), InputError);
  p.set_bounds(0, -3, 3);
  p.set_bounds(1, -3, 3);
  EXPECT_TRUE(ilp_feasible(p).feasible);
}

TEST(Ilp, NodeBudget) {
  // 2x1 + 2x2 + ... = odd with wide bounds: the relaxation never proves infeasibility quickly
  IlpProblem p(3);
  p.add_row({2, 2, 2}, 101, true);
  for (std::size_t j = 0; j < 3; ++j) p.set_bounds(j, 0, 100);
  IlpOptions tiny;
  tiny.node_budget = 3;
  try {
    (void)ilp_feasible(p, tiny);
    FAIL();
  } catch (const ResourceError& e) {
    EXPECT_EQ(e.budget(), "ilp_nodes");
  }
  EXPECT_FALSE(ilp_feasible(p).feasible);
}

TEST(Ilp, LllReducesAndKeepsAnswers) {
  auto u = lll_reduce({{1, 0}, {0, 1}, {100, 101}}, 2);
  ASSERT_TRUE(u);
  EXPECT_EQ(std::abs((*u)[0][0] * (*u)[1][1] - (*u)[0][1] * (*u)[1][0]), 1);
  EXPECT_FALSE(lll_reduce({{1, 2}, {2, 4}}, 2));
}

TEST(IlpProperty, AgreesWithEnumeration) {
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<int> coef(-10, 10), vars(1, 5), rows(1, 5);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = vars(rng);
    IlpProblem p(n);
    const std::size_t m = rows(rng);
    for (std::size_t i = 0; i < m; ++i) {
      IntVector r(n);
      for (auto& e : r) e = coef(rng);
      p.add_row(r, coef(rng) + 4, i == 0 && t % 3 == 0);
    }
    for (std::size_t j = 0; j < n; ++j) p.set_bounds(j, -3, 3);
    const bool expected = enumerate_box(p, -3, 3);
    for (bool lll : {false, true}) {
      IlpOptions opt;
      opt.lll = lll;
      auto r = ilp_feasible(p, opt);
      ASSERT_EQ(r.feasible, expected) << "trial " << t << " lll " << lll;
      if (r.feasible) EXPECT_TRUE(satisfies(p, r.x));
    }
  }
}
