#include "hmpack/ilp.hpp"

#include <algorithm>

#include "hmpack/errors.hpp"
#include "hmpack/lp.hpp"

namespace hmpack {

void IlpProblem::add_row(IntVector row, std::int64_t rhs, bool eq) {
  if (row.size() != n) throw InputError("ILP row has wrong length");
  if (!equality.empty() || eq) {
    equality.resize(a.size(), false);
    equality.push_back(eq);
  }
  a.push_back(std::move(row));
  b.push_back(rhs);
}

void IlpProblem::set_bounds(std::size_t j, std::optional<std::int64_t> lo, std::optional<std::int64_t> hi) {
  lower.resize(n);
  upper.resize(n);
  lower.at(j) = lo;
  upper.at(j) = hi;
}

namespace {

using i128 = __int128;

std::int64_t floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  if (q > INT64_MAX) return INT64_MAX;
  if (q < INT64_MIN) return INT64_MIN;
  return static_cast<std::int64_t>(q);
}

std::int64_t ceil_div(i128 a, i128 b) { return -floor_div(-a, b); }

struct Row {
  const IntVector* a;
  std::int64_t b;
  int sign;  // +1: a x <= b, -1: -a x <= -b
};

class BranchAndBound {
 public:
  BranchAndBound(const IlpProblem& p, const IlpOptions& opt) : p_(p), opt_(opt) {
    const std::size_t m = p.a.size();
    for (std::size_t i = 0; i < m; ++i) {
      rows_.push_back({&p.a[i], p.b[i], 1});
      if (!p.equality.empty() && p.equality[i]) rows_.push_back({&p.a[i], p.b[i], -1});
    }
    lp_.a = RatMatrix::from_int_rows(p.a, p.n);
    lp_.b = to_rational(p.b);
    lp_.equality = p.equality;
    lp_.c.assign(p.n, Rational());
    lp_.sense = Sense::Maximize;
  }

  IlpResult run() {
    IlpResult res;
    const std::size_t n = p_.n;
    if (n == 0) {
      res.feasible = std::all_of(rows_.begin(), rows_.end(), [](const Row& r) { return r.sign * r.b >= 0; });
      return res;
    }
    IntVector lo(n), hi(n);
    std::vector<VarBounds> vb(n);
    for (std::size_t j = 0; j < n; ++j) {
      if (j < p_.lower.size() && p_.lower[j]) vb[j].lower = Rational(*p_.lower[j]);
      if (j < p_.upper.size() && p_.upper[j]) vb[j].upper = Rational(*p_.upper[j]);
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (vb[j].lower && vb[j].upper) {
        lo[j] = vb[j].lower->to_int64();
        hi[j] = vb[j].upper->to_int64();
        continue;
      }
      LinearProgram lp = lp_;
      lp.bounds = vb;
      lp.c.assign(n, Rational());
      lp.c[j] = 1;
      lp.sense = Sense::Maximize;
      auto up = solve_lp(lp);
      if (up.status == LpStatus::Infeasible) return res;
      if (up.status == LpStatus::Unbounded && !vb[j].upper)
        throw InputError("ILP relaxation is unbounded in variable " + std::to_string(j));
      lp.sense = Sense::Minimize;
      auto down = solve_lp(lp);
      if (down.status == LpStatus::Unbounded && !vb[j].lower)
        throw InputError("ILP relaxation is unbounded in variable " + std::to_string(j));
      lo[j] = vb[j].lower ? vb[j].lower->to_int64() : to_int64(down.value.ceil());
      hi[j] = vb[j].upper ? vb[j].upper->to_int64() : to_int64(up.value.floor());
    }

    std::vector<std::pair<IntVector, IntVector>> stack;
    stack.emplace_back(std::move(lo), std::move(hi));
    while (!stack.empty()) {
      auto [l, h] = std::move(stack.back());
      stack.pop_back();
      if (++res.nodes > opt_.node_budget)
        throw ResourceError("ilp_nodes", "branch-and-bound exceeded budget ilp_nodes=" +
                                             std::to_string(opt_.node_budget));
      if (!propagate(l, h)) continue;
      if (l == h) {
        if (satisfies(l)) {
          res.feasible = true;
          res.x = l;
          return res;
        }
        continue;
      }
      LinearProgram lp = lp_;
      lp.bounds.resize(n);
      for (std::size_t j = 0; j < n; ++j) lp.bounds[j] = {Rational(l[j]), Rational(h[j])};
      auto sol = solve_lp(lp);
      if (sol.status != LpStatus::Optimal) continue;
      std::size_t branch = n;
      Rational best_gap;
      for (std::size_t j = 0; j < n; ++j) {
        if (sol.x[j].is_integer()) continue;
        const Rational frac = sol.x[j] - Rational(sol.x[j].floor());
        const Rational gap = abs(frac - Rational(1, 2));
        if (branch == n || gap < best_gap) {
          branch = j;
          best_gap = gap;
        }
      }
      if (branch == n) {
        IntVector x(n);
        for (std::size_t j = 0; j < n; ++j) x[j] = sol.x[j].to_int64();
        HMPACK_ASSERT(satisfies(x), "integral LP vertex violates the ILP");
        res.feasible = true;
        res.x = std::move(x);
        return res;
      }
      const auto fl = to_int64(sol.x[branch].floor());
      const bool floor_first = sol.x[branch] - Rational(fl) < Rational(1, 2);
      auto down_hi = h, up_lo = l;
      down_hi[branch] = fl;
      up_lo[branch] = fl + 1;
      if (floor_first) {
        stack.emplace_back(std::move(up_lo), h);
        stack.emplace_back(l, std::move(down_hi));
      } else {
        stack.emplace_back(l, std::move(down_hi));
        stack.emplace_back(std::move(up_lo), h);
      }
    }
    return res;
  }

 private:
  bool satisfies(const IntVector& x) const {
    for (const auto& r : rows_) {
      i128 s = 0;
      for (std::size_t j = 0; j < x.size(); ++j) s += i128((*r.a)[j]) * x[j];
      if (r.sign * s > r.sign * i128(r.b)) return false;
    }
    return true;
  }

  // Interval propagation over all rows until nothing changes (or a pass limit).
  bool propagate(IntVector& lo, IntVector& hi) const {
    const std::size_t n = lo.size();
    for (int pass = 0; pass < 50; ++pass) {
      bool changed = false;
      for (const auto& r : rows_) {
        i128 min_act = 0;
        for (std::size_t j = 0; j < n; ++j) {
          const i128 c = i128(r.sign) * (*r.a)[j];
          min_act += c > 0 ? c * lo[j] : c * hi[j];
        }
        const i128 rhs = i128(r.sign) * r.b;
        if (min_act > rhs) return false;
        for (std::size_t j = 0; j < n; ++j) {
          const i128 c = i128(r.sign) * (*r.a)[j];
          if (c == 0) continue;
          const i128 rest = min_act - (c > 0 ? c * lo[j] : c * hi[j]);
          if (c > 0) {
            const auto nh = floor_div(rhs - rest, c);
            if (nh < hi[j]) {
              hi[j] = nh;
              changed = true;
            }
          } else {
            const auto nl = ceil_div(rhs - rest, c);
            if (nl > lo[j]) {
              lo[j] = nl;
              changed = true;
            }
          }
          if (lo[j] > hi[j]) return false;
        }
      }
      if (!changed) return true;
    }
    return true;
  }

  const IlpProblem& p_;
  const IlpOptions& opt_;
  std::vector<Row> rows_;
  LinearProgram lp_;
};

}  // namespace

std::optional<std::vector<IntVector>> lll_reduce(const std::vector<IntVector>& basis_rows, std::size_t cols) {
  const std::size_t n = cols;
  const std::size_t m = basis_rows.size();
  std::vector<RatVector> b(n, RatVector(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) b[j][i] = basis_rows[i][j];
  if (independent_subset(b).size() != n) return std::nullopt;
  std::vector<IntVector> u(n, IntVector(n, 0));  // u[j] is column j of U
  for (std::size_t j = 0; j < n; ++j) u[j][j] = 1;

  std::vector<RatVector> bs;
  std::vector<RatVector> mu;
  std::vector<Rational> norm;
  auto gram_schmidt = [&] {
    bs.assign(n, RatVector(m));
    mu.assign(n, RatVector(n));
    norm.assign(n, Rational());
    for (std::size_t i = 0; i < n; ++i) {
      bs[i] = b[i];
      for (std::size_t k = 0; k < i; ++k) {
        mu[i][k] = dot(b[i], bs[k]) / norm[k];
        for (std::size_t t = 0; t < m; ++t) bs[i][t] -= mu[i][k] * bs[k][t];
      }
      norm[i] = dot(bs[i], bs[i]);
    }
  };
  gram_schmidt();
  const Rational delta(3, 4);
  std::size_t k = 1;
  std::size_t guard = 0;
  while (k < n) {
    HMPACK_ASSERT(++guard < 1000000, "LLL did not terminate");
    for (std::size_t jj = k; jj-- > 0;) {
      const BigInt q = (mu[k][jj] + Rational(1, 2)).floor();
      if (q == 0) continue;
      const Rational qr(q);
      const auto qi = to_int64(q);
      for (std::size_t t = 0; t < m; ++t) b[k][t] -= qr * b[jj][t];
      for (std::size_t t = 0; t < n; ++t) u[k][t] -= qi * u[jj][t];
      gram_schmidt();
    }
    if (norm[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * norm[k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      std::swap(u[k], u[k - 1]);
      gram_schmidt();
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
  // return U row-major
  std::vector<IntVector> out(n, IntVector(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out[r][c] = u[c][r];
  return out;
}

IlpResult ilp_feasible(const IlpProblem& p, const IlpOptions& options) {
  if (p.a.size() != p.b.size()) throw InputError("ILP: A and b have different row counts");
  for (const auto& row : p.a)
    if (row.size() != p.n) throw InputError("ILP row has wrong length");
  if (!p.equality.empty() && p.equality.size() != p.a.size())
    throw InputError("ILP: equality flags do not match the rows");

  if (options.lll && p.n > 0 && !p.a.empty()) {
    if (auto u = lll_reduce(p.a, p.n)) {
      // x = U w; rewrite rows and bounds in terms of w
      IlpProblem q(p.n);
      auto times_u = [&](const IntVector& row) {
        IntVector out(p.n, 0);
        for (std::size_t c = 0; c < p.n; ++c) {
          i128 s = 0;
          for (std::size_t r = 0; r < p.n; ++r) s += i128(row[r]) * (*u)[r][c];
          if (s > INT64_MAX || s < INT64_MIN) throw InputError("LLL transform overflows 64 bits");
          out[c] = static_cast<std::int64_t>(s);
        }
        return out;
      };
      for (std::size_t i = 0; i < p.a.size(); ++i)
        q.add_row(times_u(p.a[i]), p.b[i], !p.equality.empty() && p.equality[i]);
      for (std::size_t j = 0; j < p.n; ++j) {
        IntVector e(p.n, 0);
        e[j] = 1;
        if (j < p.upper.size() && p.upper[j]) q.add_row(times_u(e), *p.upper[j]);
        e[j] = -1;
        if (j < p.lower.size() && p.lower[j]) q.add_row(times_u(e), -*p.lower[j]);
      }
      IlpOptions inner = options;
      inner.lll = false;
      auto res = ilp_feasible(q, inner);
      if (res.feasible) {
        IntVector x(p.n, 0);
        for (std::size_t r = 0; r < p.n; ++r)
          for (std::size_t c = 0; c < p.n; ++c) x[r] += (*u)[r][c] * res.x[c];
        res.x = std::move(x);
      }
      return res;
    }
  }
  return BranchAndBound(p, options).run();
}

}  // namespace hmpack
