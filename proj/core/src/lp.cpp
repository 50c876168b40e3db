#include "hmpack/lp.hpp"

#include <string>

#include "hmpack/errors.hpp"

namespace hmpack {
namespace {

thread_local std::size_t g_pivots = 0;

// Dense simplex tableau for: max cost^T x, rows (<= or ==) rhs, x >= 0.
class Tableau {
 public:
  Tableau(const RatMatrix& a, const RatVector& b, const std::vector<bool>& eq) {
    const std::size_t m = a.rows(), n = a.cols();
    structural_ = n;
    std::size_t slacks = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (!eq[i]) ++slacks;
    std::size_t arts = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (eq[i] || b[i].sign() < 0) ++arts;
    first_art_ = n + slacks;
    width_ = n + slacks + arts;
    rows_.assign(m, RatVector(width_ + 1));
    basis_.assign(m, 0);
    std::size_t s = n, art = first_art_;
    for (std::size_t i = 0; i < m; ++i) {
      const bool flip = b[i].sign() < 0;
      auto& row = rows_[i];
      for (std::size_t j = 0; j < n; ++j) row[j] = flip ? -a(i, j) : a(i, j);
      row[width_] = flip ? -b[i] : b[i];
      if (!eq[i]) {
        row[s] = flip ? Rational(-1) : Rational(1);
        if (!flip) basis_[i] = s;
        ++s;
      }
      if (eq[i] || flip) {
        row[art] = 1;
        basis_[i] = art;
        ++art;
      }
    }
  }

  bool has_artificials() const { return first_art_ < width_; }

  // Returns false when unbounded.
  bool optimize(const RatVector& cost, bool allow_art) {
    // reduced cost row: d_j = sum_i cost[B_i] * T_ij - cost_j
    obj_.assign(width_ + 1, Rational());
    for (std::size_t j = 0; j <= width_; ++j) {
      Rational d = j < width_ ? -cost[j] : Rational();
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        const Rational& cb = cost[basis_[i]];
        if (!cb.is_zero() && !rows_[i][j].is_zero()) d += cb * rows_[i][j];
      }
      obj_[j] = d;
    }
    for (;;) {
      std::size_t enter = width_;
      const std::size_t limit = allow_art ? width_ : first_art_;
      for (std::size_t j = 0; j < limit; ++j)
        if (obj_[j].sign() < 0) {
          enter = j;
          break;
        }
      if (enter == width_) return true;
      std::size_t leave = rows_.size();
      Rational best;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        const Rational& t = rows_[i][enter];
        if (t.sign() <= 0) continue;
        Rational ratio = rows_[i][width_] / t;
        if (leave == rows_.size() || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = std::move(ratio);
        }
      }
      if (leave == rows_.size()) return false;
      pivot(leave, enter);
    }
  }

  Rational objective_value() const { return obj_[width_]; }

  // Pivots artificial variables out of the basis after phase one; drops redundant rows.
  void drive_out_artificials() {
    for (std::size_t i = 0; i < rows_.size();) {
      if (basis_[i] < first_art_) {
        ++i;
        continue;
      }
      std::size_t col = first_art_;
      for (std::size_t j = 0; j < first_art_; ++j)
        if (!rows_[i][j].is_zero()) {
          col = j;
          break;
        }
      if (col == first_art_) {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
        continue;
      }
      pivot(i, col);
      ++i;
    }
  }

  RatVector structural_solution() const {
    RatVector x(structural_);
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (basis_[i] < structural_) x[basis_[i]] = rows_[i][width_];
    return x;
  }

  std::size_t width() const { return width_; }
  std::size_t first_artificial() const { return first_art_; }

 private:
  void pivot(std::size_t r, std::size_t c) {
    ++g_pivots;
    auto& prow = rows_[r];
    const Rational inv = Rational(1) / prow[c];
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j <= width_; ++j) {
      if (prow[j].is_zero()) continue;
      prow[j] *= inv;
      nz.push_back(j);
    }
    auto reduce = [&](RatVector& row) {
      if (row[c].is_zero()) return;
      const Rational f = row[c];
      for (std::size_t j : nz) row[j] -= f * prow[j];
    };
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (i != r) reduce(rows_[i]);
    if (!obj_.empty()) reduce(obj_);
    basis_[r] = c;
  }

  std::size_t structural_ = 0;
  std::size_t first_art_ = 0;
  std::size_t width_ = 0;
  std::vector<RatVector> rows_;
  std::vector<std::size_t> basis_;
  RatVector obj_;
};

}  // namespace

std::size_t lp_pivot_count() { return g_pivots; }

LpResult solve_lp(const LinearProgram& lp) {
  const std::size_t m = lp.a.rows(), n = lp.a.cols();
  if (lp.b.size() != m) throw InputError("LP: rhs has " + std::to_string(lp.b.size()) +
                                         " entries for " + std::to_string(m) + " rows");
  if (lp.c.size() != n) throw InputError("LP: objective length does not match columns");
  if (!lp.equality.empty() && lp.equality.size() != m)
    throw InputError("LP: equality flags do not match rows");
  if (!lp.bounds.empty() && lp.bounds.size() != n)
    throw InputError("LP: bounds do not match columns");

  // Substitute x_j = offset_j + sum over its columns of sign * x'.
  struct Column {
    std::size_t var;
    int sign;
  };
  std::vector<Column> cols;
  RatVector offset(n);
  std::vector<std::pair<std::size_t, Rational>> range_rows;  // column, width
  for (std::size_t j = 0; j < n; ++j) {
    const VarBounds vb = lp.bounds.empty() ? VarBounds{} : lp.bounds[j];
    if (vb.lower) {
      offset[j] = *vb.lower;
      cols.push_back({j, +1});
      if (vb.upper) {
        if (*vb.upper < *vb.lower) return {};
        range_rows.emplace_back(cols.size() - 1, *vb.upper - *vb.lower);
      }
    } else if (vb.upper) {
      offset[j] = *vb.upper;
      cols.push_back({j, -1});
    } else {
      cols.push_back({j, +1});
      cols.push_back({j, -1});
    }
  }
  const std::size_t nc = cols.size();
  const std::size_t total_rows = m + range_rows.size();
  RatMatrix a(total_rows, nc);
  RatVector b(total_rows);
  std::vector<bool> eq(total_rows, false);
  for (std::size_t i = 0; i < m; ++i) {
    Rational rhs = lp.b[i];
    for (std::size_t j = 0; j < n; ++j)
      if (!lp.a(i, j).is_zero() && !offset[j].is_zero()) rhs -= lp.a(i, j) * offset[j];
    b[i] = rhs;
    for (std::size_t k = 0; k < nc; ++k) {
      const Rational& v = lp.a(i, cols[k].var);
      if (!v.is_zero()) a(i, k) = cols[k].sign > 0 ? v : -v;
    }
    eq[i] = !lp.equality.empty() && lp.equality[i];
  }
  for (std::size_t r = 0; r < range_rows.size(); ++r) {
    a(m + r, range_rows[r].first) = 1;
    b[m + r] = range_rows[r].second;
  }
  RatVector cost(nc);
  const bool maximize = lp.sense == Sense::Maximize;
  for (std::size_t k = 0; k < nc; ++k) {
    Rational v = cols[k].sign > 0 ? lp.c[cols[k].var] : -lp.c[cols[k].var];
    cost[k] = maximize ? v : -v;
  }

  Tableau t(a, b, eq);
  if (t.has_artificials()) {
    RatVector phase1(t.width());
    for (std::size_t j = t.first_artificial(); j < t.width(); ++j) phase1[j] = -1;
    t.optimize(phase1, true);
    if (t.objective_value().sign() < 0) return {};
    t.drive_out_artificials();
  }
  RatVector full_cost(t.width());
  for (std::size_t k = 0; k < nc; ++k) full_cost[k] = cost[k];
  LpResult res;
  if (!t.optimize(full_cost, false)) {
    res.status = LpStatus::Unbounded;
    return res;
  }
  RatVector xp = t.structural_solution();
  res.x = offset;
  for (std::size_t k = 0; k < nc; ++k)
    if (!xp[k].is_zero()) res.x[cols[k].var] += cols[k].sign > 0 ? xp[k] : -xp[k];
  res.value = dot(lp.c, res.x);
  res.status = LpStatus::Optimal;
  return res;
}

LpResult lp_optimize(const RatMatrix& a, std::span<const Rational> b, std::span<const Rational> c,
                     Sense sense) {
  LinearProgram lp;
  lp.a = a;
  lp.b.assign(b.begin(), b.end());
  lp.c.assign(c.begin(), c.end());
  lp.sense = sense;
  return solve_lp(lp);
}

}  // namespace hmpack
