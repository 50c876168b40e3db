#include "hmpack/geometry.hpp"

#include <algorithm>
#include <map>

#include "hmpack/errors.hpp"
#include "hmpack/pp_frame.hpp"

namespace hmpack {

void Parallelepiped::validate() const {
  for (const auto& v : directions)
    HMPACK_ASSERT(v.size() == center.size(), "parallelepiped direction has wrong dimension");
  HMPACK_ASSERT(independent_subset(directions).size() == directions.size(),
                "parallelepiped directions are linearly dependent");
  (void)pp_vertices(*this);
}

std::vector<IntPoint> pp_vertices(const Parallelepiped& pp) {
  const std::size_t k = pp.rank(), d = pp.dim();
  HMPACK_ASSERT(k < 31, "parallelepiped rank too large");
  std::vector<IntPoint> out;
  out.reserve(std::size_t{1} << k);
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    RatVector v = pp.center;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        if (pp.directions[i][j].is_zero()) continue;
        if (mask >> i & 1)
          v[j] += pp.directions[i][j];
        else
          v[j] -= pp.directions[i][j];
      }
    IntPoint p(d);
    for (std::size_t j = 0; j < d; ++j) {
      HMPACK_ASSERT(v[j].is_integer(), "parallelepiped has a fractional vertex");
      p[j] = v[j].to_int64();
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::optional<RatVector> pp_coordinates(const Parallelepiped& pp, const IntPoint& x) {
  return PpFrame(pp).coordinates(x);
}

bool pp_inside(const Parallelepiped& pp, const Polytope& p) {
  for (const auto& v : pp_vertices(pp))
    if (!p.contains(v)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// PpFrame

PpFrame::PpFrame(const Parallelepiped& pp) : pp_(&pp) {
  const std::size_t k = pp.rank(), d = pp.dim();
  if (k == 0) return;
  // pick k independent rows of the d x k direction matrix
  std::vector<RatVector> rows(d, RatVector(k));
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < k; ++i) rows[j][i] = pp.directions[i][j];
  rows_ = independent_subset(rows);
  HMPACK_ASSERT(rows_.size() == k, "parallelepiped directions are linearly dependent");
  // invert the k x k submatrix by Gauss-Jordan
  RatMatrix aug(k, 2 * k);
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t i = 0; i < k; ++i) aug(r, i) = rows[rows_[r]][i];
    aug(r, k + r) = 1;
  }
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t p = col;
    while (aug(p, col).is_zero()) ++p;
    if (p != col)
      for (std::size_t c = 0; c < 2 * k; ++c) std::swap(aug(p, c), aug(col, c));
    const Rational inv = Rational(1) / aug(col, col);
    for (std::size_t c = 0; c < 2 * k; ++c) aug(col, c) *= inv;
    for (std::size_t r = 0; r < k; ++r) {
      if (r == col || aug(r, col).is_zero()) continue;
      const Rational f = aug(r, col);
      for (std::size_t c = 0; c < 2 * k; ++c)
        if (!aug(col, c).is_zero()) aug(r, c) -= f * aug(col, c);
    }
  }
  inverse_ = RatMatrix(k, k);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < k; ++c) inverse_(r, c) = aug(r, k + c);
}

std::optional<RatVector> PpFrame::coordinates(std::span<const std::int64_t> x) const {
  const auto& pp = *pp_;
  const std::size_t k = pp.rank(), d = pp.dim();
  if (x.size() != d) throw InputError("point dimension does not match parallelepiped");
  RatVector diff(d);
  for (std::size_t j = 0; j < d; ++j) diff[j] = Rational(x[j]) - pp.center[j];
  if (k == 0) {
    for (const auto& e : diff)
      if (!e.is_zero()) return std::nullopt;
    return RatVector{};
  }
  RatVector alpha(k);
  for (std::size_t i = 0; i < k; ++i) {
    Rational s;
    for (std::size_t r = 0; r < k; ++r)
      if (!inverse_(i, r).is_zero() && !diff[rows_[r]].is_zero()) s += inverse_(i, r) * diff[rows_[r]];
    if (abs(s) > Rational(1)) return std::nullopt;
    alpha[i] = std::move(s);
  }
  for (std::size_t j = 0; j < d; ++j) {
    Rational s;
    for (std::size_t i = 0; i < k; ++i)
      if (!pp.directions[i][j].is_zero() && !alpha[i].is_zero()) s += alpha[i] * pp.directions[i][j];
    if (s != diff[j]) return std::nullopt;
  }
  return alpha;
}

// ---------------------------------------------------------------------------
// Cells

std::vector<Rational> alpha_grid(std::size_t d, const Rational& limit) {
  if (d == 0) throw InputError("alpha grid needs d >= 1");
  const Rational ratio = Rational(1) + Rational(1, static_cast<std::int64_t>(d * d));
  std::vector<Rational> grid{Rational(0), Rational(1) / ratio};
  while (grid.back() <= limit) grid.push_back(grid.back() * ratio);
  return grid;
}

std::size_t alpha_index(const std::vector<Rational>& grid, std::int64_t slack) {
  if (slack < 0) throw InputError("negative slack has no grid interval");
  const Rational s(slack);
  if (s >= grid.back()) throw InputError("slack beyond the alpha grid");
  // first grid value strictly greater than s, minus one
  auto it = std::upper_bound(grid.begin(), grid.end(), s);
  return static_cast<std::size_t>(it - grid.begin()) - 1;
}

std::vector<Cell> cell_partition(const Polytope& p, const std::vector<IntPoint>& lattice) {
  std::int64_t max_slack = 0;
  for (const auto& x : lattice)
    for (std::size_t i = 0; i < p.rows(); ++i) max_slack = std::max(max_slack, p.slack(i, x));
  const auto grid = alpha_grid(p.dim(), Rational(max_slack));
  std::map<std::vector<std::size_t>, Cell> cells;
  for (const auto& x : lattice) {
    std::vector<std::size_t> sig(p.rows());
    for (std::size_t i = 0; i < p.rows(); ++i) sig[i] = alpha_index(grid, p.slack(i, x));
    auto& cell = cells[sig];
    if (cell.members.empty()) cell.signature = sig;
    cell.members.push_back(x);
  }
  std::vector<Cell> out;
  out.reserve(cells.size());
  for (auto& [sig, cell] : cells) {
    std::sort(cell.members.begin(), cell.members.end());
    cell.anchor = cell.members.front();
    out.push_back(std::move(cell));
  }
  return out;
}

std::vector<Cell> cell_partition(const Polytope& p, const EnumerationLimits& limits) {
  return cell_partition(p, lattice_points(p, limits));
}

// ---------------------------------------------------------------------------
// Cover

namespace {

template <class Fn>
void for_each_combination(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    if (!fn(idx)) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::int64_t ceil_sqrt(std::int64_t r) {
  std::int64_t s = 0;
  while (s * s < r) ++s;
  return s;
}

RatVector diff_vec(const IntPoint& a, const IntPoint& b) {
  RatVector v(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) v[j] = a[j] - b[j];
  return v;
}

class CoverBuilder {
 public:
  CoverBuilder(const Polytope& p, const CoverOptions& opt) : p_(p), opt_(opt) {}

  Cover run() {
    cover_.lattice = lattice_points(p_, opt_.limits);
    const auto& lattice = cover_.lattice;
    cover_.stats.lattice_points = lattice.size();
    covered_.assign(lattice.size(), false);
    if (lattice.empty()) return std::move(cover_);

    if (affine_dimension(lattice) == 0) {
      add_point(lattice.front());
      return std::move(cover_);
    }
    if (opt_.global_phase) global_phase();
    cell_phase();
    for (bool c : covered_) HMPACK_ASSERT(c, "cover left a lattice point uncovered");
    return std::move(cover_);
  }

 private:
  std::size_t index_of(const IntPoint& x) const {
    auto it = std::lower_bound(cover_.lattice.begin(), cover_.lattice.end(), x);
    HMPACK_ASSERT(it != cover_.lattice.end() && *it == x, "point is not a lattice point of P");
    return static_cast<std::size_t>(it - cover_.lattice.begin());
  }

  std::vector<std::size_t> contained(const Parallelepiped& pp) const {
    PpFrame frame(pp);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < cover_.lattice.size(); ++i)
      if (frame.coordinates(cover_.lattice[i])) out.push_back(i);
    return out;
  }

  std::size_t add_if_useful(Parallelepiped pp) {
    std::size_t fresh = 0;
    auto inside = contained(pp);
    for (auto i : inside)
      if (!covered_[i]) ++fresh;
    if (fresh == 0) return 0;
    for (auto i : inside) covered_[i] = true;
    cover_.parallelepipeds.push_back(std::move(pp));
    return fresh;
  }

  void add_point(const IntPoint& x) {
    Parallelepiped pp{to_rational(x), {}};
    covered_[index_of(x)] = true;
    cover_.parallelepipeds.push_back(std::move(pp));
  }

  // Parallelepipeds y0 + sum t_i (y_i - y0), t in [0,1]^r, over integer-hull vertices.
  void global_phase() {
    const auto& lattice = cover_.lattice;
    const auto verts = hull_vertices(lattice);
    const auto r = static_cast<std::size_t>(affine_dimension(lattice));
    if (verts.size() > opt_.global_vertex_cap) return;
    std::vector<Parallelepiped> candidates;
    std::vector<std::vector<IntPoint>> seen;
    for (std::size_t a = 0; a < verts.size() && candidates.size() < opt_.global_candidate_cap; ++a) {
      std::vector<std::size_t> others;
      for (std::size_t b = 0; b < verts.size(); ++b)
        if (b != a) others.push_back(b);
      for_each_combination(others.size(), r, [&](const std::vector<std::size_t>& comb) {
        std::vector<RatVector> edges;
        for (auto c : comb) edges.push_back(diff_vec(verts[others[c]], verts[a]));
        if (independent_subset(edges).size() != r) return true;
        Parallelepiped pp;
        pp.center = to_rational(verts[a]);
        for (auto& e : edges) {
          for (auto& v : e) v /= Rational(2);
          for (std::size_t j = 0; j < e.size(); ++j) pp.center[j] += e[j];
          pp.directions.push_back(e);
        }
        if (!pp_inside(pp, p_)) return true;
        auto vs = pp_vertices(pp);
        std::sort(vs.begin(), vs.end());
        if (std::find(seen.begin(), seen.end(), vs) != seen.end()) return true;
        seen.push_back(std::move(vs));
        candidates.push_back(std::move(pp));
        return candidates.size() < opt_.global_candidate_cap;
      });
    }
    std::vector<std::vector<std::size_t>> reach;
    reach.reserve(candidates.size());
    for (const auto& c : candidates) reach.push_back(contained(c));
    std::vector<bool> used(candidates.size(), false);
    for (;;) {
      std::size_t best = candidates.size(), best_gain = 0;
      for (std::size_t c = 0; c < candidates.size(); ++c) {
        if (used[c]) continue;
        std::size_t gain = 0;
        for (auto i : reach[c])
          if (!covered_[i]) ++gain;
        if (gain > best_gain) {
          best_gain = gain;
          best = c;
        }
      }
      if (best == candidates.size()) break;
      used[best] = true;
      for (auto i : reach[best]) covered_[i] = true;
      cover_.parallelepipeds.push_back(candidates[best]);
      ++cover_.stats.global_parallelepipeds;
    }
  }

  void cell_phase() {
    const auto cells = cell_partition(p_, cover_.lattice);
    cover_.stats.cells = cells.size();
    for (const auto& cell : cells) {
      bool pending = false;
      for (const auto& x : cell.members) pending = pending || !covered_[index_of(x)];
      if (!pending) continue;
      ++cover_.stats.cells_built;
      build_cell(cell);
      for (const auto& x : cell.members) {
        if (covered_[index_of(x)]) continue;
        ++cover_.stats.point_fallbacks;
        add_point(x);
      }
    }
  }

  void build_cell(const Cell& cell) {
    const int rdim = affine_dimension(cell.members);
    if (rdim <= 0) return;
    const auto r = static_cast<std::size_t>(rdim);
    const IntPoint& x0 = cell.anchor;
    const RatVector center = to_rational(x0);

    // symmetric closure of the cell's integer hull about the anchor
    std::vector<RatVector> sym;
    for (const auto& v : hull_vertices(cell.members)) {
      if (v == x0) continue;
      RatVector plus(v.size()), minus(v.size());
      for (std::size_t j = 0; j < v.size(); ++j) {
        plus[j] = v[j];
        minus[j] = 2 * x0[j] - v[j];
      }
      sym.push_back(std::move(plus));
      sym.push_back(std::move(minus));
    }
    const auto ell = mvee_contact_points(sym, center);
    if (ell.used_fallback) ++cover_.stats.mvee_fallbacks;
    std::vector<RatVector> dirs;
    for (auto idx : ell.contact_indices) {
      RatVector u(center.size());
      for (std::size_t j = 0; j < u.size(); ++j) u[j] = sym[idx][j] - center[j];
      dirs.push_back(std::move(u));
    }
    const std::int64_t scale = ceil_sqrt(static_cast<std::int64_t>(r));
    for_each_combination(dirs.size(), r, [&](const std::vector<std::size_t>& comb) {
      std::vector<RatVector> chosen;
      for (auto c : comb) chosen.push_back(dirs[c]);
      if (independent_subset(chosen).size() != r) return true;
      for (std::int64_t t = scale; t >= 1; --t) {
        Parallelepiped pp{center, {}};
        for (const auto& u : chosen) {
          RatVector v = u;
          for (auto& e : v) e *= Rational(t);
          pp.directions.push_back(std::move(v));
        }
        if (pp_inside(pp, p_)) {
          if (t < scale) ++cover_.stats.shrunk;
          add_if_useful(std::move(pp));
          return true;
        }
      }
      ++cover_.stats.discarded;
      return true;
    });
  }

  const Polytope& p_;
  const CoverOptions& opt_;
  Cover cover_;
  std::vector<bool> covered_;
};

}  // namespace

Cover build_cover(const Polytope& p, const CoverOptions& options) {
  return CoverBuilder(p, options).run();
}

std::vector<Parallelepiped> parallelepiped_cover(const Polytope& p, const CoverOptions& options) {
  return build_cover(p, options).parallelepipeds;
}

}  // namespace hmpack
