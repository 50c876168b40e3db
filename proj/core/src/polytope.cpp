#include "hmpack/polytope.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "hmpack/errors.hpp"
#include "hmpack/lp.hpp"
#include "hmpack/text_tokens.hpp"

namespace hmpack {

Polytope::Polytope(std::vector<IntVector> a, IntVector b) : a_(std::move(a)), b_(std::move(b)) {
  if (a_.empty()) throw InputError("polytope needs at least one inequality");
  if (a_.size() != b_.size()) throw InputError("polytope: A and b have different row counts");
  dim_ = a_.front().size();
  if (dim_ == 0) throw InputError("polytope dimension must be at least 1");
  for (std::size_t i = 0; i < a_.size(); ++i) {
    if (a_[i].size() != dim_)
      throw InputError("polytope row " + std::to_string(i) + " has wrong length");
    for (auto v : a_[i]) delta_ = std::max(delta_, v < 0 ? -v : v);
    delta_ = std::max(delta_, b_[i] < 0 ? -b_[i] : b_[i]);
  }
}

Polytope Polytope::box(const IntPoint& lo, const IntPoint& hi) {
  if (lo.size() != hi.size()) throw InputError("box bounds differ in dimension");
  std::vector<IntVector> a;
  IntVector b;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    IntVector up(lo.size(), 0), down(lo.size(), 0);
    up[i] = 1;
    down[i] = -1;
    a.push_back(up);
    b.push_back(hi[i]);
    a.push_back(down);
    b.push_back(-lo[i]);
  }
  return Polytope(std::move(a), std::move(b));
}

Polytope Polytope::parse(std::string_view text) {
  TokenReader in(text);
  Polytope p = read(in);
  if (!in.at_end()) throw in.error("trailing data after polytope");
  return p;
}

Polytope Polytope::read(TokenReader& in) {
  const auto m = in.next_int("row count m");
  const auto d = in.next_int("dimension d");
  if (m < 1) throw InputError("1:1: polytope needs m >= 1 rows");
  if (d < 1) throw InputError("1:1: polytope needs d >= 1");
  std::vector<IntVector> a(static_cast<std::size_t>(m), IntVector(static_cast<std::size_t>(d)));
  IntVector b(static_cast<std::size_t>(m));
  for (std::int64_t i = 0; i < m; ++i) {
    for (std::int64_t j = 0; j < d; ++j) a[i][j] = in.next_int("matrix coefficient");
    b[i] = in.next_int("right-hand side");
  }
  return Polytope(std::move(a), std::move(b));
}

std::string Polytope::str() const {
  std::ostringstream os;
  os << rows() << ' ' << dim() << '\n';
  for (std::size_t i = 0; i < rows(); ++i) {
    for (auto v : a_[i]) os << v << ' ';
    os << b_[i] << '\n';
  }
  return os.str();
}

std::int64_t Polytope::slack(std::size_t i, std::span<const std::int64_t> x) const {
  if (x.size() != dim_) throw InputError("point dimension does not match polytope");
  __int128 s = b_[i];
  for (std::size_t j = 0; j < dim_; ++j) s -= __int128(a_[i][j]) * x[j];
  if (s > INT64_MAX || s < INT64_MIN) throw InputError("slack overflows 64 bits");
  return static_cast<std::int64_t>(s);
}

bool Polytope::contains(std::span<const std::int64_t> x) const {
  for (std::size_t i = 0; i < rows(); ++i)
    if (slack(i, x) < 0) return false;
  return true;
}

bool Polytope::contains(std::span<const Rational> x) const {
  if (x.size() != dim_) throw InputError("point dimension does not match polytope");
  for (std::size_t i = 0; i < rows(); ++i) {
    Rational s = b_[i];
    for (std::size_t j = 0; j < dim_; ++j)
      if (a_[i][j] != 0 && !x[j].is_zero()) s -= Rational(a_[i][j]) * x[j];
    if (s.sign() < 0) return false;
  }
  return true;
}

RatMatrix Polytope::a_rational() const { return RatMatrix::from_int_rows(a_, dim_); }

RatVector Polytope::b_rational() const { return to_rational(b_); }

Polytope Polytope::with_rows(const std::vector<IntVector>& a, const IntVector& b) const {
  auto na = a_;
  auto nb = b_;
  na.insert(na.end(), a.begin(), a.end());
  nb.insert(nb.end(), b.begin(), b.end());
  return Polytope(std::move(na), std::move(nb));
}

std::optional<std::vector<Interval>> coordinate_bounds(const Polytope& p) {
  const RatMatrix a = p.a_rational();
  const RatVector b = p.b_rational();
  std::vector<Interval> out;
  for (std::size_t j = 0; j < p.dim(); ++j) {
    RatVector c(p.dim());
    c[j] = 1;
    auto hi = lp_optimize(a, b, c, Sense::Maximize);
    if (hi.status == LpStatus::Infeasible) return std::vector<Interval>{};
    if (hi.status == LpStatus::Unbounded) return std::nullopt;
    auto lo = lp_optimize(a, b, c, Sense::Minimize);
    if (lo.status == LpStatus::Unbounded) return std::nullopt;
    out.push_back({lo.value, hi.value});
  }
  return out;
}

std::vector<IntPoint> lattice_points(const Polytope& p, const EnumerationLimits& limits) {
  auto bounds = coordinate_bounds(p);
  if (!bounds) throw InputError("lattice enumeration needs a bounded polytope");
  if (bounds->empty()) return {};
  const std::size_t d = p.dim();
  IntPoint lo(d), hi(d);
  BigInt volume = 1;
  for (std::size_t j = 0; j < d; ++j) {
    lo[j] = to_int64((*bounds)[j].lo.ceil());
    hi[j] = to_int64((*bounds)[j].hi.floor());
    if (hi[j] < lo[j]) return {};
    volume *= BigInt(static_cast<long>(hi[j] - lo[j] + 1));
  }
  if (volume > BigInt(static_cast<unsigned long>(limits.max_box_points)))
    throw ResourceError("lattice_box", "lattice enumeration box has " + volume.get_str() +
                                           " points, budget lattice_box=" +
                                           std::to_string(limits.max_box_points));
  std::vector<IntPoint> out;
  IntPoint x = lo;
  for (;;) {
    if (p.contains(x)) out.push_back(x);
    std::size_t j = d;
    while (j > 0) {
      --j;
      if (x[j] < hi[j]) {
        ++x[j];
        break;
      }
      x[j] = lo[j];
      if (j == 0) return out;
    }
  }
}

bool in_convex_hull(std::span<const Rational> x, const std::vector<RatVector>& points) {
  if (points.empty()) return false;
  const std::size_t d = x.size(), n = points.size();
  LinearProgram lp;
  lp.a = RatMatrix(d + 1, n);
  lp.b.assign(d + 1, Rational());
  for (std::size_t k = 0; k < n; ++k) {
    if (points[k].size() != d) throw InputError("hull membership: dimension mismatch");
    for (std::size_t j = 0; j < d; ++j) lp.a(j, k) = points[k][j];
    lp.a(d, k) = 1;
  }
  for (std::size_t j = 0; j < d; ++j) lp.b[j] = x[j];
  lp.b[d] = 1;
  lp.equality.assign(d + 1, true);
  lp.c.assign(n, Rational());
  lp.bounds.assign(n, VarBounds{Rational(0), std::nullopt});
  return solve_lp(lp).status == LpStatus::Optimal;
}

bool in_convex_hull(const IntPoint& x, const std::vector<IntPoint>& points) {
  std::vector<RatVector> pts;
  pts.reserve(points.size());
  for (const auto& q : points) pts.push_back(to_rational(q));
  const RatVector rx = to_rational(x);
  return in_convex_hull(rx, pts);
}

namespace {

// Directions with entries in {-1,0,1}, one per ± pair.
std::vector<IntPoint> unit_directions(std::size_t d) {
  std::vector<IntPoint> out;
  IntPoint v(d, -1);
  for (;;) {
    // keep v if its first nonzero entry is positive
    auto it = std::find_if(v.begin(), v.end(), [](std::int64_t e) { return e != 0; });
    if (it != v.end() && *it > 0) out.push_back(v);
    std::size_t j = 0;
    while (j < d && v[j] == 1) v[j++] = -1;
    if (j == d) break;
    ++v[j];
  }
  return out;
}

}  // namespace

std::vector<IntPoint> hull_vertices(std::vector<IntPoint> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.size() <= 2) return points;
  const std::size_t d = points.front().size();

  // A midpoint of two other points is never a vertex; dropping such points keeps the hull.
  std::set<IntPoint> present(points.begin(), points.end());
  std::vector<IntPoint> candidates;
  const auto dirs = unit_directions(d);
  for (const auto& p : points) {
    bool interior = false;
    for (const auto& v : dirs) {
      IntPoint plus = p, minus = p;
      for (std::size_t j = 0; j < d; ++j) {
        plus[j] += v[j];
        minus[j] -= v[j];
      }
      if (present.count(plus) && present.count(minus)) {
        interior = true;
        break;
      }
    }
    if (!interior) candidates.push_back(p);
  }
  if (candidates.size() <= 2) return candidates;

  std::vector<RatVector> rat;
  rat.reserve(candidates.size());
  for (const auto& c : candidates) rat.push_back(to_rational(c));
  std::vector<IntPoint> out;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (i == 0 || i + 1 == candidates.size()) {  // lexicographic extremes
      out.push_back(candidates[i]);
      continue;
    }
    std::vector<RatVector> others;
    others.reserve(rat.size() - 1);
    for (std::size_t k = 0; k < rat.size(); ++k)
      if (k != i) others.push_back(rat[k]);
    if (!in_convex_hull(rat[i], others)) out.push_back(candidates[i]);
  }
  return out;
}

std::vector<IntPoint> integer_hull_vertices(const Polytope& p, const EnumerationLimits& limits) {
  return hull_vertices(lattice_points(p, limits));
}

int affine_dimension(const std::vector<IntPoint>& points) {
  if (points.empty()) return -1;
  std::vector<RatVector> diffs;
  for (std::size_t i = 1; i < points.size(); ++i) {
    RatVector v(points[i].size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = points[i][j] - points[0][j];
    diffs.push_back(std::move(v));
  }
  return static_cast<int>(independent_subset(diffs).size());
}

}  // namespace hmpack
