#include <Eigen/Dense>

#include <algorithm>
#include <map>
#include <numeric>

#include "hmpack/errors.hpp"
#include "hmpack/geometry.hpp"

namespace hmpack {

namespace {

constexpr double kTolerance = 1e-9;
constexpr int kMaxIterations = 100000;

// Centered Khachiyan iteration with away steps. Returns the design weights.
Eigen::VectorXd khachiyan(const Eigen::MatrixXd& q, Eigen::MatrixXd& shape) {
  const auto r = q.rows();
  const auto n = q.cols();
  Eigen::VectorXd w = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  const double rd = static_cast<double>(r);
  for (int it = 0; it < kMaxIterations; ++it) {
    const Eigen::MatrixXd m = q * w.asDiagonal() * q.transpose();
    const Eigen::MatrixXd minv = m.ldlt().solve(Eigen::MatrixXd::Identity(r, r));
    const Eigen::VectorXd g = (q.transpose() * minv * q).diagonal();
    Eigen::Index j = 0;
    g.maxCoeff(&j);
    Eigen::Index k = -1;
    for (Eigen::Index i = 0; i < n; ++i)
      if (w[i] > 0 && (k < 0 || g[i] < g[k])) k = i;
    const double up = g[j] / rd - 1;
    const double down = 1 - g[k] / rd;
    if (up <= kTolerance) {
      shape = minv / rd;
      return w;
    }
    if (up >= down || w[k] >= 1 - 1e-12) {
      const double tau = (g[j] - rd) / (rd * (g[j] - 1));
      w *= 1 - tau;
      w[j] += tau;
    } else {
      const double drop = -w[k] / (1 - w[k]);
      double tau = g[k] > 1 + 1e-12 ? (g[k] - rd) / (rd * (g[k] - 1)) : drop;
      tau = std::max(tau, drop);
      w *= 1 - tau;
      w[k] += tau;
      if (w[k] < 1e-15) w[k] = 0;
    }
  }
  const Eigen::MatrixXd m = q * w.asDiagonal() * q.transpose();
  shape = m.ldlt().solve(Eigen::MatrixXd::Identity(r, r)) / rd;
  return w;
}

RatVector canonical_sign(RatVector u) {
  auto it = std::find_if(u.begin(), u.end(), [](const Rational& e) { return !e.is_zero(); });
  if (it != u.end() && it->sign() < 0)
    for (auto& e : u) e = -e;
  return u;
}

}  // namespace

EllipsoidResult mvee_contact_points(const std::vector<RatVector>& points, const RatVector& center) {
  const std::size_t d = center.size();
  EllipsoidResult res;
  res.center.reserve(d);
  for (const auto& c : center) res.center.push_back(c.to_double());

  // group the points into ± pairs about the center
  std::map<RatVector, std::size_t> pair_of;
  std::vector<RatVector> pair_dir;
  std::vector<std::size_t> pair_rep;
  std::vector<std::size_t> point_pair(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != d) throw InputError("ellipsoid input has inconsistent dimension");
    RatVector u(d);
    for (std::size_t j = 0; j < d; ++j) u[j] = points[i][j] - center[j];
    RatVector key = canonical_sign(u);
    auto [it, fresh] = pair_of.emplace(key, pair_dir.size());
    if (fresh) {
      pair_dir.push_back(key);
      pair_rep.push_back(i);
    }
    point_pair[i] = it->second;
  }
  const auto basis = independent_subset(pair_dir);
  const std::size_t r = basis.size();
  res.affine_dim = r;
  if (r == 0) return res;

  // reduced coordinates in the span of the chosen basis
  RatMatrix b(d, r);
  for (std::size_t c = 0; c < r; ++c)
    for (std::size_t j = 0; j < d; ++j) b(j, c) = pair_dir[basis[c]][j];
  Eigen::MatrixXd q(r, 2 * pair_dir.size());
  for (std::size_t p = 0; p < pair_dir.size(); ++p) {
    auto coords = solve_linear_system(b, pair_dir[p]);
    HMPACK_ASSERT(coords.has_value(), "point outside the affine hull of its own set");
    for (std::size_t c = 0; c < r; ++c) {
      q(c, 2 * p) = (*coords)[c].to_double();
      q(c, 2 * p + 1) = -(*coords)[c].to_double();
    }
  }
  Eigen::MatrixXd shape;
  const Eigen::VectorXd w = khachiyan(q, shape);
  res.shape.assign(r, std::vector<double>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) res.shape[i][j] = shape(i, j);

  std::vector<double> pair_weight(pair_dir.size());
  for (std::size_t p = 0; p < pair_dir.size(); ++p) pair_weight[p] = w[2 * p] + w[2 * p + 1];
  std::vector<std::size_t> order(pair_dir.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return pair_weight[x] > pair_weight[y]; });

  Rational scale(1);
  while (scale * scale < Rational(static_cast<std::int64_t>(r))) scale += Rational(1);

  auto spans = [&](const std::vector<std::size_t>& set) {
    std::vector<RatVector> v;
    for (auto p : set) v.push_back(pair_dir[p]);
    return independent_subset(v).size() == r;
  };
  auto covers = [&](const std::vector<std::size_t>& set) {
    std::vector<RatVector> gens;
    for (auto p : set) {
      RatVector plus(d), minus(d);
      for (std::size_t j = 0; j < d; ++j) {
        plus[j] = center[j] + scale * pair_dir[p][j];
        minus[j] = center[j] - scale * pair_dir[p][j];
      }
      gens.push_back(std::move(plus));
      gens.push_back(std::move(minus));
    }
    for (std::size_t p = 0; p < pair_dir.size(); ++p) {
      if (std::find(set.begin(), set.end(), p) != set.end()) continue;
      RatVector x(d);
      for (std::size_t j = 0; j < d; ++j) x[j] = center[j] + pair_dir[p][j];
      if (!in_convex_hull(x, gens)) return false;
    }
    return true;
  };

  const std::size_t cap = r * (r + 3) / 2;
  std::vector<std::size_t> chosen;
  for (auto p : order)
    if (pair_weight[p] > 1e-7 && chosen.size() < cap) chosen.push_back(p);
  for (auto p : order)
    if (!spans(chosen) && std::find(chosen.begin(), chosen.end(), p) == chosen.end()) chosen.push_back(p);

  if (covers(chosen)) {
    // drop low-weight contacts while the exact containment still holds
    for (std::size_t i = chosen.size(); i-- > 0;) {
      auto trial = chosen;
      trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
      if (spans(trial) && covers(trial)) chosen = std::move(trial);
    }
  } else {
    chosen = order;
    res.used_fallback = true;
  }
  std::sort(chosen.begin(), chosen.end());
  for (auto p : chosen) res.contact_indices.push_back(pair_rep[p]);
  return res;
}

}  // namespace hmpack
