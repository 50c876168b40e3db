#include <algorithm>
#include <map>

#include "hmpack/errors.hpp"
#include "hmpack/lp.hpp"
#include "hmpack/solver.hpp"

namespace hmpack {

namespace {

using i128 = __int128;

bool is_origin(const IntPoint& x) {
  return std::all_of(x.begin(), x.end(), [](std::int64_t v) { return v == 0; });
}

std::int64_t dot(const IntVector& row, const IntPoint& x) {
  i128 s = 0;
  for (std::size_t j = 0; j < x.size(); ++j) s += i128(row[j]) * x[j];
  if (s > INT64_MAX || s < INT64_MIN) throw InputError("coefficient overflows 64 bits");
  return static_cast<std::int64_t>(s);
}

std::vector<std::pair<std::int64_t, std::int64_t>> integer_box(const Polytope& p) {
  const auto bounds = coordinate_bounds(p);
  if (!bounds) throw InputError("polytope part is unbounded");
  std::vector<std::pair<std::int64_t, std::int64_t>> box;
  for (const auto& iv : *bounds) box.emplace_back(to_int64(iv.lo.ceil()), to_int64(iv.hi.floor()));
  return box;
}

bool has_integer_point(const Polytope& p, const IlpOptions& ilp) {
  const auto box = integer_box(p);
  if (box.empty()) return false;
  IlpProblem prob(p.dim());
  for (std::size_t j = 0; j < p.dim(); ++j) {
    if (box[j].first > box[j].second) return false;
    prob.set_bounds(j, box[j].first, box[j].second);
  }
  for (std::size_t r = 0; r < p.rows(); ++r) prob.add_row(p.row(r), p.rhs(r));
  return ilp_feasible(prob, ilp).feasible;
}

void validate_parts(const std::vector<PolytopePart>& parts, const Polytope& q) {
  if (parts.empty()) throw InputError("selection needs at least one part");
  for (const auto& part : parts) {
    if (part.projected_dim != q.dim()) throw InputError("part and Q have different projected dimensions");
    if (part.polytope.dim() < part.projected_dim) throw InputError("part polytope has fewer coordinates than projected");
    if (part.cost < 0) throw InputError("part costs must be non-negative");
  }
}

SelectionResult trivial_found(std::size_t d) {
  SelectionResult r;
  r.found = true;
  r.y = IntPoint(d, 0);
  return r;
}

// Decides selections for a fixed family of parts and target, for any budget.
class Selector {
 public:
  Selector(const std::vector<PolytopePart>& parts, const Polytope& q, const SolverOptions& options)
      : q_(q), options_(options) {
    validate_parts(parts, q);
    if (std::any_of(parts.begin(), parts.end(), [](const PolytopePart& p) { return bool(p.extends); })) {
      // completion is only known through the callbacks
      parts_ = parts;
      live_.resize(parts.size());
      for (std::size_t i = 0; i < parts.size(); ++i) live_[i] = i;
      use_generators();
      return;
    }
    for (std::size_t i = 0; i < parts.size(); ++i)
      if (has_integer_point(parts[i].polytope, options.ilp)) {
        live_.push_back(i);
        parts_.push_back(parts[i]);
      }
    if (parts_.empty()) return;
    try {
      SolverOptions lifted = options;
      lifted.cover.limits.max_box_points =
          std::min<std::uint64_t>(lifted.cover.limits.max_box_points, options.selector_box_limit);
      cone_.emplace(selector_polytope(parts_), lifted);
    } catch (const ResourceError& e) {
      if (e.budget() != "lattice_box") throw;
      use_generators();
    }
  }

  SelectionResult select(std::int64_t delta) {
    const std::size_t d = q_.dim();
    if (delta < 0) return {};
    if (q_.contains(IntPoint(d, 0))) return trivial_found(d);
    if (parts_.empty()) return {};
    if (cone_) {
      try {
        return via_cone(delta);
      } catch (const InputError&) {
        // unbounded weight among lifted points with zero projection
        cone_.reset();
        use_generators();
      }
    }
    std::vector<std::int64_t> costs;
    for (const auto& p : parts_) costs.push_back(p.cost);
    auto r = select_from_generators(generators_, costs, q_, delta, options_.ilp);
    for (auto& pt : r.points) pt.part = live_[pt.part];
    return r;
  }

 private:
  void use_generators() {
    generators_.clear();
    for (const auto& p : parts_) generators_.push_back(part_points(p, options_.cover.limits, options_.ilp));
  }

  SelectionResult via_cone(std::int64_t delta) {
    const std::size_t d = q_.dim();
    const Polytope& lifted = cone_->polytope();
    const std::size_t n = lifted.dim();
    std::vector<IntVector> a;
    IntVector b;
    for (std::size_t r = 0; r < q_.rows(); ++r) {
      IntVector row(n, 0);
      std::copy(q_.row(r).begin(), q_.row(r).end(), row.begin());
      a.push_back(std::move(row));
      b.push_back(q_.rhs(r));
    }
    IntVector gamma(n, 0);
    gamma[d] = 1;
    a.push_back(std::move(gamma));
    b.push_back(delta);
    const auto res = cone_->solve(Polytope(std::move(a), std::move(b)));
    SelectionResult out;
    out.via_selector = true;
    if (!res.found) return out;
    out.found = true;
    std::map<std::pair<std::size_t, IntPoint>, std::int64_t> merged;
    for (const auto& [pt, w] : res.lambda) {
      std::size_t offset = d + 1, chosen = parts_.size();
      for (std::size_t i = 0; i < parts_.size(); ++i) {
        offset += parts_[i].polytope.dim();
        if (pt[offset] == 1) chosen = i;
        offset += 1;
      }
      HMPACK_ASSERT(chosen < parts_.size(), "lifted point selects no part");
      IntPoint x(pt.begin(), pt.begin() + static_cast<std::ptrdiff_t>(d));
      HMPACK_ASSERT(pt[d] == parts_[chosen].cost, "lifted point carries the wrong cost");
      out.cost += w * parts_[chosen].cost;
      if (!is_origin(x)) merged[{live_[chosen], x}] += w;
    }
    for (auto& [key, w] : merged) out.points.push_back(SelectedPoint{key.first, key.second, w});
    out.y = IntPoint(d, 0);
    for (const auto& p : out.points)
      for (std::size_t j = 0; j < d; ++j) out.y[j] += p.multiplicity * p.x[j];
    HMPACK_ASSERT(q_.contains(out.y), "selection outside Q");
    HMPACK_ASSERT(out.cost <= delta, "selection exceeds the budget");
    return out;
  }

  Polytope q_;
  SolverOptions options_;
  std::vector<std::size_t> live_;  // original indices of parts with integer points
  std::vector<PolytopePart> parts_;
  std::optional<IntConeSolver> cone_;
  std::vector<std::vector<IntPoint>> generators_;
};

}  // namespace

std::vector<IntPoint> part_points(const PolytopePart& part, const EnumerationLimits& limits, const IlpOptions& ilp) {
  const Polytope& p = part.polytope;
  const std::size_t d = part.projected_dim;
  const std::size_t full = p.dim();
  std::vector<IntPoint> out;
  if (d == full && !part.extends) {
    for (auto& x : lattice_points(p, limits))
      if (!is_origin(x)) out.push_back(std::move(x));
    return out;
  }
  const auto box = part.projected_box.empty() ? integer_box(p) : part.projected_box;
  if (box.empty()) return out;
  if (box.size() < d) throw InputError("projected box has too few coordinates");
  std::uint64_t count = 1;
  for (std::size_t j = 0; j < d; ++j) {
    if (box[j].first > box[j].second) return out;
    count *= static_cast<std::uint64_t>(box[j].second - box[j].first + 1);
    if (count > limits.max_box_points)
      throw ResourceError("lattice_box", "projected box of a part exceeds the enumeration budget");
  }
  std::vector<std::pair<std::int64_t, std::int64_t>> full_box;
  if (!part.extends) {
    full_box = part.projected_box.empty() ? box : integer_box(p);
    if (full_box.empty()) return out;
  }
  IntPoint x(d);
  for (std::size_t j = 0; j < d; ++j) x[j] = box[j].first;
  for (;;) {
    bool ok;
    if (part.extends) {
      ok = part.extends(x);
    } else {
      IlpProblem prob(full - d);
      for (std::size_t j = d; j < full; ++j) prob.set_bounds(j - d, full_box[j].first, full_box[j].second);
      for (std::size_t r = 0; r < p.rows(); ++r) {
        IntVector row(p.row(r).begin() + static_cast<std::ptrdiff_t>(d), p.row(r).end());
        i128 rhs = p.rhs(r);
        for (std::size_t j = 0; j < d; ++j) rhs -= i128(p.row(r)[j]) * x[j];
        prob.add_row(std::move(row), static_cast<std::int64_t>(rhs));
      }
      ok = ilp_feasible(prob, ilp).feasible;
    }
    if (ok && !is_origin(x)) out.push_back(x);
    std::size_t j = d;
    while (j > 0 && x[j - 1] == box[j - 1].second) {
      x[j - 1] = box[j - 1].first;
      --j;
    }
    if (j == 0) break;
    ++x[j - 1];
  }
  return out;
}

SelectionResult select_from_generators(const std::vector<std::vector<IntPoint>>& generators,
                                       const std::vector<std::int64_t>& costs, const Polytope& q,
                                       std::int64_t delta, const IlpOptions& ilp) {
  if (generators.size() != costs.size()) throw InputError("one cost per generator family is required");
  const std::size_t d = q.dim();
  if (delta < 0) return {};
  if (q.contains(IntPoint(d, 0))) return trivial_found(d);

  struct Var {
    std::size_t part;
    const IntPoint* x;
  };
  std::vector<Var> vars;
  for (std::size_t i = 0; i < generators.size(); ++i)
    for (const auto& x : generators[i]) {
      if (x.size() != d) throw InputError("generator dimension differs from Q");
      if (!is_origin(x)) vars.push_back({i, &x});
    }
  if (vars.empty()) return {};
  const std::size_t n = vars.size();

  // Zero-cost weight is bounded through an LP over the same constraints.
  std::optional<std::int64_t> free_bound;
  if (std::any_of(vars.begin(), vars.end(), [&](const Var& v) { return costs[v.part] == 0; })) {
    LinearProgram lp;
    lp.a = RatMatrix(q.rows() + 1, n);
    for (std::size_t r = 0; r < q.rows(); ++r)
      for (std::size_t k = 0; k < n; ++k) lp.a(r, k) = dot(q.row(r), *vars[k].x);
    for (std::size_t k = 0; k < n; ++k) lp.a(q.rows(), k) = costs[vars[k].part];
    lp.b = q.b_rational();
    lp.b.push_back(delta);
    lp.c.resize(n);
    for (std::size_t k = 0; k < n; ++k) lp.c[k] = costs[vars[k].part] == 0 ? 1 : 0;
    lp.sense = Sense::Maximize;
    lp.bounds.assign(n, VarBounds{Rational(0), std::nullopt});
    const auto res = solve_lp(lp);
    if (res.status == LpStatus::Infeasible) return {};
    if (res.status == LpStatus::Unbounded) throw InputError("zero-cost points reach Q with unbounded weight");
    free_bound = to_int64(res.value.floor());
  }

  IlpProblem prob(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::int64_t c = costs[vars[k].part];
    prob.set_bounds(k, 0, c > 0 ? delta / c : *free_bound);
  }
  for (std::size_t r = 0; r < q.rows(); ++r) {
    IntVector row(n);
    for (std::size_t k = 0; k < n; ++k) row[k] = dot(q.row(r), *vars[k].x);
    prob.add_row(std::move(row), q.rhs(r));
  }
  IntVector cost_row(n);
  for (std::size_t k = 0; k < n; ++k) cost_row[k] = costs[vars[k].part];
  prob.add_row(std::move(cost_row), delta);

  const auto res = ilp_feasible(prob, ilp);
  SelectionResult out;
  if (!res.feasible) return out;
  out.found = true;
  out.y = IntPoint(d, 0);
  for (std::size_t k = 0; k < n; ++k) {
    if (res.x[k] == 0) continue;
    out.points.push_back(SelectedPoint{vars[k].part, *vars[k].x, res.x[k]});
    out.cost += res.x[k] * costs[vars[k].part];
    for (std::size_t j = 0; j < d; ++j) out.y[j] += res.x[k] * (*vars[k].x)[j];
  }
  std::sort(out.points.begin(), out.points.end(), [](const SelectedPoint& a, const SelectedPoint& b) {
    return std::tie(a.part, a.x) < std::tie(b.part, b.x);
  });
  HMPACK_ASSERT(q.contains(out.y), "selection outside Q");
  HMPACK_ASSERT(out.cost <= delta, "selection exceeds the budget");
  return out;
}

SelectionResult multi_polytope_select(const std::vector<PolytopePart>& parts, const Polytope& q,
                                      std::int64_t delta, const SolverOptions& options) {
  Selector s(parts, q, options);
  return s.select(delta);
}

std::optional<SelectionResult> multi_polytope_minimize(const std::vector<PolytopePart>& parts,
                                                       const Polytope& q, std::int64_t upper,
                                                       const SolverOptions& options) {
  Selector s(parts, q, options);
  auto best = s.select(upper);
  if (!best.found) return std::nullopt;
  std::int64_t lo = 0, hi = best.cost;
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    auto r = s.select(mid);
    if (r.found) {
      hi = r.cost;
      best = std::move(r);
    } else {
      lo = mid + 1;
    }
  }
  return best;
}

Polytope selector_polytope(const std::vector<PolytopePart>& parts) {
  if (parts.empty()) throw InputError("selector needs at least one part");
  const std::size_t d = parts.front().projected_dim;
  std::int64_t reach = 0, cmax = 0;
  std::size_t n = d + 1;
  for (const auto& part : parts) {
    if (part.projected_dim != d) throw InputError("parts have different projected dimensions");
    const auto box = integer_box(part.polytope);
    if (box.empty()) throw InputError("selector part has no integer point");
    for (std::size_t j = 0; j < d; ++j)
      reach = std::max({reach, std::abs(box[j].first), std::abs(box[j].second)});
    cmax = std::max(cmax, std::abs(part.cost));
    n += part.polytope.dim() + 1;
  }
  const std::int64_t big = std::max<std::int64_t>(2 * reach + 2 * cmax, 1);

  std::vector<IntVector> a;
  IntVector b;
  IntVector sum_z(n, 0);
  std::size_t offset = d + 1;
  for (const auto& part : parts) {
    const Polytope& p = part.polytope;
    const std::size_t z = offset + p.dim();
    for (std::size_t r = 0; r < p.rows(); ++r) {
      IntVector row(n, 0);
      std::copy(p.row(r).begin(), p.row(r).end(), row.begin() + static_cast<std::ptrdiff_t>(offset));
      a.push_back(std::move(row));
      b.push_back(p.rhs(r));
    }
    // |x_j - x_{i,j}| <= M (1 - z_i), and the same for γ against c_i
    for (std::size_t j = 0; j <= d; ++j) {
      IntVector up(n, 0), down(n, 0);
      up[j] = 1;
      down[j] = -1;
      up[z] = big;
      down[z] = big;
      if (j < d) {
        up[offset + j] = -1;
        down[offset + j] = 1;
        a.push_back(std::move(up));
        b.push_back(big);
        a.push_back(std::move(down));
        b.push_back(big);
      } else {
        a.push_back(std::move(up));
        b.push_back(big + part.cost);
        a.push_back(std::move(down));
        b.push_back(big - part.cost);
      }
    }
    IntVector nonneg(n, 0);
    nonneg[z] = -1;
    a.push_back(std::move(nonneg));
    b.push_back(0);
    sum_z[z] = 1;
    offset = z + 1;
  }
  IntVector neg_sum(n, 0);
  for (std::size_t k = 0; k < n; ++k) neg_sum[k] = -sum_z[k];
  a.push_back(sum_z);
  b.push_back(1);
  a.push_back(neg_sum);
  b.push_back(-1);
  return Polytope(std::move(a), std::move(b));
}

}  // namespace hmpack
