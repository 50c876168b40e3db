#include <algorithm>

#include "hmpack/errors.hpp"
#include "hmpack/lp.hpp"
#include "hmpack/solver.hpp"

namespace hmpack {

namespace {

using i128 = __int128;

std::int64_t checked(i128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw InputError("ILP coefficient overflows 64 bits");
  return static_cast<std::int64_t>(v);
}

std::int64_t row_dot(const IntVector& row, const IntPoint& x) {
  i128 s = 0;
  for (std::size_t j = 0; j < x.size(); ++j) s += i128(row[j]) * x[j];
  return checked(s);
}

bool is_origin(const IntPoint& x) {
  return std::all_of(x.begin(), x.end(), [](std::int64_t v) { return v == 0; });
}

template <class Fn>
bool for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return true;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    if (!fn(idx)) return false;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::size_t pow2_capped(std::size_t e) { return e >= 62 ? SIZE_MAX : std::size_t{1} << e; }

}  // namespace

IntConeSolver::IntConeSolver(Polytope p, SolverOptions options) : p_(std::move(p)), options_(std::move(options)) {
  if (!coordinate_bounds(p_)) throw InputError("int.cone oracle needs a bounded polytope");
  Cover cover = build_cover(p_, options_.cover);
  lattice_ = cover.lattice;
  if (lattice_.empty()) return;
  structure_ = structure_set_from_cover(p_, cover);
  const std::size_t d = p_.dim();
  lo_ = lattice_.front();
  hi_ = lattice_.front();
  for (const auto& x : lattice_)
    for (std::size_t j = 0; j < d; ++j) {
      lo_[j] = std::min(lo_[j], x[j]);
      hi_[j] = std::max(hi_[j], x[j]);
    }
}

std::int64_t IntConeSolver::weight_bound(const Polytope& q) const {
  std::vector<const IntPoint*> cols;
  for (const auto& x : lattice_)
    if (!is_origin(x)) cols.push_back(&x);
  if (cols.empty()) return 0;
  LinearProgram lp;
  lp.a = RatMatrix(q.rows(), cols.size());
  for (std::size_t r = 0; r < q.rows(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) lp.a(r, c) = row_dot(q.row(r), *cols[c]);
  lp.b = q.b_rational();
  lp.c.assign(cols.size(), Rational(1));
  lp.sense = Sense::Maximize;
  lp.bounds.assign(cols.size(), VarBounds{Rational(0), std::nullopt});
  const auto res = solve_lp(lp);
  if (res.status == LpStatus::Infeasible) return 0;
  if (res.status == LpStatus::Unbounded)
    throw InputError("combinations reaching Q have unbounded total weight");
  return to_int64(res.value.floor());
}

std::optional<IntConeResult> IntConeSolver::solve_guess(const Polytope& q, const std::vector<IntPoint>& gens,
                                                        std::size_t k, bool optional_slots,
                                                        std::int64_t w) const {
  const std::size_t d = p_.dim();
  const std::size_t nl = gens.size();
  const std::size_t per_slot = d + (optional_slots ? 1 : 0);
  const std::size_t n = nl + k * per_slot;
  if (!optional_slots && static_cast<std::int64_t>(k) > w) return std::nullopt;
  IlpProblem ilp(n);
  auto xvar = [&](std::size_t i, std::size_t j) { return nl + i * per_slot + j; };
  auto tvar = [&](std::size_t i) { return nl + i * per_slot + d; };

  for (std::size_t v = 0; v < nl; ++v) ilp.set_bounds(v, 0, w);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if (optional_slots)
        ilp.set_bounds(xvar(i, j), std::min<std::int64_t>(lo_[j], 0), std::max<std::int64_t>(hi_[j], 0));
      else
        ilp.set_bounds(xvar(i, j), lo_[j], hi_[j]);
    }
    if (optional_slots) ilp.set_bounds(tvar(i), 0, 1);
    // slot lies in P (or is the zero slot)
    for (std::size_t r = 0; r < p_.rows(); ++r) {
      IntVector row(n, 0);
      for (std::size_t j = 0; j < d; ++j) row[xvar(i, j)] = p_.row(r)[j];
      if (optional_slots) {
        row[tvar(i)] = -p_.rhs(r);
        ilp.add_row(std::move(row), 0);
      } else {
        ilp.add_row(std::move(row), p_.rhs(r));
      }
    }
    if (optional_slots)
      for (std::size_t j = 0; j < d; ++j) {
        IntVector up(n, 0), down(n, 0);
        up[xvar(i, j)] = 1;
        up[tvar(i)] = -hi_[j];
        down[xvar(i, j)] = -1;
        down[tvar(i)] = lo_[j];
        ilp.add_row(std::move(up), 0);
        ilp.add_row(std::move(down), 0);
      }
  }
  // Σ λ_v v + Σ x_i ∈ Q
  for (std::size_t r = 0; r < q.rows(); ++r) {
    IntVector row(n, 0);
    for (std::size_t v = 0; v < nl; ++v) row[v] = row_dot(q.row(r), gens[v]);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < d; ++j) row[xvar(i, j)] = q.row(r)[j];
    ilp.add_row(std::move(row), q.rhs(r));
  }
  // total weight
  {
    IntVector row(n, 0);
    for (std::size_t v = 0; v < nl; ++v) row[v] = 1;
    if (optional_slots)
      for (std::size_t i = 0; i < k; ++i) row[tvar(i)] = 1;
    ilp.add_row(std::move(row), optional_slots ? w : w - static_cast<std::int64_t>(k));
  }
  // slots in lexicographic order; unused optional slots come last
  if (k > 1) {
    IntVector key(d, 0);
    i128 weight = 1, span = 0;
    bool fits = true;
    for (std::size_t j = d; j-- > 0;) {
      key[j] = static_cast<std::int64_t>(weight);
      const i128 width = i128(std::max<std::int64_t>(hi_[j], 0)) - std::min<std::int64_t>(lo_[j], 0) + 1;
      span += weight * (width - 1);
      weight *= width;
      if (weight > (i128(1) << 50)) fits = false;
    }
    for (std::size_t i = 0; i + 1 < k; ++i) {
      if (optional_slots) {
        IntVector order(n, 0);
        order[tvar(i + 1)] = 1;
        order[tvar(i)] = -1;
        ilp.add_row(std::move(order), 0);
      }
      if (!fits) continue;
      IntVector row(n, 0);
      for (std::size_t j = 0; j < d; ++j) {
        row[xvar(i, j)] = key[j];
        row[xvar(i + 1, j)] = -key[j];
      }
      if (optional_slots) {
        row[tvar(i + 1)] = checked(span);
        ilp.add_row(std::move(row), checked(span));
      } else {
        ilp.add_row(std::move(row), 0);
      }
    }
  }

  const auto res = ilp_feasible(ilp, options_.ilp);
  if (!res.feasible) return std::nullopt;

  IntConeResult out;
  out.found = true;
  for (std::size_t v = 0; v < nl; ++v)
    if (res.x[v] > 0) combo_add(out.lambda, gens[v], res.x[v]);
  for (std::size_t i = 0; i < k; ++i) {
    if (optional_slots && res.x[tvar(i)] == 0) continue;
    IntPoint x(d);
    for (std::size_t j = 0; j < d; ++j) x[j] = res.x[xvar(i, j)];
    HMPACK_ASSERT(p_.contains(x), "slot point outside P");
    if (!is_origin(x)) combo_add(out.lambda, x, 1);
  }
  out.guess.special_points = nl;
  out.guess.extra_points = k;
  return out;
}

IntConeResult IntConeSolver::solve(const Polytope& q) const {
  const std::size_t d = p_.dim();
  if (q.dim() != d) throw InputError("Q and P have different dimensions");
  IntConeResult result;
  if (q.contains(IntPoint(d, 0))) {
    result.found = true;
    result.y = IntPoint(d, 0);
    return result;
  }
  if (lattice_.empty()) return result;
  const std::int64_t w = weight_bound(q);
  if (w <= 0) return result;

  const std::size_t kmax = std::min<std::size_t>(pow2_capped(2 * d), static_cast<std::size_t>(w));
  std::optional<IntConeResult> hit;
  GuessRecord record;

  auto joint = [&] {
    std::vector<IntPoint> gens;
    for (const auto& x : structure_.special_points)
      if (!is_origin(x)) gens.push_back(x);
    hit = solve_guess(q, gens, kmax, true, w);
    record.joint = true;
    ++record.guesses_tried;
    if (hit) {
      record.special_points = gens.size();
      record.extra_points = kmax;
      for (std::size_t i = 0; i < structure_.cover.size(); ++i) record.parallelepipeds.push_back(i);
    }
  };

  if (options_.mode == SolverMode::Joint) {
    joint();
  } else {
    const std::size_t cover_size = structure_.cover.size();
    const std::size_t gmax =
        std::min({pow2_capped(d), cover_size, static_cast<std::size_t>(w)});
    bool exhausted = true;
    for (std::size_t level = 0; level <= gmax + kmax && !hit && exhausted; ++level) {
      for (std::size_t g = std::min(level, gmax) + 1; g-- > 0 && !hit && exhausted;) {
        const std::size_t k = level - g;
        if (k > kmax) break;
        exhausted = for_each_subset(cover_size, g, [&](const std::vector<std::size_t>& chosen) {
          if (record.guesses_tried >= options_.guess_budget) return false;
          ++record.guesses_tried;
          std::vector<IntPoint> gens;
          for (auto c : chosen)
            for (auto& v : pp_vertices(structure_.cover[c]))
              if (!is_origin(v)) gens.push_back(std::move(v));
          std::sort(gens.begin(), gens.end());
          gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
          hit = solve_guess(q, gens, k, false, w);
          if (hit) record.parallelepipeds = chosen;
          return !hit;
        });
      }
    }
    if (!hit && !exhausted) joint();
  }

  if (!hit) {
    result.guess = record;
    return result;
  }
  record.special_points = std::max(record.special_points, hit->guess.special_points);
  record.extra_points = hit->guess.extra_points;
  result = std::move(*hit);
  result.guess = record;
  result.lambda = reduce_support(std::move(result.lambda));
  result.y = combo_sum(result.lambda, d);
  HMPACK_ASSERT(q.contains(result.y), "int.cone witness outside Q");
  for (const auto& [x, v] : result.lambda) HMPACK_ASSERT(p_.contains(x), "int.cone witness uses a point outside P");
  HMPACK_ASSERT(result.lambda.size() <= pow2_capped(2 * d + 1), "int.cone witness exceeds the support bound");
  return result;
}

IntConeResult int_cone_intersect(const Polytope& p, const Polytope& q, const SolverOptions& options) {
  return IntConeSolver(p, options).solve(q);
}

}  // namespace hmpack
