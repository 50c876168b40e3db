#include "hmpack/oracle.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

#include "hmpack/errors.hpp"
#include "hmpack/lp.hpp"

namespace hmpack::oracle {

namespace {

// Nonzero patterns with s^T x <= 1 (and x <= a when `capped`), by plain recursion on exact rationals.
std::vector<IntPoint> all_patterns(const BinPackingInstance& inst, std::size_t max_patterns, bool capped) {
  const std::size_t d = inst.dim();
  std::vector<IntPoint> out;
  IntPoint x(d, 0);
  auto rec = [&](auto&& self, std::size_t i, const Rational& load) -> void {
    if (i == d) {
      if (std::any_of(x.begin(), x.end(), [](std::int64_t v) { return v > 0; })) {
        if (out.size() >= max_patterns) throw ResourceError("pattern_count", "too many patterns");
        out.push_back(x);
      }
      return;
    }
    Rational l = load;
    for (std::int64_t k = 0; (!capped || k <= inst.multiplicities[i]) && l <= Rational(1); ++k) {
      x[i] = k;
      self(self, i + 1, l);
      l += inst.sizes[i];
    }
    x[i] = 0;
  };
  rec(rec, 0, Rational(0));
  return out;
}

bool in_box(const IntPoint& x, const IntPoint& lo, const IntPoint& hi) {
  for (std::size_t j = 0; j < x.size(); ++j)
    if (x[j] < lo[j] || x[j] > hi[j]) return false;
  return true;
}

template <class Fn>
void for_each_box_point(const IntPoint& lo, const IntPoint& hi, Fn&& fn) {
  const std::size_t d = lo.size();
  for (std::size_t j = 0; j < d; ++j)
    if (lo[j] > hi[j]) return;
  IntPoint x = lo;
  for (;;) {
    fn(x);
    std::size_t j = d;
    while (j > 0 && x[j - 1] == hi[j - 1]) {
      x[j - 1] = lo[j - 1];
      --j;
    }
    if (j == 0) return;
    ++x[j - 1];
  }
}

std::uint64_t box_size(const IntPoint& lo, const IntPoint& hi) {
  std::uint64_t n = 1;
  for (std::size_t j = 0; j < lo.size(); ++j) {
    if (lo[j] > hi[j]) return 0;
    const auto w = static_cast<std::uint64_t>(hi[j] - lo[j]) + 1;
    if (n > UINT64_MAX / w) return UINT64_MAX;
    n *= w;
  }
  return n;
}

// x ∈ center + [-1,1]-combinations of the directions, decided by an LP.
bool pp_member(const Parallelepiped& pp, const IntPoint& x) {
  const std::size_t d = pp.dim(), k = pp.rank();
  if (k == 0) {
    for (std::size_t j = 0; j < d; ++j)
      if (Rational(x[j]) != pp.center[j]) return false;
    return true;
  }
  LinearProgram lp;
  lp.a = RatMatrix(d, k);
  lp.b.resize(d);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < k; ++i) lp.a(j, i) = pp.directions[i][j];
    lp.b[j] = Rational(x[j]) - pp.center[j];
  }
  lp.equality.assign(d, true);
  lp.c.assign(k, Rational(0));
  lp.bounds.assign(k, VarBounds{Rational(-1), Rational(1)});
  return solve_lp(lp).status == LpStatus::Optimal;
}

}  // namespace

std::int64_t bp_brute_force(const BinPackingInstance& inst, std::int64_t cap) {
  inst.validate();
  const std::int64_t total = std::accumulate(inst.multiplicities.begin(), inst.multiplicities.end(), std::int64_t{0});
  if (total > cap) throw ResourceError("bp_cap", "brute-force bin packing is capped at " + std::to_string(cap) + " items");
  const auto patterns = all_patterns(inst, 1'000'000, true);
  std::map<IntVector, std::int64_t> memo;
  auto best = [&](auto&& self, const IntVector& r) -> std::int64_t {
    auto first = std::find_if(r.begin(), r.end(), [](std::int64_t v) { return v > 0; });
    if (first == r.end()) return 0;
    if (auto it = memo.find(r); it != memo.end()) return it->second;
    const auto f = static_cast<std::size_t>(first - r.begin());
    std::int64_t m = INT64_MAX;
    // Some bin holds an item of the first remaining type.
    for (const auto& p : patterns) {
      if (p[f] == 0) continue;
      bool fits = true;
      for (std::size_t i = 0; i < r.size() && fits; ++i) fits = p[i] <= r[i];
      if (!fits) continue;
      IntVector rest = r;
      for (std::size_t i = 0; i < r.size(); ++i) rest[i] -= p[i];
      m = std::min(m, 1 + self(self, rest));
    }
    memo.emplace(r, m);
    return m;
  };
  return best(best, inst.multiplicities);
}

Rational fractional_opt(const BinPackingInstance& inst, std::size_t max_patterns) {
  inst.validate();
  const auto patterns = all_patterns(inst, max_patterns, false);
  if (patterns.empty()) return Rational(0);
  const std::size_t d = inst.dim();
  LinearProgram lp;
  lp.a = RatMatrix(d, patterns.size());
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < patterns.size(); ++k) lp.a(i, k) = patterns[k][i];
  for (auto a : inst.multiplicities) lp.b.emplace_back(a);
  lp.equality.assign(d, true);
  lp.c.assign(patterns.size(), Rational(1));
  lp.sense = Sense::Minimize;
  lp.bounds.assign(patterns.size(), VarBounds{Rational(0), std::nullopt});
  const auto res = solve_lp(lp);
  HMPACK_ASSERT(res.status == LpStatus::Optimal, "fractional pattern LP failed");
  return res.value;
}

BruteConeResult int_cone_brute(const Polytope& p, const Polytope& q, const IntPoint& lo, const IntPoint& hi,
                               std::size_t max_states) {
  const std::size_t d = p.dim();
  if (q.dim() != d || lo.size() != d || hi.size() != d) throw InputError("dimension mismatch in brute-force cone");
  if (box_size(lo, hi) > max_states) throw ResourceError("brute_box", "brute-force box is too large");
  BruteConeResult out;
  const IntPoint origin(d, 0);
  if (q.contains(origin)) {
    out.found = true;
    out.y = origin;
    return out;
  }
  std::vector<IntPoint> gens;
  for_each_box_point(lo, hi, [&](const IntPoint& x) {
    if (x != origin && p.contains(x)) gens.push_back(x);
  });
  if (!in_box(origin, lo, hi)) return out;
  std::map<IntPoint, std::pair<IntPoint, std::size_t>> parent;
  std::deque<IntPoint> frontier{origin};
  parent.emplace(origin, std::make_pair(origin, SIZE_MAX));
  while (!frontier.empty()) {
    const IntPoint s = frontier.front();
    frontier.pop_front();
    for (std::size_t g = 0; g < gens.size(); ++g) {
      IntPoint t = s;
      for (std::size_t j = 0; j < d; ++j) t[j] += gens[g][j];
      if (!in_box(t, lo, hi) || parent.count(t)) continue;
      parent.emplace(t, std::make_pair(s, g));
      if (q.contains(t)) {
        out.found = true;
        out.y = t;
        for (IntPoint cur = t; cur != origin;) {
          const auto& [prev, gi] = parent.at(cur);
          ++out.lambda[gens[gi]];
          cur = prev;
        }
        return out;
      }
      frontier.push_back(std::move(t));
    }
  }
  return out;
}

std::vector<CoverViolation> cover_verify(const std::vector<Parallelepiped>& cover, const Polytope& p,
                                         std::uint64_t max_box_points) {
  using Kind = CoverViolation::Kind;
  const std::size_t d = p.dim();
  std::vector<CoverViolation> out;

  for (std::size_t i = 0; i < cover.size(); ++i) {
    const auto& pp = cover[i];
    if (pp.dim() != d) {
      out.push_back({Kind::Degenerate, i, {}, "parallelepiped has the wrong dimension"});
      continue;
    }
    if (pp.rank() > 0 && rank(RatMatrix::from_rows(pp.directions, d)) != pp.rank()) {
      out.push_back({Kind::Degenerate, i, {}, "directions are linearly dependent"});
      continue;
    }
    for (std::size_t mask = 0; mask < (std::size_t{1} << pp.rank()); ++mask) {
      RatVector v = pp.center;
      for (std::size_t k = 0; k < pp.rank(); ++k)
        for (std::size_t j = 0; j < d; ++j) v[j] += (mask >> k & 1) ? pp.directions[k][j] : -pp.directions[k][j];
      if (!std::all_of(v.begin(), v.end(), [](const Rational& r) { return r.is_integer(); })) {
        out.push_back({Kind::Integrality, i, {}, "vertex is not integral"});
        break;
      }
      if (!p.contains(std::span<const Rational>(v))) {
        out.push_back({Kind::Containment, i, {}, "vertex lies outside P"});
        break;
      }
    }
  }

  IntPoint lo(d), hi(d);
  const RatMatrix a = p.a_rational();
  const RatVector b = p.b_rational();
  for (std::size_t j = 0; j < d; ++j) {
    RatVector c(d, Rational(0));
    c[j] = 1;
    const auto up = lp_optimize(a, b, c, Sense::Maximize);
    if (up.status == LpStatus::Infeasible) return out;
    if (up.status == LpStatus::Unbounded) throw InputError("cover verification needs a bounded polytope");
    const auto down = lp_optimize(a, b, c, Sense::Minimize);
    hi[j] = to_int64(up.value.floor());
    lo[j] = to_int64(down.value.ceil());
  }
  if (box_size(lo, hi) > max_box_points) throw ResourceError("lattice_box", "verification box is too large");
  for_each_box_point(lo, hi, [&](const IntPoint& x) {
    if (!p.contains(x)) return;
    const bool covered = std::any_of(cover.begin(), cover.end(), [&](const Parallelepiped& pp) {
      return pp.dim() == d && pp_member(pp, x);
    });
    if (!covered) out.push_back({Kind::Uncovered, 0, x, "lattice point is not covered"});
  });
  return out;
}

}  // namespace hmpack::oracle

namespace hmpack::oracle {

namespace {

// Job vectors y <= a, in lexicographic order.
std::vector<IntPoint> sub_vectors(const IntVector& a) {
  std::vector<IntPoint> out;
  IntPoint y(a.size(), 0);
  for (;;) {
    out.push_back(y);
    std::size_t j = 0;
    while (j < a.size() && y[j] == a[j]) y[j++] = 0;
    if (j == a.size()) return out;
    ++y[j];
  }
}

bool feasible_on(const IntPoint& x, const SchedulingInstance& inst, std::size_t i) {
  return inst.variant == SchedulingVariant::Preemptive ? preemptive_brute(x, inst, i)
                                                       : nonpreemptive_brute(x, inst, i);
}

}  // namespace

bool nonpreemptive_brute(const IntPoint& x, const SchedulingInstance& inst, std::size_t i) {
  std::vector<std::size_t> order;
  for (std::size_t j = 0; j < x.size(); ++j)
    for (std::int64_t c = 0; c < x[j]; ++c) order.push_back(j);
  if (order.size() > 6) throw ResourceError("np_brute", "instance beyond brute force caps");
  // For a fixed order, starting each job as early as possible never hurts a later job.
  do {
    std::int64_t t = 0;
    bool ok = true;
    for (auto j : order) {
      const auto& w = inst.window(i, j);
      t = std::max(t, w.release) + w.processing;
      if (t > w.deadline) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  } while (std::next_permutation(order.begin(), order.end()));
  return false;
}

bool preemptive_brute(const IntPoint& x, const SchedulingInstance& inst, std::size_t i) {
  std::vector<std::size_t> copies;
  for (std::size_t j = 0; j < x.size(); ++j)
    for (std::int64_t c = 0; c < x[j]; ++c) copies.push_back(j);
  const std::int64_t horizon = inst.horizon(i);
  if (copies.size() > 60 || horizon > 200) throw ResourceError("pre_brute", "instance beyond brute force caps");
  // Nodes: source, copies, slots [t, t+1), sink.
  const std::size_t n = copies.size(), slots = static_cast<std::size_t>(horizon);
  const std::size_t source = 0, sink = 1 + n + slots;
  std::vector<std::vector<std::int64_t>> cap(sink + 1, std::vector<std::int64_t>(sink + 1, 0));
  std::int64_t need = 0;
  for (std::size_t c = 0; c < n; ++c) {
    const auto& w = inst.window(i, copies[c]);
    cap[source][1 + c] = w.processing;
    need += w.processing;
    for (std::int64_t t = w.release; t < w.deadline; ++t) cap[1 + c][1 + n + static_cast<std::size_t>(t)] = 1;
  }
  for (std::size_t t = 0; t < slots; ++t) cap[1 + n + t][sink] = 1;
  std::int64_t flow = 0;
  for (;;) {
    std::vector<std::size_t> parent(sink + 1, SIZE_MAX);
    std::deque<std::size_t> queue{source};
    parent[source] = source;
    while (!queue.empty() && parent[sink] == SIZE_MAX) {
      const auto u = queue.front();
      queue.pop_front();
      for (std::size_t v = 0; v <= sink; ++v)
        if (parent[v] == SIZE_MAX && cap[u][v] > 0) {
          parent[v] = u;
          queue.push_back(v);
        }
    }
    if (parent[sink] == SIZE_MAX) break;
    for (std::size_t v = sink; v != source; v = parent[v]) {
      --cap[parent[v]][v];
      ++cap[v][parent[v]];
    }
    ++flow;
  }
  return flow == need;
}

std::int64_t assign_brute(const SchedulingInstance& inst, std::int64_t cap) {
  const std::int64_t total = std::accumulate(inst.multiplicities.begin(), inst.multiplicities.end(), std::int64_t{0});
  if (total > cap) throw ResourceError("assign_cap", "demand beyond brute force cap");
  const auto vectors = sub_vectors(inst.multiplicities);
  std::vector<std::vector<bool>> ok(inst.machines());
  for (std::size_t i = 0; i < inst.machines(); ++i)
    for (const auto& x : vectors) ok[i].push_back(feasible_on(x, inst, i));
  std::map<IntPoint, std::int64_t> memo;
  constexpr std::int64_t none = INT64_MAX;
  auto solve = [&](auto&& self, const IntPoint& rem) -> std::int64_t {
    const auto first = std::find_if(rem.begin(), rem.end(), [](std::int64_t v) { return v > 0; });
    if (first == rem.end()) return 0;
    if (auto it = memo.find(rem); it != memo.end()) return it->second;
    const auto f = static_cast<std::size_t>(first - rem.begin());
    std::int64_t best = none;
    // the machine that runs a copy of the first remaining type
    for (std::size_t v = 0; v < vectors.size(); ++v) {
      const auto& x = vectors[v];
      if (x[f] == 0) continue;
      bool fits = true;
      for (std::size_t j = 0; j < x.size(); ++j) fits = fits && x[j] <= rem[j];
      if (!fits) continue;
      IntPoint next = rem;
      for (std::size_t j = 0; j < x.size(); ++j) next[j] -= x[j];
      std::int64_t rest = none;
      for (std::size_t i = 0; i < inst.machines(); ++i)
        if (ok[i][v]) {
          if (rest == none) rest = self(self, next);
          if (rest != none) best = std::min(best, rest + inst.machine_costs[i]);
        }
    }
    memo[rem] = best;
    return best;
  };
  const auto best = solve(solve, inst.multiplicities);
  if (best == none) throw Infeasible("some job fits no machine type");
  return best;
}

std::int64_t tardy_brute(const SchedulingInstance& inst, std::int64_t cap) {
  const std::int64_t total = std::accumulate(inst.multiplicities.begin(), inst.multiplicities.end(), std::int64_t{0});
  if (total > cap) throw ResourceError("tardy_cap", "demand beyond brute force cap");
  const std::size_t d = inst.jobs();
  const auto vectors = sub_vectors(inst.multiplicities);
  std::vector<std::vector<bool>> ok(inst.machines());
  for (std::size_t i = 0; i < inst.machines(); ++i)
    for (const auto& x : vectors) ok[i].push_back(nonpreemptive_brute(x, inst, i));
  std::vector<std::size_t> machine_types;
  for (std::size_t i = 0; i < inst.machines(); ++i)
    for (std::int64_t c = 0; c < inst.machine_counts[i]; ++c) machine_types.push_back(i);
  // best scheduled penalty mass for machines k.. given remaining copies
  std::map<std::pair<std::size_t, IntPoint>, std::int64_t> memo;
  auto solve = [&](auto&& self, std::size_t k, const IntPoint& rem) -> std::int64_t {
    if (k == machine_types.size()) return 0;
    if (auto it = memo.find({k, rem}); it != memo.end()) return it->second;
    std::int64_t best = 0;
    for (std::size_t v = 0; v < vectors.size(); ++v) {
      if (!ok[machine_types[k]][v]) continue;
      const auto& x = vectors[v];
      bool fits = true;
      std::int64_t mass = 0;
      for (std::size_t j = 0; j < d; ++j) {
        fits = fits && x[j] <= rem[j];
        mass += inst.penalties[j] * x[j];
      }
      if (!fits) continue;
      IntPoint next = rem;
      for (std::size_t j = 0; j < d; ++j) next[j] -= x[j];
      best = std::max(best, mass + self(self, k + 1, next));
    }
    memo[{k, rem}] = best;
    return best;
  };
  std::int64_t all = 0;
  for (std::size_t j = 0; j < d; ++j) all += inst.penalties[j] * inst.multiplicities[j];
  return all - solve(solve, 0, inst.multiplicities);
}

}  // namespace hmpack::oracle
