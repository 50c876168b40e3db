#include "hmpack/structure.hpp"

#include <algorithm>
#include <set>

#include "hmpack/errors.hpp"
#include "hmpack/pp_frame.hpp"

namespace hmpack {

void combo_add(Combination& c, const IntPoint& x, std::int64_t w) {
  if (w == 0) return;
  auto it = c.find(x);
  if (it == c.end()) {
    HMPACK_ASSERT(w > 0, "negative weight in combination");
    c.emplace(x, w);
    return;
  }
  it->second += w;
  HMPACK_ASSERT(it->second >= 0, "negative weight in combination");
  if (it->second == 0) c.erase(it);
}

IntVector combo_sum(const Combination& c, std::size_t dim) {
  IntVector s(dim, 0);
  for (const auto& [x, w] : c) {
    if (x.size() != dim) throw InputError("combination mixes dimensions");
    for (std::size_t j = 0; j < dim; ++j) {
      const __int128 v = s[j] + __int128(w) * x[j];
      if (v > INT64_MAX || v < INT64_MIN) throw InputError("combination sum overflows 64 bits");
      s[j] = static_cast<std::int64_t>(v);
    }
  }
  return s;
}

IntVector combo_sum(const Combination& c) {
  if (c.empty()) return {};
  return combo_sum(c, c.begin()->first.size());
}

std::int64_t combo_weight(const Combination& c) {
  std::int64_t w = 0;
  for (const auto& [x, v] : c) w += v;
  return w;
}

namespace {

bool same_parity(const IntPoint& x, const IntPoint& y) {
  for (std::size_t j = 0; j < x.size(); ++j)
    if (((x[j] - y[j]) & 1) != 0) return false;
  return true;
}

IntPoint midpoint(const IntPoint& x, const IntPoint& y) {
  IntPoint m(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) m[j] = x[j] + (y[j] - x[j]) / 2;
  return m;
}

// Lexicographically first pair (x, y), x < y, of equal parity among `pts` (sorted).
std::optional<std::pair<IntPoint, IntPoint>> first_parity_pair(const std::vector<IntPoint>& pts) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t k = i + 1; k < pts.size(); ++k)
      if (same_parity(pts[i], pts[k])) return std::make_pair(pts[i], pts[k]);
  return std::nullopt;
}

BigInt potential(const Combination& c) {
  BigInt f = 0;
  for (const auto& [x, w] : c) {
    BigInt n = 0;
    for (auto v : x) n += BigInt(static_cast<long>(v)) * static_cast<long>(v);
    f += n * static_cast<long>(w);
  }
  return f;
}

std::size_t pow2(std::size_t d) {
  HMPACK_ASSERT(d < 62, "dimension too large");
  return std::size_t{1} << d;
}

}  // namespace

Combination reduce_support(Combination lambda) {
  if (lambda.empty()) return lambda;
  const std::size_t d = lambda.begin()->first.size();
  for (const auto& [x, w] : lambda) {
    if (x.size() != d) throw InputError("combination mixes dimensions");
    if (w <= 0) throw InputError("combination weights must be positive");
  }
  const std::size_t bound = pow2(d);
  BigInt f = potential(lambda);
  while (lambda.size() > bound) {
    std::vector<IntPoint> pts;
    pts.reserve(lambda.size());
    for (const auto& [x, w] : lambda) pts.push_back(x);
    auto pair = first_parity_pair(pts);
    HMPACK_ASSERT(pair.has_value(), "no parity pair among more than 2^d points");
    const auto& [x, y] = *pair;
    const std::int64_t t = std::min(lambda.at(x), lambda.at(y));
    combo_add(lambda, x, -t);
    combo_add(lambda, y, -t);
    combo_add(lambda, midpoint(x, y), 2 * t);
    BigInt g = potential(lambda);
    HMPACK_ASSERT(g < f, "support reduction potential did not decrease");
    f = std::move(g);
  }
  return lambda;
}

namespace {

class GroupRedistributor {
 public:
  explicit GroupRedistributor(const Parallelepiped& pp) : pp_(pp), frame_(pp) {}

  const RatVector& coords(const IntPoint& x) {
    auto it = cache_.find(x);
    if (it != cache_.end()) return it->second;
    auto a = frame_.coordinates(x);
    if (!a) throw InputError("point lies outside the parallelepiped");
    return cache_.emplace(x, std::move(*a)).first->second;
  }

  bool is_vertex(const IntPoint& x) {
    for (const auto& a : coords(x))
      if (abs(a) != Rational(1)) return false;
    return true;
  }

  std::int64_t non_vertex_weight(const Combination& c) {
    std::int64_t w = 0;
    for (const auto& [x, v] : c)
      if (!is_vertex(x)) w += v;
    return w;
  }

  Combination run(Combination c) {
    const std::size_t d = pp_.dim();
    for (const auto& [x, w] : c) (void)coords(x);
    for (;;) {
      const IntPoint* heavy = nullptr;
      std::vector<IntPoint> light;
      for (const auto& [x, w] : c) {
        if (is_vertex(x)) continue;
        if (w >= 2 && !heavy) heavy = &x;
        light.push_back(x);
      }
      if (heavy) {
        mirror(c, *heavy);
        continue;
      }
      if (light.size() <= pow2(d)) return c;
      auto pair = first_parity_pair(light);
      HMPACK_ASSERT(pair.has_value(), "no parity pair among more than 2^d points");
      const auto [x, y] = *pair;
      combo_add(c, x, -1);
      combo_add(c, y, -1);
      const IntPoint m = midpoint(x, y);
      (void)coords(m);  // inside by convexity
      combo_add(c, m, 2);
    }
  }

 private:
  // Moves 2t units of x to t copies of the sign vertex y and t copies of z = 2x - y.
  void mirror(Combination& c, IntPoint x) {
    const std::int64_t before = non_vertex_weight(c);
    const RatVector alpha = coords(x);
    RatVector yr = pp_.center;
    for (std::size_t i = 0; i < alpha.size(); ++i)
      for (std::size_t j = 0; j < yr.size(); ++j) {
        if (alpha[i].sign() >= 0)
          yr[j] += pp_.directions[i][j];
        else
          yr[j] -= pp_.directions[i][j];
      }
    IntPoint y(yr.size()), z(yr.size());
    for (std::size_t j = 0; j < yr.size(); ++j) {
      HMPACK_ASSERT(yr[j].is_integer(), "fractional parallelepiped vertex");
      y[j] = yr[j].to_int64();
      z[j] = 2 * x[j] - y[j];
    }
    HMPACK_ASSERT(frame_.contains(z), "mirrored point left the parallelepiped");
    const std::int64_t t = c.at(x) / 2;
    combo_add(c, x, -2 * t);
    combo_add(c, y, t);
    combo_add(c, z, t);
    HMPACK_ASSERT(non_vertex_weight(c) < before, "redistribution did not reduce non-vertex weight");
  }

  const Parallelepiped& pp_;
  PpFrame frame_;
  std::map<IntPoint, RatVector> cache_;
};

}  // namespace

Combination redistribute_in_pp(const Parallelepiped& pp, Combination c) {
  for (const auto& [x, w] : c) {
    if (x.size() != pp.dim()) throw InputError("point dimension does not match parallelepiped");
    if (w <= 0) throw InputError("combination weights must be positive");
  }
  GroupRedistributor g(pp);
  return g.run(std::move(c));
}

Combination redistribute_in_pp(const Parallelepiped& pp, const IntPoint& x_star, std::int64_t w) {
  if (w <= 0) throw InputError("redistribution weight must be positive");
  if (!pp_contains(pp, x_star)) throw InputError("point lies outside the parallelepiped");
  return redistribute_in_pp(pp, Combination{{x_star, w}});
}

bool StructureSet::is_special(const IntPoint& x) const {
  return std::binary_search(special_points.begin(), special_points.end(), x);
}

StructureSet structure_set_from_cover(const Polytope& p, const Cover& cover) {
  StructureSet s;
  s.dim = p.dim();
  s.cover = cover.parallelepipeds;
  for (const auto& pp : s.cover)
    for (auto& v : pp_vertices(pp)) s.special_points.push_back(std::move(v));
  std::sort(s.special_points.begin(), s.special_points.end());
  s.special_points.erase(std::unique(s.special_points.begin(), s.special_points.end()),
                         s.special_points.end());
  std::vector<PpFrame> frames;
  frames.reserve(s.cover.size());
  for (const auto& pp : s.cover) frames.emplace_back(pp);
  for (const auto& x : cover.lattice) {
    for (std::size_t i = 0; i < frames.size(); ++i)
      if (frames[i].contains(x)) {
        s.locator.emplace(x, i);
        break;
      }
    HMPACK_ASSERT(s.locator.count(x), "lattice point not covered");
  }
  return s;
}

StructureSet compute_structure_set(const Polytope& p, const CoverOptions& options) {
  return structure_set_from_cover(p, build_cover(p, options));
}

bool StructureReport::holds(std::size_t dim) const {
  const std::size_t bound = pow2(2 * dim);
  return binary_off_special && support_on_special <= bound && support_off_special <= bound;
}

StructureReport check_structure(const Combination& c, const StructureSet& s) {
  StructureReport r;
  for (const auto& [x, w] : c) {
    if (s.is_special(x)) {
      ++r.support_on_special;
    } else {
      ++r.support_off_special;
      if (w > 1) r.binary_off_special = false;
    }
  }
  return r;
}

Combination normalize_combination(const Combination& lambda, const StructureSet& s) {
  if (lambda.empty()) return {};
  for (const auto& [x, w] : lambda)
    if (!s.locator.count(x)) throw InputError("support point is not covered by the structure set");
  const std::size_t d = lambda.begin()->first.size();
  const IntVector target = combo_sum(lambda, d);
  const std::int64_t weight = combo_weight(lambda);

  const Combination mu = reduce_support(lambda);
  Combination fixed;                          // support points already in X
  std::map<std::size_t, Combination> groups;  // by locating parallelepiped
  for (const auto& [x, w] : mu) {
    if (s.is_special(x))
      combo_add(fixed, x, w);
    else
      combo_add(groups[s.locator.at(x)], x, w);
  }
  std::map<std::size_t, GroupRedistributor> engines;
  for (auto& [g, c] : groups) {
    auto& e = engines.try_emplace(g, s.cover[g]).first->second;
    c = e.run(std::move(c));
  }

  // A point off X produced by several groups moves to the lowest such group, which reruns.
  for (std::size_t round = 0;; ++round) {
    HMPACK_ASSERT(round < 100000, "normalization did not settle");
    std::map<IntPoint, std::vector<std::size_t>> owners;
    for (const auto& [g, c] : groups)
      for (const auto& [x, w] : c)
        if (!s.is_special(x)) owners[x].push_back(g);
    bool moved = false;
    for (const auto& [x, gs] : owners) {
      if (gs.size() < 2) continue;
      const std::size_t keep = gs.front();
      for (std::size_t k = 1; k < gs.size(); ++k) {
        const std::int64_t w = groups[gs[k]].at(x);
        combo_add(groups[gs[k]], x, -w);
        combo_add(groups[keep], x, w);
      }
      groups[keep] = engines.at(keep).run(std::move(groups[keep]));
      moved = true;
      break;
    }
    if (!moved) break;
  }

  Combination out = fixed;
  for (const auto& [g, c] : groups)
    for (const auto& [x, w] : c) combo_add(out, x, w);

  HMPACK_ASSERT(combo_sum(out, d) == target, "normalization changed the sum");
  HMPACK_ASSERT(combo_weight(out) == weight, "normalization changed the total weight");
  const auto report = check_structure(out, s);
  HMPACK_ASSERT(report.binary_off_special, "normal form has weight above one off X");
  HMPACK_ASSERT(report.holds(d), "normal form exceeds the support bounds");
  return out;
}

}  // namespace hmpack
