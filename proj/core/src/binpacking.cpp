#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <tuple>

#include "hmpack/errors.hpp"
#include "hmpack/lp.hpp"
#include "hmpack/solver.hpp"
#include "hmpack/text_tokens.hpp"

namespace hmpack {

namespace {

BinPackingInstance read_items(TokenReader& in) {
  BinPackingInstance inst;
  const auto d = in.next_int("item type count d");
  if (d < 0) throw in.error("item type count must be non-negative");
  for (std::int64_t i = 0; i < d; ++i) {
    auto tok = in.next("item size");
    Rational s;
    try {
      s = Rational::parse(tok.text);
    } catch (const InputError& e) {
      throw TokenReader::error_at(tok, std::string("item size: ") + e.what());
    }
    if (s.sign() <= 0) throw TokenReader::error_at(tok, "item sizes must be positive, got " + s.str());
    if (s > Rational(1)) throw TokenReader::error_at(tok, "item size " + s.str() + " exceeds the bin capacity 1");
    auto atok = in.next("multiplicity");
    Rational ar;
    try {
      ar = Rational::parse(atok.text);
    } catch (const InputError&) {
      throw TokenReader::error_at(atok, "expected integer multiplicity, got '" + std::string(atok.text) + "'");
    }
    if (!ar.is_integer() || ar.sign() < 0)
      throw TokenReader::error_at(atok, "multiplicity must be a non-negative integer, got '" +
                                            std::string(atok.text) + "'");
    inst.sizes.push_back(s);
    inst.multiplicities.push_back(ar.to_int64());
  }
  return inst;
}

BigInt lcm_of_denominators(const std::vector<Rational>& values) {
  BigInt l = 1;
  for (const auto& v : values) {
    const BigInt q = v.denominator();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_mpz_t());
  }
  return l;
}

std::int64_t scaled(const Rational& v, const BigInt& l) {
  const Rational r = v * Rational(l);
  HMPACK_ASSERT(r.is_integer(), "scaling left a fraction");
  return r.to_int64();
}

struct PackingModel {
  IntVector sizes;             // scaled
  std::vector<std::int64_t> capacities;  // scaled, per bin type
  IntVector demand;
};

PackingModel packing_model(const BinPackingInstance& items, const std::vector<BinType>& bins) {
  std::vector<Rational> caps;
  for (const auto& b : bins) caps.push_back(b.capacity);
  const auto s = scale_sizes(items.sizes, caps);
  PackingModel m;
  m.sizes = s.sizes;
  for (const auto& b : bins) m.capacities.push_back(scaled(b.capacity, BigInt(static_cast<long>(s.scale))));
  m.demand = items.multiplicities;
  return m;
}

std::int64_t pattern_load(const IntVector& sizes, const IntPoint& x) {
  __int128 load = 0;
  for (std::size_t i = 0; i < x.size(); ++i) load += __int128(sizes[i]) * x[i];
  if (load > INT64_MAX) return INT64_MAX;
  return static_cast<std::int64_t>(load);
}

// All nonzero x with 0 <= x <= demand and load <= capacity, lexicographic.
std::vector<IntPoint> fitting_patterns(const IntVector& sizes, const IntVector& demand, std::int64_t capacity) {
  std::vector<IntPoint> out;
  const std::size_t d = sizes.size();
  IntPoint x(d, 0);
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t left) {
    if (i == d) {
      if (std::any_of(x.begin(), x.end(), [](std::int64_t v) { return v != 0; })) out.push_back(x);
      return;
    }
    for (std::int64_t k = 0; k <= demand[i] && k * sizes[i] <= left; ++k) {
      x[i] = k;
      rec(i + 1, left - k * sizes[i]);
    }
    x[i] = 0;
  };
  rec(0, capacity);
  return out;
}

// First-fit decreasing bin count.
std::int64_t first_fit_decreasing(const IntVector& sizes, const IntVector& demand, std::int64_t capacity) {
  std::vector<std::size_t> order(sizes.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) { return sizes[i] > sizes[j]; });
  std::vector<std::int64_t> free;
  for (auto i : order)
    for (std::int64_t k = 0; k < demand[i]; ++k) {
      auto it = std::find_if(free.begin(), free.end(), [&](std::int64_t f) { return f >= sizes[i]; });
      if (it == free.end())
        free.push_back(capacity - sizes[i]);
      else
        *it -= sizes[i];
    }
  return static_cast<std::int64_t>(free.size());
}

// Pattern LP over patterns below the demand: min Σ λ_p subject to Σ λ_p p = demand. Its value
// is at least OPT_f and at most OPT.
Rational fractional_optimum(const std::vector<IntPoint>& patterns, const IntVector& demand) {
  const std::size_t d = demand.size();
  LinearProgram lp;
  lp.a = RatMatrix(d, patterns.size());
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t p = 0; p < patterns.size(); ++p) lp.a(i, p) = patterns[p][i];
  lp.b.assign(demand.begin(), demand.end());
  lp.equality.assign(d, true);
  lp.c.assign(patterns.size(), Rational(1));
  lp.sense = Sense::Minimize;
  lp.bounds.assign(patterns.size(), VarBounds{Rational(0), std::nullopt});
  const auto res = solve_lp(lp);
  HMPACK_ASSERT(res.status == LpStatus::Optimal, "pattern LP is not solvable");
  return res.value;
}

void sort_patterns(std::vector<PatternUse>& uses) {
  std::sort(uses.begin(), uses.end(), [](const PatternUse& a, const PatternUse& b) {
    return std::tie(a.bin_type, a.pattern) < std::tie(b.bin_type, b.pattern);
  });
}

}  // namespace

std::int64_t BinPackingInstance::delta() const {
  BigInt m = 0;
  for (const auto& s : sizes) m = std::max(m, s.denominator());
  for (auto a : multiplicities) m = std::max(m, BigInt(static_cast<long>(a)));
  return to_int64(m);
}

void BinPackingInstance::validate() const {
  if (sizes.size() != multiplicities.size()) throw InputError("sizes and multiplicities differ in length");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i].sign() <= 0) throw InputError("item " + std::to_string(i + 1) + " has non-positive size");
    if (sizes[i] > Rational(1)) throw InputError("item " + std::to_string(i + 1) + " is larger than a bin");
    if (multiplicities[i] < 0) throw InputError("item " + std::to_string(i + 1) + " has negative multiplicity");
  }
}

BinPackingInstance BinPackingInstance::parse(std::string_view text) {
  TokenReader in(text);
  auto inst = read_items(in);
  if (!in.at_end()) throw in.error("trailing data after bin packing instance");
  return inst;
}

std::string BinPackingInstance::str() const {
  std::ostringstream os;
  os << dim() << '\n';
  for (std::size_t i = 0; i < dim(); ++i) os << sizes[i] << ' ' << multiplicities[i] << '\n';
  return os.str();
}

void CuttingStockInstance::validate() const {
  items.validate();
  if (bins.empty()) throw InputError("cutting stock needs at least one bin type");
  for (std::size_t j = 0; j < bins.size(); ++j) {
    if (bins[j].capacity.sign() <= 0) throw InputError("bin type " + std::to_string(j + 1) + " has non-positive capacity");
    if (bins[j].cost <= 0) throw InputError("bin type " + std::to_string(j + 1) + " has non-positive cost");
  }
}

CuttingStockInstance CuttingStockInstance::parse(std::string_view text) {
  TokenReader in(text);
  CuttingStockInstance inst;
  inst.items = read_items(in);
  const auto m = in.next_int("bin type count m");
  if (m < 1) throw in.error("cutting stock needs at least one bin type");
  for (std::int64_t j = 0; j < m; ++j) {
    auto tok = in.next("bin capacity");
    BinType b;
    try {
      b.capacity = Rational::parse(tok.text);
    } catch (const InputError& e) {
      throw TokenReader::error_at(tok, std::string("bin capacity: ") + e.what());
    }
    if (b.capacity.sign() <= 0) throw TokenReader::error_at(tok, "bin capacities must be positive");
    b.cost = in.next_int("bin cost");
    if (b.cost <= 0) throw in.error("bin costs must be positive");
    inst.bins.push_back(b);
  }
  if (!in.at_end()) throw in.error("trailing data after cutting stock instance");
  return inst;
}

std::string CuttingStockInstance::str() const {
  std::ostringstream os;
  os << items.str() << bins.size() << '\n';
  for (const auto& b : bins) os << b.capacity << ' ' << b.cost << '\n';
  return os.str();
}

ScaledSizes scale_sizes(const std::vector<Rational>& sizes, const std::vector<Rational>& capacities) {
  std::vector<Rational> all = sizes;
  all.insert(all.end(), capacities.begin(), capacities.end());
  const BigInt l = lcm_of_denominators(all);
  ScaledSizes out;
  out.scale = to_int64(l);
  for (const auto& s : sizes) out.sizes.push_back(scaled(s, l));
  return out;
}

Polytope lifted_pattern_polytope(const BinPackingInstance& inst) {
  inst.validate();
  const std::size_t d = inst.dim();
  const auto s = scale_sizes(inst.sizes);
  std::vector<IntVector> a;
  IntVector b;
  for (std::size_t i = 0; i < d; ++i) {
    IntVector lo(d + 1, 0), hi(d + 1, 0);
    lo[i] = -1;
    hi[i] = 1;
    a.push_back(lo);
    b.push_back(0);
    a.push_back(hi);
    b.push_back(inst.multiplicities[i]);
  }
  IntVector load(d + 1, 0);
  for (std::size_t i = 0; i < d; ++i) load[i] = s.sizes[i];
  a.push_back(load);
  b.push_back(s.scale);
  IntVector t_up(d + 1, 0), t_down(d + 1, 0);
  t_up[d] = 1;
  t_down[d] = -1;
  a.push_back(t_up);
  b.push_back(1);
  a.push_back(t_down);
  b.push_back(-1);
  return Polytope(std::move(a), std::move(b));
}

void verify_packing(const CuttingStockInstance& inst, const PackingSolution& sol) {
  const auto model = packing_model(inst.items, inst.bins);
  const std::size_t d = inst.items.dim();
  IntVector total(d, 0);
  std::int64_t cost = 0;
  for (const auto& u : sol.patterns) {
    HMPACK_ASSERT(u.bin_type < inst.bins.size(), "pattern uses an unknown bin type");
    HMPACK_ASSERT(u.pattern.size() == d, "pattern has the wrong dimension");
    HMPACK_ASSERT(u.multiplicity > 0, "pattern multiplicity must be positive");
    for (auto v : u.pattern) HMPACK_ASSERT(v >= 0, "pattern has a negative entry");
    HMPACK_ASSERT(pattern_load(model.sizes, u.pattern) <= model.capacities[u.bin_type], "pattern overfills its bin");
    for (std::size_t i = 0; i < d; ++i) total[i] += u.multiplicity * u.pattern[i];
    cost += u.multiplicity * inst.bins[u.bin_type].cost;
  }
  HMPACK_ASSERT(total == inst.items.multiplicities, "packing does not meet demand exactly");
  HMPACK_ASSERT(cost == sol.objective, "objective differs from the packing cost");
}

void verify_packing(const BinPackingInstance& inst, const PackingSolution& sol) {
  verify_packing(CuttingStockInstance{inst, {BinType{Rational(1), 1}}}, sol);
}

PackingSolution bin_packing(const BinPackingInstance& inst, const SolverOptions& options) {
  inst.validate();
  const std::size_t d = inst.dim();
  PackingSolution sol;
  if (std::all_of(inst.multiplicities.begin(), inst.multiplicities.end(), [](auto a) { return a == 0; })) {
    verify_packing(inst, sol);
    return sol;
  }
  const auto model = packing_model(inst, {BinType{Rational(1), 1}});
  const std::int64_t cap = model.capacities[0];

  Rational volume = 0;
  for (std::size_t i = 0; i < d; ++i) volume += inst.sizes[i] * Rational(inst.multiplicities[i]);
  std::int64_t lo = to_int64(volume.ceil());
  std::int64_t hi = std::accumulate(inst.multiplicities.begin(), inst.multiplicities.end(), std::int64_t{0});
  if (options.lp_bounds) {
    const auto patterns = fitting_patterns(model.sizes, model.demand, cap);
    lo = std::max(lo, to_int64(fractional_optimum(patterns, model.demand).ceil()));
    hi = std::min(hi, first_fit_decreasing(model.sizes, model.demand, cap));
  }
  HMPACK_ASSERT(lo <= hi, "bin packing bounds cross");

  const IntConeSolver solver(lifted_pattern_polytope(inst), options);
  auto query = [&](std::int64_t b) {
    // Q_b = {a} x [0, b]
    std::vector<IntVector> a;
    IntVector rhs;
    for (std::size_t i = 0; i <= d; ++i) {
      IntVector up(d + 1, 0), down(d + 1, 0);
      up[i] = 1;
      down[i] = -1;
      a.push_back(up);
      rhs.push_back(i < d ? inst.multiplicities[i] : b);
      a.push_back(down);
      rhs.push_back(i < d ? -inst.multiplicities[i] : 0);
    }
    ++sol.cone_queries;
    return solver.solve(Polytope(std::move(a), std::move(rhs)));
  };

  std::optional<IntConeResult> best;
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    auto r = query(mid);
    if (r.found) {
      hi = mid;
      best = std::move(r);
    } else {
      lo = mid + 1;
    }
  }
  if (!best) {
    auto r = query(lo);
    HMPACK_ASSERT(r.found, "no packing within the upper bound");
    best = std::move(r);
  }

  for (const auto& [x, w] : best->lambda) {
    HMPACK_ASSERT(x[d] == 1, "lifted pattern without the unit coordinate");
    sol.patterns.push_back(PatternUse{IntPoint(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(d)), 0, w});
    sol.objective += w;
  }
  HMPACK_ASSERT(sol.objective == lo, "packing weight differs from the optimum bound");
  sort_patterns(sol.patterns);
  sol.guess = best->guess;
  verify_packing(inst, sol);
  return sol;
}

PackingSolution cutting_stock(const CuttingStockInstance& inst, const SolverOptions& options) {
  inst.validate();
  const std::size_t d = inst.items.dim();
  const auto model = packing_model(inst.items, inst.bins);
  PackingSolution sol;
  if (d == 0) {
    verify_packing(inst, sol);
    return sol;
  }

  std::int64_t upper = 0;
  for (std::size_t i = 0; i < d; ++i) {
    std::optional<std::int64_t> cheapest;
    for (std::size_t j = 0; j < inst.bins.size(); ++j)
      if (model.sizes[i] <= model.capacities[j])
        cheapest = std::min(cheapest.value_or(inst.bins[j].cost), inst.bins[j].cost);
    if (!cheapest && inst.items.multiplicities[i] > 0)
      throw Infeasible("item " + std::to_string(i + 1) + " fits no bin type");
    if (cheapest) upper += *cheapest * inst.items.multiplicities[i];
  }

  std::vector<PolytopePart> parts;
  for (std::size_t j = 0; j < inst.bins.size(); ++j) {
    std::vector<IntVector> a;
    IntVector b;
    for (std::size_t i = 0; i < d; ++i) {
      IntVector lo(d, 0), hi(d, 0);
      lo[i] = -1;
      hi[i] = 1;
      a.push_back(lo);
      b.push_back(0);
      a.push_back(hi);
      b.push_back(inst.items.multiplicities[i]);
    }
    a.push_back(model.sizes);
    b.push_back(model.capacities[j]);
    PolytopePart part;
    part.polytope = Polytope(std::move(a), std::move(b));
    part.projected_dim = d;
    part.cost = inst.bins[j].cost;
    parts.push_back(std::move(part));
  }
  std::vector<IntVector> qa;
  IntVector qb;
  for (std::size_t i = 0; i < d; ++i) {
    IntVector up(d, 0), down(d, 0);
    up[i] = 1;
    down[i] = -1;
    qa.push_back(up);
    qb.push_back(inst.items.multiplicities[i]);
    qa.push_back(down);
    qb.push_back(-inst.items.multiplicities[i]);
  }
  const auto best = multi_polytope_minimize(parts, Polytope(std::move(qa), std::move(qb)), upper, options);
  HMPACK_ASSERT(best.has_value(), "no cutting stock solution within the upper bound");
  for (const auto& p : best->points) sol.patterns.push_back(PatternUse{p.x, p.part, p.multiplicity});
  sol.objective = best->cost;
  sort_patterns(sol.patterns);
  verify_packing(inst, sol);
  return sol;
}

}  // namespace hmpack
