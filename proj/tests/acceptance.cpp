// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "hmpack/errors.hpp"
#include "hmpack/geometry.hpp"
#include "hmpack/ilp.hpp"
#include "hmpack/oracle.hpp"
#include "hmpack/scheduling.hpp"
#include "hmpack/solver.hpp"
#include "hmpack/structure.hpp"

using namespace hmpack;

namespace {

// Pinned limits. All checks are exact; the only tolerance is wall time.
constexpr double kBinPackingSeconds = 300.0;
constexpr int kBinPackingInstances = 200;
constexpr int kRoundUpInstances = 100;
constexpr int kGapSearchTries = 100'000;
constexpr int kCoverPolytopes = 100;
constexpr int kSupportCombinations = 500;
constexpr int kNormalizeCases = 200;
constexpr int kIlpInstances = 500;
constexpr int kEdfInstances = 50;
constexpr int kTardyInstances = 30;

struct Outcome {
  bool pass = true;
  std::string detail;
};

BinPackingInstance random_bin_packing(std::mt19937_64& rng, std::size_t d, std::int64_t delta, std::int64_t total) {
  BinPackingInstance inst;
  std::uniform_int_distribution<std::int64_t> den(1, delta);
  std::int64_t left = total;
  for (std::size_t i = 0; i < d; ++i) {
    const auto q = den(rng);
    inst.sizes.push_back(Rational(std::uniform_int_distribution<std::int64_t>(1, q)(rng), q));
    const auto a = std::uniform_int_distribution<std::int64_t>(0, std::min<std::int64_t>(left, 5))(rng);
    inst.multiplicities.push_back(a);
    left -= a;
  }
  return inst;
}

std::vector<BinPackingInstance> criterion_one_instances() {
  std::mt19937_64 rng(1001);
  std::vector<BinPackingInstance> out;
  for (int k = 0; k < kBinPackingInstances; ++k) out.push_back(random_bin_packing(rng, 1 + k % 3, 20, 10));
  return out;
}

SolverOptions mode(SolverMode m) {
  SolverOptions o;
  o.mode = m;
  return o;
}

Outcome bin_packing_oracle() {
  const auto start = std::chrono::steady_clock::now();
  int agree = 0;
  std::string first_bad;
  for (const auto& inst : criterion_one_instances()) {
    const auto sol = bin_packing(inst, mode(SolverMode::Faithful));
    verify_packing(inst, sol);
    if (sol.objective == oracle::bp_brute_force(inst))
      ++agree;
    else if (first_bad.empty())
      first_bad = inst.str();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream os;
  os << agree << "/" << kBinPackingInstances << " equal to brute force in " << secs << " s (limit " << kBinPackingSeconds
     << " s)";
  if (!first_bad.empty()) os << "; first mismatch:\n" << first_bad;
  return {agree == kBinPackingInstances && secs < kBinPackingSeconds, os.str()};
}

Outcome round_up_two_types() {
  std::mt19937_64 rng(1002);
  int ok = 0;
  for (int k = 0; k < kRoundUpInstances; ++k) {
    const auto inst = random_bin_packing(rng, 2, 20, 10);
    const auto opt = bin_packing(inst).objective;
    if (opt == oracle::bp_brute_force(inst) && opt == to_int64(oracle::fractional_opt(inst).ceil())) ++ok;
  }
  return {ok == kRoundUpInstances, std::to_string(ok) + "/" + std::to_string(kRoundUpInstances) + " with OPT = ceil(OPT_f)"};
}

Outcome three_type_gap() {
  std::mt19937_64 rng(1003);
  for (int t = 1; t <= kGapSearchTries; ++t) {
    BinPackingInstance inst;
    for (int i = 0; i < 3; ++i) {
      inst.sizes.push_back(Rational(1, std::uniform_int_distribution<std::int64_t>(2, 8)(rng)));
      inst.multiplicities.push_back(std::uniform_int_distribution<std::int64_t>(1, 4)(rng));
    }
    const auto opt = oracle::bp_brute_force(inst);
    const auto rounded = to_int64(oracle::fractional_opt(inst).ceil());
    if (opt != rounded + 1) continue;
    bool solver_ok = true;
    for (auto m : {SolverMode::Faithful, SolverMode::Joint}) {
      auto o = mode(m);
      o.lp_bounds = false;
      solver_ok = solver_ok && bin_packing(inst, o).objective == opt;
    }
    const auto fixture = testing_fixtures::gap_instance();
    const bool fixture_ok = oracle::bp_brute_force(fixture) == to_int64(oracle::fractional_opt(fixture).ceil()) + 1 &&
                            bin_packing(fixture).objective == oracle::bp_brute_force(fixture);
    std::ostringstream os;
    os << "search hit after " << t << " tries: OPT=" << opt << " ceil(OPT_f)=" << rounded << " solver "
       << (solver_ok ? "agrees" : "DISAGREES") << "; pinned fixture " << (fixture_ok ? "ok" : "FAILS") << "\n"
       << inst.str();
    return {solver_ok && fixture_ok, os.str()};
  }
  return {false, "no gap instance within the search budget"};
}

Polytope random_bounded_polytope(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coef(-50, 50);
  for (;;) {
    const std::size_t d = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    const std::size_t m = std::uniform_int_distribution<std::size_t>(d + 1, 6)(rng);
    std::vector<IntVector> a(m, IntVector(d));
    IntVector b(m);
    for (std::size_t i = 0; i < m; ++i) {
      for (auto& e : a[i]) e = coef(rng);
      b[i] = coef(rng);
    }
    Polytope p(a, b);
    const auto bounds = coordinate_bounds(p);
    if (!bounds) continue;
    if (lattice_points(p).empty()) continue;
    return p;
  }
}

Outcome cover_correctness() {
  std::mt19937_64 rng(1004);
  int ok = 0;
  std::size_t points = 0;
  for (int k = 0; k < kCoverPolytopes; ++k) {
    const auto p = random_bounded_polytope(rng);
    const auto cover = build_cover(p);
    points += cover.lattice.size();
    if (oracle::cover_verify(cover.parallelepipeds, p).empty()) ++ok;
  }
  return {ok == kCoverPolytopes, std::to_string(ok) + "/" + std::to_string(kCoverPolytopes) + " covers valid over " +
                                     std::to_string(points) + " lattice points"};
}

Outcome support_reduction() {
  std::mt19937_64 rng(1005);
  int ok = 0;
  for (int k = 0; k < kSupportCombinations; ++k) {
    const std::size_t d = 1 + k % 4;
    std::uniform_int_distribution<int> coord(-6, 6), weight(1, 30), size(1, 40);
    Combination c;
    const int n = size(rng);
    for (int s = 0; s < n; ++s) {
      IntPoint x(d);
      for (auto& e : x) e = coord(rng);
      combo_add(c, x, weight(rng));
    }
    std::vector<IntPoint> support;
    for (const auto& [x, w] : c) support.push_back(x);
    const auto mu = reduce_support(c);
    bool good = mu.size() <= (std::size_t{1} << d) && combo_sum(mu, d) == combo_sum(c, d) &&
                combo_weight(mu) == combo_weight(c);
    for (const auto& [x, w] : mu) good = good && w > 0 && in_convex_hull(x, support);
    if (good) ++ok;
  }
  return {ok == kSupportCombinations, std::to_string(ok) + "/" + std::to_string(kSupportCombinations) + " reductions valid"};
}

Outcome structure_normal_form() {
  std::mt19937_64 rng(1006);
  std::uniform_int_distribution<int> coef(-9, 9);
  int ok = 0, cases = 0;
  while (cases < kNormalizeCases) {
    const std::size_t d = 1 + cases % 3;
    std::vector<IntVector> a;
    IntVector b;
    for (std::size_t i = 0; i < 3; ++i) {
      IntVector r(d);
      for (auto& e : r) e = coef(rng);
      a.push_back(r);
      b.push_back(coef(rng) + 10);
    }
    Polytope p(a, b);
    for (std::size_t j = 0; j < d; ++j) {
      IntVector up(d, 0), down(d, 0);
      up[j] = 1;
      down[j] = -1;
      p = p.with_rows({up, down}, {4, 4});
    }
    const auto lattice = lattice_points(p);
    if (lattice.empty()) continue;
    const auto s = compute_structure_set(p);
    // several combinations per cover
    for (int rep = 0; rep < 4 && cases < kNormalizeCases; ++rep, ++cases) {
      Combination c;
      const int n = std::uniform_int_distribution<int>(1, 12)(rng);
      for (int t = 0; t < n; ++t)
        combo_add(c, lattice[std::uniform_int_distribution<std::size_t>(0, lattice.size() - 1)(rng)],
                  std::uniform_int_distribution<int>(1, 25)(rng));
      const auto out = normalize_combination(c, s);
      const auto report = check_structure(out, s);
      if (report.holds(d) && combo_sum(out, d) == combo_sum(c, d) && combo_weight(out) == combo_weight(c)) ++ok;
    }
  }
  return {ok == kNormalizeCases, std::to_string(ok) + "/" + std::to_string(kNormalizeCases) + " normal forms valid"};
}

bool satisfies(const IlpProblem& p, const IntVector& x) {
  for (std::size_t i = 0; i < p.a.size(); ++i) {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < p.n; ++j) s += p.a[i][j] * x[j];
    const bool eq = !p.equality.empty() && p.equality[i];
    if (eq ? s != p.b[i] : s > p.b[i]) return false;
  }
  for (std::size_t j = 0; j < p.n; ++j)
    if ((p.lower[j] && x[j] < *p.lower[j]) || (p.upper[j] && x[j] > *p.upper[j])) return false;
  return true;
}

Outcome ilp_backend() {
  std::mt19937_64 rng(1007);
  std::uniform_int_distribution<int> coef(-10, 10), vars(1, 5), rows(1, 6);
  int ok = 0;
  for (int k = 0; k < kIlpInstances; ++k) {
    const std::size_t n = vars(rng);
    IlpProblem p(n);
    const std::size_t m = rows(rng);
    for (std::size_t i = 0; i < m; ++i) {
      IntVector r(n);
      for (auto& e : r) e = coef(rng);
      p.add_row(r, coef(rng), i == 0 && k % 4 == 0);
    }
    for (std::size_t j = 0; j < n; ++j) p.set_bounds(j, -3, 3);
    bool expected = false;
    IntVector x(n, -3);
    for (;;) {
      if (satisfies(p, x)) {
        expected = true;
        break;
      }
      std::size_t j = 0;
      while (j < n && x[j] == 3) x[j++] = -3;
      if (j == n) break;
      ++x[j];
    }
    const auto r = ilp_feasible(p);
    if (r.feasible == expected && (!r.feasible || satisfies(p, r.x))) ++ok;
  }
  return {ok == kIlpInstances, std::to_string(ok) + "/" + std::to_string(kIlpInstances) + " agree with enumeration"};
}

Outcome edf_equivalence() {
  std::mt19937_64 rng(1008);
  int ok = 0;
  std::size_t vectors = 0;
  for (int k = 0; k < kEdfInstances; ++k) {
    const std::size_t d = 1 + k % 2;
    const std::int64_t horizon = std::uniform_int_distribution<std::int64_t>(1, 10)(rng);
    SchedulingInstance inst;
    inst.variant = SchedulingVariant::Preemptive;
    inst.windows.resize(1);
    inst.machine_costs = {1};
    for (std::size_t j = 0; j < d; ++j) {
      JobWindow w;
      w.release = std::uniform_int_distribution<std::int64_t>(0, horizon - 1)(rng);
      w.deadline = std::uniform_int_distribution<std::int64_t>(w.release + 1, horizon)(rng);
      w.processing = std::uniform_int_distribution<std::int64_t>(1, horizon)(rng);
      inst.windows[0].push_back(w);
      inst.multiplicities.push_back(0);
    }
    bool good = true;
    try {
      const auto p = build_edf_polytope(inst, 0);
      const std::int64_t hi = horizon + 1;
      IntPoint x(d, 0);
      for (;;) {
        ++vectors;
        const auto r = edf_simulate(x, inst, 0);
        good = good && p.contains(x) == r.feasible;
        if (r.feasible) validate_schedule(inst, 0, x, r.schedule, true);
        std::size_t j = 0;
        while (j < d && x[j] == hi) x[j++] = 0;
        if (j == d) break;
        ++x[j];
      }
    } catch (const std::exception&) {
      good = false;
    }
    if (good) ++ok;
  }
  return {ok == kEdfInstances, std::to_string(ok) + "/" + std::to_string(kEdfInstances) + " instances, " +
                                   std::to_string(vectors) + " job vectors, membership equals EDF feasibility"};
}

Outcome nonpreemptive_fixture() {
  SchedulingInstance inst;
  inst.variant = SchedulingVariant::NonPreemptive;
  inst.windows = {{{0, 300, 150}, {100, 102, 1}, {200, 202, 1}}};
  inst.multiplicities = {1, 1, 1};
  inst.machine_costs = {1};
  const auto p = build_nonpreemptive_polytope(inst, 0);
  bool good = true;
  std::ostringstream os;
  for (const IntPoint& x : {IntPoint{2, 0, 0}, IntPoint{0, 2, 2}}) {
    const auto aux = nonpreemptive_completion(x, inst, 0);
    const bool in = aux && p.contains(*aux);
    good = good && in && oracle::nonpreemptive_brute(x, inst, 0);
    if (aux) validate_schedule(inst, 0, x, extract_cyclic_schedule(*aux, inst, 0), false);
    os << "(" << x[0] << "," << x[1] << "," << x[2] << ") " << (in ? "completable" : "NOT completable") << "; ";
  }
  const bool blocked = !nonpreemptive_completion({1, 1, 1}, inst, 0) && !oracle::nonpreemptive_brute({1, 1, 1}, inst, 0);
  good = good && blocked;
  os << "(1,1,1) " << (blocked ? "not completable" : "COMPLETABLE");
  return {good, os.str()};
}

Outcome knapsack_fixture() {
  const auto p = testing_fixtures::knapsack_polytope();
  const auto points = lattice_points(p);
  const auto hull = integer_hull_vertices(p);
  const std::vector<IntPoint> expected{{0, 0}, {0, 4}, {1, 4}, {6, 1}, {7, 0}};
  std::ostringstream os;
  os << points.size() << " lattice points, hull";
  for (const auto& v : hull) os << " (" << v[0] << "," << v[1] << ")";
  return {points.size() == 25 && hull == expected, os.str()};
}

Outcome mode_equivalence() {
  int ok = 0;
  for (const auto& inst : criterion_one_instances())
    if (bin_packing(inst, mode(SolverMode::Faithful)).objective == bin_packing(inst, mode(SolverMode::Joint)).objective) ++ok;
  return {ok == kBinPackingInstances,
          std::to_string(ok) + "/" + std::to_string(kBinPackingInstances) + " equal objectives"};
}

Outcome tardy_variant() {
  std::mt19937_64 rng(1012);
  int ok = 0;
  for (int k = 0; k < kTardyInstances; ++k) {
    SchedulingInstance inst;
    inst.variant = SchedulingVariant::Tardy;
    const std::size_t d = 1 + k % 3, m = 1 + (k / 3) % 2;
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<JobWindow> row;
      for (std::size_t j = 0; j < d; ++j) {
        JobWindow w;
        w.release = std::uniform_int_distribution<std::int64_t>(0, 5)(rng);
        w.deadline = std::uniform_int_distribution<std::int64_t>(w.release + 1, 8)(rng);
        w.processing = std::uniform_int_distribution<std::int64_t>(1, 3)(rng);
        row.push_back(w);
      }
      inst.windows.push_back(row);
      inst.machine_counts.push_back(std::uniform_int_distribution<std::int64_t>(0, 2)(rng));
    }
    std::int64_t left = 5;
    for (std::size_t j = 0; j < d; ++j) {
      const auto a = std::uniform_int_distribution<std::int64_t>(0, std::min<std::int64_t>(left, 3))(rng);
      inst.multiplicities.push_back(a);
      left -= a;
      inst.penalties.push_back(std::uniform_int_distribution<std::int64_t>(0, 9)(rng));
    }
    if (tardy_min_penalty(inst).objective == oracle::tardy_brute(inst)) ++ok;
  }
  return {ok == kTardyInstances, std::to_string(ok) + "/" + std::to_string(kTardyInstances) + " equal to exhaustive search"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"bin packing equals brute force", bin_packing_oracle},
      {"two item types round up", round_up_two_types},
      {"three item types gap witness", three_type_gap},
      {"parallelepiped cover correctness", cover_correctness},
      {"support reduction", support_reduction},
      {"structure normal form", structure_normal_form},
      {"ILP backend", ilp_backend},
      {"EDF polytope equivalence", edf_equivalence},
      {"non-preemptive three-window fixture", nonpreemptive_fixture},
      {"knapsack polytope fixture", knapsack_fixture},
      {"faithful and joint modes agree", mode_equivalence},
      {"tardy penalty", tardy_variant},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!out.pass) ++failed;
    std::printf("criterion %2zu %s  %s: %s [%.2f s]\n", i + 1, out.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                out.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
