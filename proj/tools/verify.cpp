#include "verify.hpp"

#include <algorithm>
#include <sstream>

#include "hmpack/oracle.hpp"

namespace hmpack::cli {

namespace {

std::string eq_detail(const std::string& a, std::int64_t x, const std::string& b, std::int64_t y) {
  std::ostringstream os;
  os << a << '=' << x << ' ' << b << '=' << y;
  return os.str();
}

SolverOptions with_mode(SolverOptions o, SolverMode m) {
  o.mode = m;
  return o;
}

// Job vectors x <= hi with Σ x <= total.
std::vector<IntPoint> small_vectors(const IntVector& hi, std::int64_t total) {
  std::vector<IntPoint> out;
  IntPoint x(hi.size(), 0);
  for (;;) {
    std::int64_t s = 0;
    for (auto v : x) s += v;
    if (s <= total) out.push_back(x);
    std::size_t j = 0;
    while (j < x.size() && x[j] == hi[j]) x[j++] = 0;
    if (j == x.size()) return out;
    ++x[j];
  }
}

IntVector type_box(const SchedulingInstance& inst, std::size_t i) {
  IntVector hi;
  for (std::size_t j = 0; j < inst.jobs(); ++j)
    hi.push_back(std::min(inst.multiplicities[j], inst.horizon(i) / inst.window(i, j).processing + 1));
  return hi;
}

void check_bin_packing(const BinPackingInstance& inst, const SolverOptions& options, std::vector<Check>& out) {
  const auto faithful = bin_packing(inst, with_mode(options, SolverMode::Faithful));
  const auto joint = bin_packing(inst, with_mode(options, SolverMode::Joint));
  verify_packing(inst, faithful);
  verify_packing(inst, joint);
  out.push_back({"packing valid", true, "both modes pass verify_packing"});
  out.push_back({"mode agreement", faithful.objective == joint.objective,
                 eq_detail("faithful", faithful.objective, "joint", joint.objective)});
  const auto oracle = oracle::bp_brute_force(inst);
  out.push_back({"brute force", faithful.objective == oracle, eq_detail("solver", faithful.objective, "oracle", oracle)});
  const auto frac = oracle::fractional_opt(inst);
  const auto rounded = to_int64(frac.ceil());
  std::ostringstream os;
  os << "opt=" << faithful.objective << " opt_f=" << frac << " ceil=" << rounded;
  if (inst.dim() <= 2)
    out.push_back({"round-up", faithful.objective == rounded, os.str()});
  else
    out.push_back({"fractional optimum", faithful.objective >= rounded,
                   os.str() + (faithful.objective > rounded ? " (gap)" : "")});
}

void check_cutting_stock(const CuttingStockInstance& inst, const SolverOptions& options, std::vector<Check>& out) {
  const auto faithful = cutting_stock(inst, with_mode(options, SolverMode::Faithful));
  const auto joint = cutting_stock(inst, with_mode(options, SolverMode::Joint));
  verify_packing(inst, faithful);
  verify_packing(inst, joint);
  out.push_back({"packing valid", true, "both modes pass verify_packing"});
  out.push_back({"mode agreement", faithful.objective == joint.objective,
                 eq_detail("faithful", faithful.objective, "joint", joint.objective)});
  if (inst.bins.size() == 1 && inst.bins[0].capacity == Rational(1)) {
    const auto oracle = oracle::bp_brute_force(inst.items) * inst.bins[0].cost;
    out.push_back({"brute force", faithful.objective == oracle, eq_detail("solver", faithful.objective, "oracle", oracle)});
  }
}

void check_scheduling(const SchedulingInstance& inst, const SolverOptions& options, std::vector<Check>& out) {
  for (std::size_t i = 0; i < inst.machines(); ++i) {
    std::size_t vectors = 0, mismatches = 0;
    if (inst.variant == SchedulingVariant::Preemptive) {
      const auto poly = build_edf_polytope(inst, i);
      for (const auto& x : small_vectors(type_box(inst, i), 8)) {
        ++vectors;
        const bool in = poly.contains(x);
        if (in != edf_simulate(x, inst, i).feasible || in != oracle::preemptive_brute(x, inst, i)) ++mismatches;
      }
      out.push_back({"EDF polytope, type " + std::to_string(i + 1), mismatches == 0,
                     std::to_string(vectors) + " vectors, " + std::to_string(mismatches) + " mismatches"});
    } else {
      for (const auto& x : small_vectors(type_box(inst, i), 6)) {
        ++vectors;
        if (nonpreemptive_completion(x, inst, i).has_value() != oracle::nonpreemptive_brute(x, inst, i)) ++mismatches;
      }
      out.push_back({"cycle polytope vs brute force, type " + std::to_string(i + 1), mismatches == 0,
                     std::to_string(vectors) + " vectors, " + std::to_string(mismatches) + " mismatches"});
    }
  }
  const auto sol = solve_scheduling(inst, options);
  const auto oracle = inst.variant == SchedulingVariant::Tardy ? oracle::tardy_brute(inst) : oracle::assign_brute(inst);
  out.push_back({"brute force", sol.objective == oracle, eq_detail("solver", sol.objective, "oracle", oracle)});
}

void check_polytope(const PolytopeFile& f, const SolverOptions& options, std::vector<Check>& out) {
  const auto cover = build_cover(f.p, options.cover);
  for (const auto& c : verify_cover(f.p, cover.parallelepipeds, options)) out.push_back(c);
  if (f.q) {
    const auto faithful = int_cone_intersect(f.p, *f.q, with_mode(options, SolverMode::Faithful));
    const auto joint = int_cone_intersect(f.p, *f.q, with_mode(options, SolverMode::Joint));
    out.push_back({"mode agreement", faithful.found == joint.found,
                   std::string("faithful=") + (faithful.found ? "found" : "empty") +
                       " joint=" + (joint.found ? "found" : "empty")});
  }
}

}  // namespace

std::vector<Check> verify_instance(const InstanceFile& file, const SolverOptions& options) {
  std::vector<Check> out;
  if (const auto* bp = std::get_if<BinPackingInstance>(&file.payload))
    check_bin_packing(*bp, options, out);
  else if (const auto* cs = std::get_if<CuttingStockInstance>(&file.payload))
    check_cutting_stock(*cs, options, out);
  else if (const auto* s = std::get_if<SchedulingInstance>(&file.payload))
    check_scheduling(*s, options, out);
  else
    check_polytope(std::get<PolytopeFile>(file.payload), options, out);
  return out;
}

std::vector<Check> verify_cover(const Polytope& p, const std::vector<Parallelepiped>& cover,
                                const SolverOptions& options) {
  std::vector<Check> out;
  const auto violations = oracle::cover_verify(cover, p, options.cover.limits.max_box_points);
  for (const auto& v : violations) out.push_back({"cover", false, v.message});
  if (violations.empty())
    out.push_back({"cover", true, std::to_string(cover.size()) + " parallelepipeds cover P and stay inside"});
  return out;
}

}  // namespace hmpack::cli
