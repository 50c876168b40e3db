#include "json_io.hpp"

#include <algorithm>

#include "hmpack/errors.hpp"

namespace hmpack::cli {

Json to_json(const Rational& r) {
  if (r.is_integer()) return r.to_int64();
  return r.str();
}

Json to_json(const RatVector& v) {
  Json out = Json::array();
  for (const auto& r : v) out.push_back(to_json(r));
  return out;
}

Json to_json(const GuessRecord& g) {
  return Json{{"parallelepipeds", g.parallelepipeds},
              {"special_points", g.special_points},
              {"extra_points", g.extra_points},
              {"guesses_tried", g.guesses_tried},
              {"joint", g.joint}};
}

Json to_json(const Combination& c) {
  Json out = Json::array();
  for (const auto& [x, w] : c) out.push_back(Json{{"point", x}, {"weight", w}});
  return out;
}

Json to_json(const Parallelepiped& pp) {
  Json dirs = Json::array();
  for (const auto& d : pp.directions) dirs.push_back(to_json(d));
  auto verts = pp_vertices(pp);
  std::sort(verts.begin(), verts.end());
  return Json{{"center", to_json(pp.center)}, {"directions", dirs}, {"vertices", verts}};
}

Json solution_json(const BinPackingInstance& inst, const PackingSolution& sol) {
  Json bins = Json::array();
  for (const auto& u : sol.patterns) {
    Rational load(0);
    for (std::size_t i = 0; i < inst.dim(); ++i) load += inst.sizes[i] * Rational(u.pattern[i]);
    bins.push_back(Json{{"pattern", u.pattern}, {"count", u.multiplicity}, {"load", to_json(load)}});
  }
  return Json{{"kind", "binpacking"},
              {"opt", sol.objective},
              {"bins", bins},
              {"cone_queries", sol.cone_queries},
              {"guess", to_json(sol.guess)}};
}

Json solution_json(const CuttingStockInstance& inst, const PackingSolution& sol) {
  Json bins = Json::array();
  for (const auto& u : sol.patterns) {
    Rational load(0);
    for (std::size_t i = 0; i < inst.items.dim(); ++i) load += inst.items.sizes[i] * Rational(u.pattern[i]);
    bins.push_back(Json{{"bin_type", u.bin_type + 1},
                        {"pattern", u.pattern},
                        {"count", u.multiplicity},
                        {"load", to_json(load)}});
  }
  return Json{{"kind", "cuttingstock"}, {"opt", sol.objective}, {"bins", bins}};
}

Json solution_json(const SchedulingInstance& inst, const ScheduleSolution& sol) {
  Json machines = Json::array();
  for (const auto& m : sol.machines) {
    Json pieces = Json::array();
    for (const auto& p : m.schedule)
      pieces.push_back(Json{{"job", p.job + 1}, {"copy", p.copy + 1}, {"start", p.start}, {"end", p.end}});
    machines.push_back(Json{{"type", m.type + 1}, {"jobs", m.x}, {"intervals", pieces}});
  }
  const char* variant = inst.variant == SchedulingVariant::Preemptive      ? "preemptive"
                        : inst.variant == SchedulingVariant::NonPreemptive ? "nonpreemptive"
                                                                           : "tardy";
  return Json{{"kind", "scheduling"},
              {"variant", variant},
              {"objective", sol.objective},
              {"scheduled", sol.scheduled},
              {"machines", machines}};
}

Json cone_json(const IntConeResult& r) {
  Json out{{"kind", "intcone"}, {"found", r.found}};
  if (r.found) {
    out["y"] = r.y;
    out["combination"] = to_json(r.lambda);
  }
  out["guess"] = to_json(r.guess);
  return out;
}

Json cover_json(const Cover& cover, std::size_t dim) {
  std::vector<std::pair<std::vector<IntPoint>, const Parallelepiped*>> order;
  for (const auto& pp : cover.parallelepipeds) {
    auto verts = pp_vertices(pp);
    std::sort(verts.begin(), verts.end());
    order.emplace_back(std::move(verts), &pp);
  }
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Json pps = Json::array();
  for (const auto& [v, pp] : order) pps.push_back(to_json(*pp));
  return Json{{"dimension", dim}, {"lattice_points", cover.lattice.size()}, {"parallelepipeds", pps}};
}

std::vector<Parallelepiped> cover_from_json(const Json& j) {
  auto rational = [](const Json& v) {
    if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
    if (v.is_string()) return Rational::parse(v.get<std::string>());
    throw InputError("cover entries must be integers or rational strings");
  };
  auto vec = [&](const Json& v) {
    if (!v.is_array()) throw InputError("cover vector must be an array");
    RatVector out;
    for (const auto& e : v) out.push_back(rational(e));
    return out;
  };
  if (!j.is_object() || !j.contains("parallelepipeds")) throw InputError("cover dump lacks \"parallelepipeds\"");
  std::vector<Parallelepiped> out;
  for (const auto& e : j.at("parallelepipeds")) {
    if (!e.contains("center") || !e.contains("directions")) throw InputError("parallelepiped lacks center or directions");
    Parallelepiped pp;
    pp.center = vec(e.at("center"));
    for (const auto& d : e.at("directions")) {
      pp.directions.push_back(vec(d));
      if (pp.directions.back().size() != pp.center.size()) throw InputError("direction dimension differs from center");
    }
    out.push_back(std::move(pp));
  }
  return out;
}

}  // namespace hmpack::cli
