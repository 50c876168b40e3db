#pragma once

#include <vector>

#include "hmpack/geometry.hpp"
#include "hmpack/scheduling.hpp"
#include "hmpack/solver.hpp"
#include "json.hpp"

namespace hmpack::cli {

using Json = nlohmann::ordered_json;

Json to_json(const Rational& r);
Json to_json(const RatVector& v);
Json to_json(const GuessRecord& g);
Json to_json(const Combination& c);
Json to_json(const Parallelepiped& pp);

Json solution_json(const BinPackingInstance& inst, const PackingSolution& sol);
Json solution_json(const CuttingStockInstance& inst, const PackingSolution& sol);
Json solution_json(const SchedulingInstance& inst, const ScheduleSolution& sol);
Json cone_json(const IntConeResult& r);

/// Cover dump: {"dimension", "lattice_points", "parallelepipeds": [{"center", "directions", "vertices"}]},
/// parallelepipeds sorted by their sorted vertex lists.
Json cover_json(const Cover& cover, std::size_t dim);
/// Inverse of cover_json for the "center" and "directions" fields. Throws InputError on bad data.
std::vector<Parallelepiped> cover_from_json(const Json& j);

}  // namespace hmpack::cli
