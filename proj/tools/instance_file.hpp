#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "hmpack/polytope.hpp"
#include "hmpack/scheduling.hpp"
#include "hmpack/solver.hpp"

namespace hmpack::cli {

enum class Kind { Auto, BinPacking, CuttingStock, Scheduling, Polytope };

/// A polytope P, optionally followed by a target polytope Q for int.cone(P ∩ Z^d) ∩ Q.
struct PolytopeFile {
  Polytope p;
  std::optional<Polytope> q;
};

struct InstanceFile {
  Kind kind = Kind::Auto;
  std::variant<BinPackingInstance, CuttingStockInstance, SchedulingInstance, PolytopeFile> payload;
};

Kind parse_kind(std::string_view name);
std::string kind_name(Kind k);

/// An optional first token "binpacking", "cuttingstock", "scheduling" or "polytope" names the
/// kind; otherwise `hint` decides, and Auto guesses from the layout. Diagnostics keep the
/// line:column positions of the original text.
InstanceFile parse_instance(std::string text, Kind hint = Kind::Auto);

std::string read_file(const std::string& path);

}  // namespace hmpack::cli
