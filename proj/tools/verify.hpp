#pragma once

#include <string>
#include <vector>

#include "instance_file.hpp"

namespace hmpack::cli {

struct Check {
  std::string name;
  bool ok = true;
  std::string detail;
};

/// Cross-checks the main solver against the independent oracles. Oracle caps surface as ResourceError.
std::vector<Check> verify_instance(const InstanceFile& file, const SolverOptions& options);

/// Checks a cover of P read back from a dump.
std::vector<Check> verify_cover(const Polytope& p, const std::vector<Parallelepiped>& cover,
                                const SolverOptions& options);

}  // namespace hmpack::cli
