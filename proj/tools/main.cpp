#include <chrono>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "hmpack/errors.hpp"
#include "instance_file.hpp"
#include "json_io.hpp"
#include "verify.hpp"

using namespace hmpack;
using namespace hmpack::cli;

namespace {

enum Exit { kOk = 0, kEmpty = 1, kParse = 2, kResource = 3, kDisagree = 4 };

struct Flags {
  std::string path;
  std::string kind = "auto";
  std::string mode = "faithful";
  std::uint64_t budget = 2'000'000;
  std::size_t guess_budget = 64;
  bool deterministic = true;
  bool json = false;
  std::string cover_dump;
  std::string suite = "binpacking";
  std::size_t dim = 2;
  std::uint64_t seed = 1;
  std::size_t count = 10;
};

SolverOptions solver_options(const Flags& f) {
  SolverOptions o;
  o.mode = f.mode == "joint" ? SolverMode::Joint : SolverMode::Faithful;
  o.cover.limits.max_box_points = f.budget;
  o.selector_box_limit = std::min<std::uint64_t>(o.selector_box_limit, f.budget);
  o.guess_budget = f.guess_budget;
  return o;
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

std::string point_str(const IntPoint& x) {
  std::ostringstream os;
  for (std::size_t j = 0; j < x.size(); ++j) os << (j ? " " : "") << x[j];
  return os.str();
}

const Polytope& polytope_of(const InstanceFile& f) {
  const auto* p = std::get_if<PolytopeFile>(&f.payload);
  if (!p) throw InputError("expected a polytope file");
  return p->p;
}

int cmd_solve(const Flags& f) {
  const auto file = parse_instance(read_file(f.path), parse_kind(f.kind));
  const auto options = solver_options(f);
  const auto start = std::chrono::steady_clock::now();
  Json out;
  int code = kOk;
  if (const auto* bp = std::get_if<BinPackingInstance>(&file.payload)) {
    const auto sol = bin_packing(*bp, options);
    verify_packing(*bp, sol);
    out = solution_json(*bp, sol);
  } else if (const auto* cs = std::get_if<CuttingStockInstance>(&file.payload)) {
    const auto sol = cutting_stock(*cs, options);
    verify_packing(*cs, sol);
    out = solution_json(*cs, sol);
  } else if (const auto* s = std::get_if<SchedulingInstance>(&file.payload)) {
    out = solution_json(*s, solve_scheduling(*s, options));
  } else {
    const auto& pf = std::get<PolytopeFile>(file.payload);
    if (!pf.q) throw InputError("solve on a polytope needs a target polytope Q after P");
    const auto r = int_cone_intersect(pf.p, *pf.q, options);
    out = cone_json(r);
    if (!r.found) code = kEmpty;
  }
  out["mode"] = f.mode;
  if (!f.deterministic) out["timing"] = Json{{"wall_ms", elapsed_ms(start)}};
  std::cout << out.dump(2) << '\n';
  return code;
}

int cmd_cover(const Flags& f) {
  const auto file = parse_instance(read_file(f.path), Kind::Polytope);
  const auto& p = polytope_of(file);
  const auto cover = build_cover(p, solver_options(f).cover);
  const auto j = cover_json(cover, p.dim());
  if (f.json) {
    std::cout << j.dump(2) << '\n';
    return kOk;
  }
  std::cout << "lattice points " << cover.lattice.size() << ", parallelepipeds " << cover.parallelepipeds.size() << '\n';
  for (const auto& pp : j.at("parallelepipeds")) {
    std::cout << "center " << pp.at("center").dump() << " directions " << pp.at("directions").dump() << '\n';
  }
  return kOk;
}

int cmd_hull(const Flags& f) {
  const auto file = parse_instance(read_file(f.path), Kind::Polytope);
  const auto verts = integer_hull_vertices(polytope_of(file), solver_options(f).cover.limits);
  if (f.json) {
    std::cout << Json{{"vertices", verts}}.dump(2) << '\n';
    return verts.empty() ? kEmpty : kOk;
  }
  for (const auto& v : verts) std::cout << point_str(v) << '\n';
  return verts.empty() ? kEmpty : kOk;
}

int cmd_verify(const Flags& f) {
  const auto options = solver_options(f);
  std::vector<Check> checks;
  if (!f.cover_dump.empty()) {
    const auto file = parse_instance(read_file(f.path), Kind::Polytope);
    Json dump;
    try {
      dump = Json::parse(read_file(f.cover_dump));
    } catch (const Json::parse_error& e) {
      throw InputError(std::string("cover dump: ") + e.what());
    }
    checks = verify_cover(polytope_of(file), cover_from_json(dump), options);
  } else {
    checks = verify_instance(parse_instance(read_file(f.path), parse_kind(f.kind)), options);
  }
  bool ok = true;
  Json rows = Json::array();
  for (const auto& c : checks) {
    ok = ok && c.ok;
    if (f.json)
      rows.push_back(Json{{"check", c.name}, {"ok", c.ok}, {"detail", c.detail}});
    else
      std::cout << c.name << ": " << c.detail << ' ' << (c.ok ? "OK" : "FAIL") << '\n';
  }
  if (f.json) std::cout << Json{{"ok", ok}, {"checks", rows}}.dump(2) << '\n';
  return ok ? kOk : kDisagree;
}

BinPackingInstance bench_bin_packing(std::mt19937_64& rng, std::size_t d) {
  BinPackingInstance inst;
  std::uniform_int_distribution<std::int64_t> den(2, 20), mult(1, 4);
  for (std::size_t i = 0; i < d; ++i) {
    const auto q = den(rng);
    inst.sizes.push_back(Rational(std::uniform_int_distribution<std::int64_t>(1, q)(rng), q));
    inst.multiplicities.push_back(mult(rng));
  }
  return inst;
}

int cmd_bench(const Flags& f) {
  if (f.suite != "binpacking") throw InputError("unknown bench suite '" + f.suite + "'");
  if (f.dim < 1 || f.dim > 4) throw InputError("bench dimension must be in [1, 4]");
  std::mt19937_64 rng(f.seed);
  Json rows = Json::array();
  if (!f.json) std::cout << "instance\td\titems\tfaithful_opt\tfaithful_ms\tjoint_opt\tjoint_ms\tagree\n";
  Flags joint = f;
  joint.mode = "joint";
  Flags faithful = f;
  faithful.mode = "faithful";
  for (std::size_t k = 0; k < f.count; ++k) {
    const auto inst = bench_bin_packing(rng, f.dim);
    std::int64_t items = 0;
    for (auto a : inst.multiplicities) items += a;
    auto t0 = std::chrono::steady_clock::now();
    const auto a = bin_packing(inst, solver_options(faithful));
    const double ta = elapsed_ms(t0);
    t0 = std::chrono::steady_clock::now();
    const auto b = bin_packing(inst, solver_options(joint));
    const double tb = elapsed_ms(t0);
    if (f.json) {
      rows.push_back(Json{{"instance", k},
                          {"d", f.dim},
                          {"items", items},
                          {"sizes", to_json(inst.sizes)},
                          {"multiplicities", inst.multiplicities},
                          {"faithful_opt", a.objective},
                          {"joint_opt", b.objective},
                          {"timing", Json{{"faithful_ms", ta}, {"joint_ms", tb}}}});
    } else {
      std::cout << k << '\t' << f.dim << '\t' << items << '\t' << a.objective << '\t' << ta << '\t' << b.objective
                << '\t' << tb << '\t' << (a.objective == b.objective ? "yes" : "no") << '\n';
    }
    if (a.objective != b.objective) {
      if (f.json) std::cout << rows.dump(2) << '\n';
      std::cerr << "error: modes disagree on instance " << k << '\n';
      return kDisagree;
    }
  }
  if (f.json) std::cout << Json{{"suite", f.suite}, {"seed", f.seed}, {"rows", rows}}.dump(2) << '\n';
  return kOk;
}

void solver_flags(CLI::App* app, Flags& f) {
  app->add_option("--mode", f.mode, "Solver mode")->check(CLI::IsMember({"faithful", "joint"}));
  app->add_option("--budget", f.budget, "Lattice point enumeration budget")->check(CLI::PositiveNumber);
  app->add_option("--guess-budget", f.guess_budget, "Faithful mode: guesses before the joint ILP");
  app->add_flag("--deterministic,!--no-deterministic", f.deterministic,
                "Omit wall-clock timing so output is byte-identical across runs (default on)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bin packing, cutting stock and machine scheduling with few item types"};
  app.require_subcommand(1);
  Flags f;

  auto* solve = app.add_subcommand("solve", "Solve an instance and print the solution as JSON");
  solve->add_option("file", f.path, "Instance file, or - for standard input")->required();
  solve->add_option("--kind", f.kind, "Instance kind")
      ->check(CLI::IsMember({"auto", "binpacking", "cuttingstock", "scheduling", "polytope"}));
  solver_flags(solve, f);

  auto* cover = app.add_subcommand("cover", "Print a parallelepiped cover of a polytope's lattice points");
  cover->add_option("file", f.path, "Polytope file")->required();
  cover->add_flag("--json", f.json, "JSON output (readable by verify --cover)");
  solver_flags(cover, f);

  auto* hull = app.add_subcommand("hull", "Print the vertices of a polytope's integer hull");
  hull->add_option("file", f.path, "Polytope file")->required();
  hull->add_flag("--json", f.json, "JSON output");
  solver_flags(hull, f);

  auto* verify = app.add_subcommand("verify", "Cross-check the solver against brute-force oracles");
  verify->add_option("file", f.path, "Instance file")->required();
  verify->add_option("--kind", f.kind, "Instance kind")
      ->check(CLI::IsMember({"auto", "binpacking", "cuttingstock", "scheduling", "polytope"}));
  verify->add_option("--cover", f.cover_dump, "Check this cover dump (from cover --json) against the polytope file");
  verify->add_flag("--json", f.json, "JSON output");
  solver_flags(verify, f);

  auto* bench = app.add_subcommand("bench", "Time both solver modes on seeded random instances");
  bench->add_option("--suite", f.suite, "Instance family")->check(CLI::IsMember({"binpacking"}));
  bench->add_option("--d", f.dim, "Number of item types");
  bench->add_option("--seed", f.seed, "Generator seed");
  bench->add_option("--count", f.count, "Number of instances");
  bench->add_flag("--json", f.json, "JSON output");
  solver_flags(bench, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (solve->parsed()) return cmd_solve(f);
    if (cover->parsed()) return cmd_cover(f);
    if (hull->parsed()) return cmd_hull(f);
    if (verify->parsed()) return cmd_verify(f);
    return cmd_bench(f);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParse;
  } catch (const Infeasible& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kEmpty;
  } catch (const ResourceError& e) {
    std::cerr << "resource budget '" << e.budget() << "' exceeded: " << e.what() << '\n';
    return kResource;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kDisagree;
  }
}
