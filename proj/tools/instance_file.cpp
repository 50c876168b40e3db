#include "instance_file.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "hmpack/errors.hpp"
#include "hmpack/text_tokens.hpp"

namespace hmpack::cli {

namespace {

bool is_variant(std::string_view t) { return t == "preemptive" || t == "nonpreemptive" || t == "tardy"; }

PolytopeFile parse_polytopes(std::string_view text) {
  TokenReader in(text);
  PolytopeFile f{Polytope::read(in), std::nullopt};
  if (!in.at_end()) {
    f.q = Polytope::read(in);
    if (f.q->dim() != f.p.dim()) throw InputError("target polytope dimension differs from P");
  }
  if (!in.at_end()) throw in.error("trailing data after polytopes");
  return f;
}

}  // namespace

Kind parse_kind(std::string_view name) {
  if (name == "auto") return Kind::Auto;
  if (name == "binpacking") return Kind::BinPacking;
  if (name == "cuttingstock") return Kind::CuttingStock;
  if (name == "scheduling") return Kind::Scheduling;
  if (name == "polytope") return Kind::Polytope;
  throw InputError("unknown instance kind '" + std::string(name) + "'");
}

std::string kind_name(Kind k) {
  switch (k) {
    case Kind::Auto:
      return "auto";
    case Kind::BinPacking:
      return "binpacking";
    case Kind::CuttingStock:
      return "cuttingstock";
    case Kind::Scheduling:
      return "scheduling";
    case Kind::Polytope:
      return "polytope";
  }
  return "auto";
}

InstanceFile parse_instance(std::string text, Kind hint) {
  Kind kind = hint;
  {
    TokenReader in(text);
    if (in.at_end()) throw InputError("1:1: empty instance file");
    const auto first = in.next("instance");
    const std::string word(first.text);
    if (word == "binpacking" || word == "cuttingstock" || word == "scheduling" || word == "polytope") {
      const Kind tagged = parse_kind(word);
      if (hint != Kind::Auto && hint != tagged)
        throw TokenReader::error_at(first, "file is tagged " + word + " but " + kind_name(hint) + " was requested");
      kind = tagged;
      // blank the tag so later diagnostics keep their positions
      const auto at = static_cast<std::size_t>(first.text.data() - text.data());
      text.replace(at, word.size(), std::string(word.size(), ' '));
    } else if (kind == Kind::Auto) {
      in.next("second token");
      if (!in.at_end() && is_variant(in.next("third token").text)) kind = Kind::Scheduling;
    }
  }
  InstanceFile f;
  switch (kind) {
    case Kind::BinPacking:
      f.payload = BinPackingInstance::parse(text);
      break;
    case Kind::CuttingStock:
      f.payload = CuttingStockInstance::parse(text);
      break;
    case Kind::Scheduling:
      f.payload = SchedulingInstance::parse(text);
      break;
    case Kind::Polytope:
      f.payload = parse_polytopes(text);
      break;
    case Kind::Auto:
      try {
        f.payload = BinPackingInstance::parse(text);
        kind = Kind::BinPacking;
      } catch (const InputError& e) {
        if (std::string(e.what()).find("trailing data") == std::string::npos) throw;
        f.payload = CuttingStockInstance::parse(text);
        kind = Kind::CuttingStock;
      }
      break;
  }
  f.kind = kind;
  return f;
}

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace hmpack::cli
