#pragma once

#include <memory>
#include <string>

#include <json.hpp>

#include "nichols/braidspace.hpp"
#include "nichols/coinvariants.hpp"

namespace nichols {

struct SpecError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parsed braiding spec: the space plus a canonical re-serialization used for
/// digests, and block parameters when the spec carries them.
struct ParsedSpec {
  std::shared_ptr<BraidedSpace> space;
  std::string canonical;
  std::optional<BlockPointParams> blockParams;
};

/// Braiding spec JSON:
///   {"field": {"mode": "generic"} | {"mode": "cyclotomic", "N": 4},
///    "kind": "diagonal" | "block_point" | "cmatrix" | "zu_rank2" | "zv_block",
///    ... kind-specific parameters, scalars in the scalar grammar}
/// Unknown fields are rejected.
ParsedSpec parseBraidingSpec(const nlohmann::ordered_json& doc);
ParsedSpec parseBraidingSpecFile(const std::string& path);

/// Split spec JSON: {"left": [1, 2]}.
SplitSpec parseSplitSpec(const nlohmann::ordered_json& doc, uint32_t dim);

/// Root-system JSON: {"roots": [{"root": [1,0], "recipe": <tree>}...]} with
/// <tree> either a 1-based letter, a list of letters (iterated bracket word),
/// or a two-element list of trees [lhs, rhs] for a braided commutator.
RootSystemData parseRootSystem(const nlohmann::ordered_json& doc);
nlohmann::ordered_json rootSystemToJson(const RootSystemData& rsd, const BraidedSpace& space);

}  // namespace nichols
