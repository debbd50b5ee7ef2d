#pragma once

#include <string>

#include <json.hpp>

#include "orbitface/section.hpp"

namespace orbitface {

/// Ordered JSON keeps emission order stable, which the determinism contract
/// (byte-identical reruns) relies on.
using Json = nlohmann::ordered_json;

// Exact scalars serialize as numbers only when integral; every other exact
// value becomes its canonical string so no precision is lost.
Json json_of(const XQ& x);
Json json_of(const Rat& x);
Json json_of(const VecE& v);
Json json_of(const MatE& m);  // row-major nested arrays
Json json_of(const VecD& v);
Json json_of(const MatD& m);

XQ xq_from_json(const Json& j);
VecE vec_exact_from_json(const Json& j);
MatE mat_exact_from_json(const Json& j);
VecD vec_from_json(const Json& j);
MatD mat_from_json(const Json& j);

/// {"dim": n, "kind": "finite"|"lie", "generators"|"algebra_basis": [...]}
Json json_of(const GroupModel& g);
GroupModel group_from_json(const Json& j);

/// Section within a given ambient dimension: {"coords": [...]},
/// {"basis": [...]} (exact entries), {"basis_float": [...]} or {"full": true}.
Json json_of_section(const SectionCandidate& c);
SectionCandidate section_from_json(const Json& group_json, const Json& section_json,
                                   const std::string& name);

Json json_of(Verdict v);
Json json_of(const AxiomCheck& c);
Json json_of(const AxiomReport& r);

Json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

} // namespace orbitface
