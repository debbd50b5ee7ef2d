#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "orbitface/jsonio.hpp"
#include "orbitface/section.hpp"

namespace orbitface {

/// Frozen expectations for a registry entry.  Every value carries a short
/// `source` note describing how it was obtained; nothing here is trusted at
/// runtime — the axiom checker re-validates each entry at load.
struct Expectations {
  std::optional<bool> polar;
  std::optional<int> k;
  std::optional<int> weyl_order;  // set only when W is finite
  std::vector<int> face_classes;  // aligned with base points; empty = unknown
  std::map<std::string, std::string> source;
};

struct RegistryEntry {
  std::string name;
  SectionCandidate candidate;
  std::vector<VecE> base_points_exact;  // empty for float-only entries
  std::vector<VecD> base_points;        // always populated
  bool enabled = true;
  Expectations expected;
  std::string notes;
};

// Built-in constructions.  Angles and section coordinates are chosen so that
// every exact quantity stays inside the scalar field.
RegistryEntry make_rot2();
RegistryEntry make_dihedral(int m);        // m in {2,3,4,6,8,12}
RegistryEntry make_schur_horn(int n);      // n in {2,3,4}
RegistryEntry make_so3_vector_pairs();

std::vector<std::string> builtin_entry_names();
RegistryEntry builtin_entry(const std::string& name);

/// JSON forms.  A file either references a builder
///   {"name", "builder", "params", "enabled"?, "expected"?, "notes"?}
/// or supplies the data explicitly
///   {"name", "group", "section", "base_points", ...}.
RegistryEntry entry_from_json(const Json& j);
Json json_of(const RegistryEntry& e);

struct LoadedEntry {
  RegistryEntry entry;
  AxiomReport report;  // the load-time gate, cached for reuse
};

/// Reads `<dir>/<name>.json`, constructs the entry, and runs the axiom gate.
/// Throws InputError for unknown names and ContractError when an axiom fails.
LoadedEntry load_entry(const std::string& name, const std::string& dir,
                       int n_samples = 256, std::uint64_t seed = kDefaultSeed);

/// Emits the shipped registry files into `dir` (builder references plus the
/// explicit-data nontrivial-copolarity entry).
void write_default_registry(const std::string& dir);

} // namespace orbitface
