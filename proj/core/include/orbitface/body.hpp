#pragma once

#include "orbitface/faces.hpp"
#include "orbitface/registry.hpp"
#include "orbitface/section.hpp"

namespace orbitface {

/// Facet slack accepted when testing membership through the restriction.
inline constexpr double kMembershipTol = 1e-7;

/// G-invariant convex body E = G·P.  E is never materialized: every query
/// descends to the section and reduces through the restriction P = E ∩ Σ,
/// which lives in section coordinates with exact vertex/facet data.
struct InvariantBody {
  SectionCandidate section;
  AxiomReport report;   // the validation that admitted the section
  FatWeylGroup weyl;    // must be finite with an exact action
  OrbitPolytope restriction;
  FaceLattice lattice;
  std::vector<std::vector<int>> weyl_vertex_perms;  // W as vertex permutations
  std::vector<VecE> generators;  // ambient points whose G-saturation spans E

  const GroupModel& group() const { return section.group; }
  int ambient_dim() const { return section.group.ambient_dim(); }

  VecD to_ambient(const VecD& coords) const {
    return weyl.ambient_float(coords);
  }
  VecD to_coords(const VecD& ambient) const {
    return weyl.coords_float(ambient);
  }
  VecE to_ambient_exact(const VecE& coords) const {
    return weyl.ambient_exact(coords);
  }
};

/// Builds E from exact ambient generators.  Finite groups bring each
/// generator into the section exactly; Lie-model generators must already lie
/// in it.  The union of the W-saturations is hulled into P, and the W-action
/// must permute its vertex set.
InvariantBody make_body(const SectionCandidate& section,
                        const AxiomReport& report, FatWeylGroup weyl,
                        const std::vector<VecE>& generators);

/// Registry entry -> body over its exact base points (runs the axiom gate).
InvariantBody body_from_entry(const RegistryEntry& e, int n_samples = 256,
                              std::uint64_t seed = kDefaultSeed);

struct Membership {
  Verdict verdict = Verdict::indeterminate;
  double residual = 0.0;   // distance of the descended point to the section
  VecD section_point;      // best orbit point found in the section (ambient)
};

/// x ∈ E iff some orbit point lands in the section inside P.  Descent
/// failures are indeterminate, never false.
Membership membership_E(const InvariantBody& b, const VecD& x, Rng& rng);

/// Random point of P in section coordinates.  Half the draws are interior
/// mixtures, half sit on a uniformly chosen nonempty face so that every
/// boundary stratum is exercised.
VecD sample_P(const InvariantBody& b, Rng& rng);

/// Random ambient point of E: a sample of P pushed by a random element.
VecD sample_E(const InvariantBody& b, Rng& rng);

/// max <z, u> over E for an ambient direction, via per-vertex orbit ascents.
double support_E(const InvariantBody& b, const VecD& u, Rng& rng);

} // namespace orbitface
