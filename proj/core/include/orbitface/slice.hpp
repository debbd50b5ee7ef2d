#pragma once

#include "orbitface/correspond.hpp"

namespace orbitface {

/// Agreement tolerance for the restricted-projection identity σ₁ = σ|_V₁.
inline constexpr double kProjRestrictTol = 1e-9;
/// Sample budget for re-validating the fat-section axioms on a slice.
inline constexpr int kSliceBudget = 64;

/// The slice representation at a direction u₁ ∈ Σ: the stabilizer G₁ of u₁
/// acting on the orbit normal space V₁, with section Σ₁ = V₁ ∩ Σ.  V₁ is
/// stored as a linear subspace (it contains 0 along with u₁).
struct SliceRep {
  VecD u1;                       // ambient direction defining the slice
  std::optional<VecE> u1_exact;  // exact ambient mirror when available
  SubspaceD V1;
  SubspaceD Sigma1;
  SubspaceD sigma_parent;        // the section that was sliced
  GroupModel G1;                 // stabilizer of u1; Lie: identity component

  AxiomCheck invariance;      // u1 ∈ V1 ∩ Σ1 and sampled G1·V1 ⊆ V1
  AxiomCheck decomposition;   // V1 = (V1∩Σ) ⊕ (V1∩Σ^⊥), dimension count
  AxiomReport axioms;         // fat-section axioms of Σ1 in (V1, G1)

  Verdict overall() const;
};

/// Slice of the body's representation at an ambient direction u1, which must
/// be nonzero and lie in the section.  The fat-section axioms are re-checked
/// on the restricted representation with a reduced budget.
SliceRep slice(const InvariantBody& b, const VecD& u1,
               std::uint64_t seed = kDefaultSeed);

/// Exact-direction slice; u1 is given in section coordinates, so it lies in
/// the section by construction.  Finite stabilizers come out exact.
SliceRep slice(const InvariantBody& b, const VecE& u1_coords,
               std::uint64_t seed = kDefaultSeed);

/// σ₁ = σ|_V₁: for n seeded x ∈ V₁ the projections onto Σ₁ and onto the
/// parent section must agree to kProjRestrictTol.
AxiomCheck verify_projection_restriction(const SliceRep& s, int n = 256,
                                         std::uint64_t seed = kDefaultSeed);

/// One covering step Q_{i-1} ⊃ Q_i of the reduction chain, together with the
/// slice taken at its exposing direction and the per-level verifications.
struct ChainLevel {
  PFace q;              // Q_i
  VecE u_coords;        // exact exposing direction, section coordinates
  VecD u_ambient;       // the direction handed to the slice
  bool projected = false;  // u had to be projected into the previous Σ_i

  SliceRep rep;

  AxiomCheck argmax;         // exact: the face of Q_{i-1} exposed by u is Q_i
  AxiomCheck refinement;     // sampled F_{Q_i} ⊆ F_{Q_{i-1}}
  AxiomCheck nesting;        // V_i ⊆ V_{i-1} and Σ_i ⊆ Σ_{i-1}
  AxiomCheck face_in_slice;  // vertices of Q_i lie in Σ_i
  AxiomCheck proj_restrict;  // σ_i = σ_{i-1}|_{V_i} on samples
};

/// Maximal chain P = Q_0 ⊃ … ⊃ Q_n = Q with one slice per covering step and
/// the final stabilizer K = G_n tested against the lift oracle: K·Q ⊆ F_Q.
struct ChainReduction {
  PFace q;
  std::vector<ChainLevel> levels;
  int k_order = -1;          // |K| when K is finite
  int k_dim = -1;            // algebra dimension when K is a Lie model
  AxiomCheck containment;    // sampled K·Q ⊆ F_Q
  std::string note;

  Verdict overall() const;
};

/// Reduce a nonempty face of the restriction down a maximal lattice chain.
/// Exposing directions are exact sums of the facet normals that become
/// active at each step, so the per-step argmax verification is exact.
ChainReduction chain_reduce(const InvariantBody& b, const PFace& q,
                            int budget = kSliceBudget,
                            std::uint64_t seed = kDefaultSeed);

Json json_of(const SliceRep& s);
Json json_of(const ChainReduction& r);

} // namespace orbitface
