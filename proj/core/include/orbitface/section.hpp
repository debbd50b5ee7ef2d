#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "orbitface/common.hpp"
#include "orbitface/descent.hpp"
#include "orbitface/group.hpp"

namespace orbitface {

/// A candidate fat section: the subspace the whole correspondence machinery
/// restricts to.  Exact data is kept whenever the registry provides it; the
/// float mirror always exists and drives the sampled checks.
struct SectionCandidate {
  GroupModel group;
  SubspaceD sigma;
  std::optional<SubspaceE> sigma_exact;
  std::string name;

  static SectionCandidate make(GroupModel g, SubspaceE sigma, std::string name);
  static SectionCandidate make(GroupModel g, SubspaceD sigma, std::string name);
};

/// Outcome of one axiom check.  A pass is always "numerically validated":
/// the axioms quantify over all orbits, which sampling cannot prove.
struct AxiomCheck {
  Verdict verdict = Verdict::indeterminate;
  double worst = 0.0;     // worst residual among the inspected quantities
  int samples = 0;        // how many samples actually contributed
  std::string witness;    // concrete counterexample / diagnostic when not pass
};

struct AxiomBResult {
  AxiomCheck check;
  int k = -1;  // dim sigma - dim nu_p, recorded only on pass
};

struct AxiomReport {
  AxiomCheck a;
  AxiomCheck b;
  AxiomCheck c;
  int k = -1;
  int principal_orbit_dim = 0;
  int n_samples = 0;
  std::uint64_t seed = 0;

  Verdict overall() const;
};

/// (A) every orbit meets sigma: seeded random points of V must descend into
/// sigma with residual <= 1e-6.  Finite groups are enumerated, so a miss is a
/// definite failure; for Lie models a miss below the violation floor is only
/// indeterminate (the optimizer may be at fault).
AxiomCheck check_axiom_a(const SectionCandidate& c, int n, Rng& rng);

/// (B) at regular p in sigma the orbit normal space nu_p lies inside sigma,
/// with constant codimension k = dim sigma - dim nu_p.  `principal_dim` may be
/// passed to reuse a previously measured value (-1 recomputes).
AxiomBResult check_axiom_b(const SectionCandidate& c, int n, Rng& rng,
                           int principal_dim = -1);

/// (C) any element returning a generic section point into sigma must map
/// sigma onto itself.  Finite groups are checked exhaustively (exactly when
/// exact data is present); Lie models test descent-produced return elements.
AxiomCheck check_axiom_c(const SectionCandidate& c, int n, Rng& rng,
                         int principal_dim = -1);

AxiomReport check_axioms(const SectionCandidate& c, int n = 256,
                         std::uint64_t seed = kDefaultSeed);

/// W = N_G(sigma)/Z_G(sigma) acting on sigma in coordinates of an orthonormal
/// basis.  Finite case: the exact quotient (deduplication of restrictions is
/// the quotient by the centralizer).  Lie case: either a snapped exact finite
/// action, or sampled action matrices plus the normalizer-algebra dimension
/// when W is positive-dimensional.
struct FatWeylGroup {
  bool finite = false;
  std::optional<FiniteMatrixGroup> action;  // sigma-coordinate action, exact
  std::vector<MatD> sampled;                // fallback representation
  int normalizer_algebra_dim = 0;           // dim n(sigma) - dim z(sigma)
  std::optional<MatE> basis;                // ambient x d orthonormal columns
  MatD basis_float;
  std::string note;

  int sigma_dim() const { return int(basis_float.cols()); }
  std::size_t order() const;  // throws ContractError when not finite

  VecE coords_exact(const VecE& x) const;
  VecE ambient_exact(const VecE& coords) const;
  VecD coords_float(const VecD& x) const;
  VecD ambient_float(const VecD& coords) const;

  /// Action matrices as floats (finite: all elements; else the samples).
  std::vector<MatD> action_float() const;

  /// W-orbit of an ambient exact point of sigma (exact path required).
  std::vector<VecE> orbit_ambient(const VecE& x) const;
};

/// Builds W without consulting an axiom report.  Exposed for probing
/// candidates that are not fat sections (single-axiom studies); everything
/// downstream should prefer the gated variant.
FatWeylGroup fat_weyl_group_unchecked(const SectionCandidate& c, Rng& rng);

/// Gated variant: throws ContractError unless the report's overall verdict is
/// a pass.
FatWeylGroup fat_weyl_group(const SectionCandidate& c,
                            const AxiomReport& report, Rng& rng);

struct SliceEqualityReport {
  Verdict verdict = Verdict::indeterminate;
  int weyl_side = 0;     // |W.x| after dedupe
  int section_side = 0;  // |(G.x) ∩ sigma| after dedupe
  double worst = 0.0;
  std::string detail;
};

/// W.x = (G.x) ∩ sigma at one point.  Exact set equality for finite groups
/// with exact data; bidirectional 1e-6 matching for Lie models.
SliceEqualityReport weyl_orbit_equals_section_slice(const SectionCandidate& c,
                                                    const FatWeylGroup& w,
                                                    const VecE& x);
SliceEqualityReport weyl_orbit_equals_section_slice(const SectionCandidate& c,
                                                    const FatWeylGroup& w,
                                                    const VecD& x, int n,
                                                    Rng& rng);

} // namespace orbitface
