#pragma once

#include "orbitface/body.hpp"

namespace orbitface {

/// Slack for the lift oracle (membership in E and projection into Q).
inline constexpr double kLiftTol = 1e-7;
/// Proximity tolerance for the containment probe verdicts.
inline constexpr double kProbeTol = 1e-5;

/// F_Q = {z ∈ E : the section projection of z lies in Q}: the face of E over
/// a face Q of the restriction.  Carried as an oracle, never materialized.
struct LiftedFace {
  PFace q;                        // face of the restriction, coordinates
  std::vector<VecE> q_vertices;   // exact coordinate vertices, canonical order
  std::optional<VecE> exposing;   // coordinate direction exposing exactly Q
  double scale = 1.0;             // 1 + max vertex norm, for tolerances
};

/// Oracle membership z ∈ F_Q: z ∈ E and project(Σ, z) lands in Q.  Descent
/// failures surface as indeterminate.
Verdict lifted_member(const InvariantBody& b, const LiftedFace& f,
                      const VecD& z, Rng& rng, double tol = kLiftTol);

/// Worst constraint violation of a coordinate point against the face with
/// vertex ids `ids`: hull equalities, facets through the face (tight), all
/// other facets (one-sided).  x lies in the face iff this is ~0.
double face_residual(const OrbitPolytope& p, const std::vector<int>& ids,
                     const VecD& x);

/// Lift of a face given by its vertex id set (must be a face of the
/// restriction).  The exposing vector comes from the face lattice.
LiftedFace lift_face(const InvariantBody& b, const PFace& q);
LiftedFace lift_face(const InvariantBody& b, const std::vector<int>& vertex_ids);

/// Lift of the face exposed by a nonzero coordinate direction u; records u.
LiftedFace exposed_lift(const InvariantBody& b, const VecE& u);

/// σ(F) for a lift carrying an exposing vector; throws InputError otherwise.
PFace push_face(const InvariantBody& b, const LiftedFace& f);

/// Samples of F_Q produced by alternating support ascents toward the exposing
/// direction: every returned point attains the support value of E in that
/// direction to kLiftTol, so membership in F_Q holds by construction and no
/// containment conjecture is assumed.  May return fewer than n points.
std::vector<VecD> sample_lifted(const InvariantBody& b, const LiftedFace& f,
                                int n, Rng& rng);

/// Invariants separating G-classes of lifted faces.  The exact fields are
/// identical across W-equivalent faces because W acts orthogonally; the
/// estimates come from the class representative's samples.
struct FaceClassInvariants {
  int q_dim = -1;
  std::vector<XQ> vertex_norms2;   // sorted multiset of |v|^2 over Q's vertices
  std::vector<XQ> gram_entries;    // sorted multiset of <v_i, v_j>, i < j
  std::vector<double> gram_spectrum;  // eigenvalues of Q's vertex Gram matrix
  int lift_dim = -1;               // affine rank estimate of F_Q samples
  double lift_min_norm = 0.0;
  double lift_max_norm = 0.0;
};

struct ConjectureReport {
  Verdict forward = Verdict::indeterminate;  // K·Q ⊆ F_Q on samples
  Verdict reverse = Verdict::indeterminate;  // F_Q samples near K·Q
  double forward_worst = 0.0;
  double reverse_worst = 0.0;
  int stabilizer_order = -1;  // |K| when finite
  int stabilizer_dim = -1;    // algebra dimension when Lie
  int samples = 0;
  std::string detail;
};

struct CorrespondenceRecord {
  int class_id = -1;
  PFace q;                  // representative: smallest node id in the class
  int node_id = -1;
  int orbit_size = 0;       // faces in the W-class
  FaceClassInvariants invariants;
  std::optional<VecE> exposing;
  std::optional<ConjectureReport> conjecture;
};

Json json_of(const CorrespondenceRecord& r);

/// One record per W-orbit of nonempty faces of the restriction.  Requires the
/// finite exact W action; the exact invariants are recomputed for every class
/// member and must agree, which evidences well-definedness of Q ↦ F_Q.
std::vector<CorrespondenceRecord> face_orbit_classes(const InvariantBody& b,
                                                     int samples_per_class,
                                                     Rng& rng);

struct BijectionReport {
  Verdict injectivity = Verdict::indeterminate;
  Verdict inclusion = Verdict::indeterminate;
  Verdict surjectivity = Verdict::indeterminate;
  int classes = 0;
  int directions_tested = 0;
  int directions_matched = 0;
  std::string detail;

  Verdict overall() const;
};

/// Evidence for the orbit-level bijection: invariant collisions between
/// W-inequivalent classes of equal dimension, oracle compatibility along
/// covering pairs, and pushes of random ambient exposed directions landing in
/// the class list.
BijectionReport verify_orbit_bijection(const InvariantBody& b,
                                       int n_directions, Rng& rng);

struct ExposednessClass {
  int class_id = -1;
  VecE exposing;          // coordinate certificate
  Verdict verdict = Verdict::indeterminate;
  int attained = 0;       // samples reaching the support value
  double worst = 0.0;     // worst oracle residual among attaining samples
};

struct ExposednessReport {
  std::vector<ExposednessClass> classes;
  Verdict overall = Verdict::indeterminate;
  std::string detail;
};

/// Every face class receives an exposing certificate u ∈ Σ; sampled argmax
/// points of <·, u> over E must satisfy the lift oracle of the class.
ExposednessReport exposedness_transfer(const InvariantBody& b, int n_samples,
                                       Rng& rng);

/// Probe of F_Q = G^{Q⊥}·Q: K is the pointwise stabilizer of the orthogonal
/// complement of Q's direction space inside Σ.  Forward containment is
/// sampled against the lift oracle; the reverse direction measures distances
/// from independent F_Q samples to K·Q and never reports a violation (a
/// missed minimizer is indistinguishable from a genuine gap).
ConjectureReport conjecture_probe(const InvariantBody& b, const PFace& q,
                                  int n, Rng& rng);

} // namespace orbitface
