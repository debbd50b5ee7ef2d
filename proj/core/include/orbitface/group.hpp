#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "orbitface/rng.hpp"
#include "orbitface/subspace.hpp"

namespace orbitface {

/// Enumeration cap shared by group closure and face-lattice traversal.
inline constexpr std::size_t kClosureCap = 100000;

/// Finite orthogonal matrix group with exact entries.  The element list is
/// closed, deduplicated, and sorted in entry-lexicographic order, so every
/// derived enumeration is deterministic.
class FiniteMatrixGroup {
public:
  /// Closure of a generator list under products.  Generators must be square,
  /// orthogonal, and of equal size; throws CapError past `cap` elements.
  static FiniteMatrixGroup from_generators(const std::vector<MatE>& gens,
                                           std::size_t cap = kClosureCap);
  static FiniteMatrixGroup trivial(int ambient_dim);

  int ambient_dim() const { return ambient_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<MatE>& elements() const { return elements_; }
  const std::vector<MatD>& elements_float() const { return elements_float_; }
  const std::vector<MatE>& generators() const { return generators_; }
  std::size_t identity_index() const { return identity_; }

  VecE apply(std::size_t element, const VecE& x) const;
  VecD apply_float(std::size_t element, const VecD& x) const;

  int element_index(const MatE& g) const;  // -1 when absent

  /// Orbit of a point: deduplicated, lexicographically sorted.
  std::vector<VecE> orbit(const VecE& x) const;

  FiniteMatrixGroup stabilizer(const VecE& p) const;
  FiniteMatrixGroup pointwise_stabilizer(const SubspaceE& s) const;

  /// Elements g with g S = S (as a set).
  FiniteMatrixGroup setwise_stabilizer(const SubspaceE& s) const;

private:
  FiniteMatrixGroup() = default;
  void index_elements();

  int ambient_ = 0;
  std::vector<MatE> generators_;
  std::vector<MatE> elements_;
  std::vector<MatD> elements_float_;
  std::size_t identity_ = 0;
};

/// Connected-group model: an orthogonal representation described by a basis
/// of its Lie algebra image (skew-symmetric matrices).  Group elements are
/// sampled as exp(sum_i t_i X_i) with t uniform in [-pi, pi]^m; exactness of
/// the sampling measure is not required anywhere downstream.
class LieGroupModel {
public:
  LieGroupModel(int ambient_dim, std::vector<MatD> algebra_basis,
                double abs_tol = kAbsTol);

  int ambient_dim() const { return ambient_; }
  int algebra_dim() const { return int(algebra_.size()); }
  const std::vector<MatD>& algebra() const { return algebra_; }

  MatD element(const VecD& coeffs) const;
  MatD sample_element(Rng& rng) const;
  VecD sample_coeffs(Rng& rng) const;

  std::vector<VecD> sample_orbit(const VecD& x, int n, Rng& rng) const;

  /// Tangent space of the orbit through p: span{X p}.
  SubspaceD orbit_tangent(const VecD& p) const;
  /// Normal space of the orbit through p (orthogonal complement in V).
  SubspaceD orbit_normal(const VecD& p) const;

  int orbit_dim(const VecD& p) const;
  /// Largest orbit dimension over 64 seeded random points.
  int principal_orbit_dim(Rng rng) const;

  /// Sub-model whose algebra annihilates p (isotropy algebra of p).
  LieGroupModel stabilizer_algebra(const VecD& p) const;
  /// Sub-model whose algebra annihilates every vector of s.
  LieGroupModel pointwise_stabilizer(const SubspaceD& s) const;

  /// Sub-model of algebra elements mapping s into itself.
  LieGroupModel subspace_preserving(const SubspaceD& s) const;

private:
  int ambient_ = 0;
  double abs_tol_ = kAbsTol;
  std::vector<MatD> algebra_;
};

/// Uniform handle over the two group kinds.
class GroupModel {
public:
  GroupModel(FiniteMatrixGroup g) : model_(std::move(g)) {}
  GroupModel(LieGroupModel g) : model_(std::move(g)) {}

  bool finite() const {
    return std::holds_alternative<FiniteMatrixGroup>(model_);
  }
  const FiniteMatrixGroup& as_finite() const;
  const LieGroupModel& as_lie() const;

  int ambient_dim() const;

  /// Random group element as a float matrix (finite: uniform element).
  MatD sample_element_float(Rng& rng) const;

  /// Orbit samples through x.  Finite groups return the whole orbit when it
  /// is smaller than n.
  std::vector<VecD> orbit_samples(const VecD& x, int n, Rng& rng) const;

  SubspaceD orbit_tangent(const VecD& p) const;
  SubspaceD orbit_normal(const VecD& p) const;
  int orbit_dim(const VecD& p) const;
  int principal_orbit_dim(Rng rng) const;

private:
  std::variant<FiniteMatrixGroup, LieGroupModel> model_;
};

} // namespace orbitface
