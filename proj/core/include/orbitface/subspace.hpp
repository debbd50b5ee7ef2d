#pragma once

#include <type_traits>
#include <vector>

#include "orbitface/linalg.hpp"

namespace orbitface {

template <class S>
struct LinTraits;

template <>
struct LinTraits<XQ> {
  using Vec = VecE;
  using Mat = MatE;
};

template <>
struct LinTraits<double> {
  using Vec = VecD;
  using Mat = MatD;
};

/// Linear subspace of R^D with one interface over both scalar backends.
/// The exact backend keeps the caller's generating vectors as a basis and an
/// exact Gram inverse; the floating backend keeps an SVD-orthonormal basis
/// and uses the pinned tolerances.
template <class S>
class Subspace {
public:
  static constexpr bool kExact = std::is_same_v<S, XQ>;
  using Vec = typename LinTraits<S>::Vec;
  using Mat = typename LinTraits<S>::Mat;

  /// Zero subspace of an ambient space.
  explicit Subspace(int ambient_dim);

  /// Span of the columns of `gens`; dependent columns are dropped.
  static Subspace span(const Mat& gens, double abs_tol = kAbsTol);
  static Subspace full(int ambient_dim);
  static Subspace coordinate_span(int ambient_dim, const std::vector<int>& coords);

  int ambient_dim() const { return ambient_; }
  int dim() const;
  bool is_full() const { return dim() == ambient_; }

  /// Column basis.  Exact: the retained generators.  Float: orthonormal.
  const Mat& basis() const { return basis_; }

  Vec project(const Vec& v) const;
  const Mat& projector() const { return projector_; }

  bool contains(const Vec& v, double abs_tol = kAbsTol) const;
  bool contains(const Subspace& other, double abs_tol = kAbsTol) const;
  bool same_as(const Subspace& other, double abs_tol = kAbsTol) const;

  Subspace intersect(const Subspace& other) const;

  /// Orthogonal complement of this subspace inside `within`; requires
  /// this <= within and throws ContractError otherwise.
  Subspace orthogonal_complement_in(const Subspace& within) const;
  Subspace orthogonal_complement() const;

  Subspace sum(const Subspace& other) const;

private:
  Subspace(int ambient, Mat basis);
  void finish();

  int ambient_ = 0;
  Mat basis_;      // D x k columns
  Mat projector_;  // D x D
};

using SubspaceE = Subspace<XQ>;
using SubspaceD = Subspace<double>;

SubspaceD to_float(const SubspaceE& s);

/// Exact Gram-Schmidt basis (columns), possible only when every intermediate
/// norm has a square root inside the field; nothing otherwise.
std::optional<MatE> orthonormalize_exact(const SubspaceE& s);

} // namespace orbitface
