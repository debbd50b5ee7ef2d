#include "orbitface/subspace.hpp"

namespace orbitface {

namespace {

MatE empty_mat(int rows) { return MatE(rows, 0); }

} // namespace

template <class S>
Subspace<S>::Subspace(int ambient_dim) : ambient_(ambient_dim) {
  if constexpr (kExact) {
    basis_ = empty_mat(ambient_dim);
  } else {
    basis_ = MatD(ambient_dim, 0);
  }
  finish();
}

template <class S>
Subspace<S>::Subspace(int ambient, Mat basis)
    : ambient_(ambient), basis_(std::move(basis)) {
  finish();
}

template <class S>
void Subspace<S>::finish() {
  if constexpr (kExact) {
    if (basis_.cols() == 0) {
      projector_ = MatE(ambient_, ambient_);
      return;
    }
    // P = B (B^T B)^{-1} B^T, exact.
    MatE g = gram(basis_);
    MatE gi = inverse(g);
    projector_ = mul(basis_, mul(gi, transpose(basis_)));
  } else {
    if (basis_.cols() == 0) {
      projector_ = MatD::Zero(ambient_, ambient_);
      return;
    }
    projector_ = basis_ * basis_.transpose();
  }
}

template <class S>
Subspace<S> Subspace<S>::span(const Mat& gens, double abs_tol) {
  if constexpr (kExact) {
    // The pivot columns of the RREF mark an independent subset of the
    // original generators; keep those, in input order.
    MatE work = gens;
    std::vector<int> piv;
    rref(work, &piv);
    std::vector<VecE> keep;
    keep.reserve(piv.size());
    for (int c : piv) keep.push_back(gens.col(c));
    MatE b = keep.empty() ? empty_mat(gens.rows()) : MatE::from_cols(keep);
    return Subspace(gens.rows(), std::move(b));
  } else {
    return Subspace(int(gens.rows()), orthonormal_columns(gens, abs_tol));
  }
}

template <class S>
Subspace<S> Subspace<S>::full(int ambient_dim) {
  if constexpr (kExact) {
    return Subspace(ambient_dim, MatE::identity(ambient_dim));
  } else {
    return Subspace(ambient_dim, MatD(MatD::Identity(ambient_dim, ambient_dim)));
  }
}

template <class S>
Subspace<S> Subspace<S>::coordinate_span(int ambient_dim,
                                         const std::vector<int>& coords) {
  if constexpr (kExact) {
    MatE b(ambient_dim, int(coords.size()));
    for (std::size_t j = 0; j < coords.size(); ++j) {
      if (coords[j] < 0 || coords[j] >= ambient_dim)
        throw ContractError("coordinate index out of range");
      b.at(coords[j], int(j)) = XQ(1);
    }
    return Subspace(ambient_dim, std::move(b));
  } else {
    MatD b = MatD::Zero(ambient_dim, long(coords.size()));
    for (std::size_t j = 0; j < coords.size(); ++j) {
      if (coords[j] < 0 || coords[j] >= ambient_dim)
        throw ContractError("coordinate index out of range");
      b(coords[j], long(j)) = 1.0;
    }
    return Subspace(ambient_dim, std::move(b));
  }
}

template <class S>
int Subspace<S>::dim() const {
  return int(basis_.cols());
}

template <class S>
typename Subspace<S>::Vec Subspace<S>::project(const Vec& v) const {
  if constexpr (kExact) {
    if (int(v.size()) != ambient_) throw ContractError("project: bad vector size");
    return mul(projector_, v);
  } else {
    if (int(v.size()) != ambient_) throw ContractError("project: bad vector size");
    if (basis_.cols() == 0) return VecD::Zero(ambient_);
    return basis_ * (basis_.transpose() * v);
  }
}

template <class S>
bool Subspace<S>::contains(const Vec& v, double abs_tol) const {
  if constexpr (kExact) {
    (void)abs_tol;
    return is_zero(v - project(v));
  } else {
    const VecD r = v - project(v);
    return r.norm() <= abs_tol * (1.0 + v.norm());
  }
}

template <class S>
bool Subspace<S>::contains(const Subspace& other, double abs_tol) const {
  for (int c = 0; c < other.basis_.cols(); ++c) {
    if constexpr (kExact) {
      if (!contains(other.basis_.col(c), abs_tol)) return false;
    } else {
      if (!contains(VecD(other.basis_.col(c)), abs_tol)) return false;
    }
  }
  return true;
}

template <class S>
bool Subspace<S>::same_as(const Subspace& other, double abs_tol) const {
  return dim() == other.dim() && contains(other, abs_tol) &&
         other.contains(*this, abs_tol);
}

template <class S>
Subspace<S> Subspace<S>::intersect(const Subspace& other) const {
  if (ambient_ != other.ambient_) throw ContractError("ambient mismatch");
  const int ka = dim(), kb = other.dim();
  if (ka == 0 || kb == 0) return Subspace(ambient_);
  if constexpr (kExact) {
    // Null space of [A  -B]: pairs (x, y) with A x = B y; A x spans the
    // intersection.
    MatE m(ambient_, ka + kb);
    for (int r = 0; r < ambient_; ++r) {
      for (int c = 0; c < ka; ++c) m.at(r, c) = basis_.at(r, c);
      for (int c = 0; c < kb; ++c) m.at(r, ka + c) = -other.basis_.at(r, c);
    }
    std::vector<VecE> gens;
    for (const VecE& z : kernel(m)) {
      VecE x(ka);
      for (int i = 0; i < ka; ++i) x[i] = z[i];
      gens.push_back(mul(basis_, x));
    }
    if (gens.empty()) return Subspace(ambient_);
    return span(MatE::from_cols(gens));
  } else {
    MatD m(ambient_, ka + kb);
    m.leftCols(ka) = basis_;
    m.rightCols(kb) = -other.basis_;
    MatD z = kernel_columns(m, kAbsTol);
    if (z.cols() == 0) return Subspace(ambient_);
    MatD gens = basis_ * z.topRows(ka);
    return span(gens);
  }
}

template <class S>
Subspace<S> Subspace<S>::orthogonal_complement_in(const Subspace& within) const {
  if (ambient_ != within.ambient_) throw ContractError("ambient mismatch");
  if (!within.contains(*this))
    throw ContractError("orthogonal complement: subspace not contained");
  if constexpr (kExact) {
    // Vectors W c with A^T W c = 0.
    MatE m = mul(transpose(basis_), within.basis_);
    std::vector<VecE> gens;
    for (const VecE& c : kernel(m)) gens.push_back(mul(within.basis_, c));
    if (gens.empty()) return Subspace(ambient_);
    return span(MatE::from_cols(gens));
  } else {
    if (dim() == 0) return within;
    MatD m = basis_.transpose() * within.basis_;
    MatD c = kernel_columns(m, kAbsTol);
    if (c.cols() == 0) return Subspace(ambient_);
    return span(MatD(within.basis_ * c));
  }
}

template <class S>
Subspace<S> Subspace<S>::orthogonal_complement() const {
  return orthogonal_complement_in(full(ambient_));
}

template <class S>
Subspace<S> Subspace<S>::sum(const Subspace& other) const {
  if (ambient_ != other.ambient_) throw ContractError("ambient mismatch");
  if constexpr (kExact) {
    std::vector<VecE> gens;
    for (int c = 0; c < basis_.cols(); ++c) gens.push_back(basis_.col(c));
    for (int c = 0; c < other.basis_.cols(); ++c)
      gens.push_back(other.basis_.col(c));
    if (gens.empty()) return Subspace(ambient_);
    return span(MatE::from_cols(gens));
  } else {
    MatD m(ambient_, dim() + other.dim());
    m.leftCols(dim()) = basis_;
    m.rightCols(other.dim()) = other.basis_;
    return span(m);
  }
}

template class Subspace<XQ>;
template class Subspace<double>;

SubspaceD to_float(const SubspaceE& s) {
  return SubspaceD::span(to_float(s.basis()));
}

std::optional<MatE> orthonormalize_exact(const SubspaceE& s) {
  std::vector<VecE> ortho;
  for (int c = 0; c < s.dim(); ++c) {
    VecE v = s.basis().col(c);
    for (const VecE& u : ortho) v = v - dot(v, u) * u;
    auto len = xq_sqrt(norm2(v));
    if (!len) return std::nullopt;
    ortho.push_back((XQ(1) / *len) * v);
  }
  if (ortho.empty()) return MatE(s.ambient_dim(), 0);
  return MatE::from_cols(ortho);
}

} // namespace orbitface
