#include "orbitface/linalg.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace orbitface {

MatE MatE::identity(int n) {
  MatE m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = XQ(1);
  return m;
}

MatE MatE::from_rows(const std::vector<VecE>& rows) {
  if (rows.empty()) return MatE();
  MatE m(int(rows.size()), int(rows[0].size()));
  for (int r = 0; r < m.rows(); ++r) {
    if (int(rows[r].size()) != m.cols())
      throw ContractError("ragged row list");
    for (int c = 0; c < m.cols(); ++c) m.at(r, c) = rows[r][c];
  }
  return m;
}

MatE MatE::from_cols(const std::vector<VecE>& cols) {
  if (cols.empty()) return MatE();
  MatE m(int(cols[0].size()), int(cols.size()));
  for (int c = 0; c < m.cols(); ++c) {
    if (int(cols[c].size()) != m.rows())
      throw ContractError("ragged column list");
    for (int r = 0; r < m.rows(); ++r) m.at(r, c) = cols[c][r];
  }
  return m;
}

VecE MatE::row(int r) const {
  VecE v(cols_);
  for (int c = 0; c < cols_; ++c) v[c] = at(r, c);
  return v;
}

VecE MatE::col(int c) const {
  VecE v(rows_);
  for (int r = 0; r < rows_; ++r) v[r] = at(r, c);
  return v;
}

bool operator==(const MatE& x, const MatE& y) {
  if (x.rows_ != y.rows_ || x.cols_ != y.cols_) return false;
  for (std::size_t i = 0; i < x.a_.size(); ++i)
    if (!(x.a_[i] == y.a_[i])) return false;
  return true;
}

VecE operator+(const VecE& x, const VecE& y) {
  if (x.size() != y.size()) throw ContractError("vector size mismatch");
  VecE z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] + y[i];
  return z;
}

VecE operator-(const VecE& x, const VecE& y) {
  if (x.size() != y.size()) throw ContractError("vector size mismatch");
  VecE z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] - y[i];
  return z;
}

VecE operator*(const XQ& s, const VecE& x) {
  VecE z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = s * x[i];
  return z;
}

XQ dot(const VecE& x, const VecE& y) {
  if (x.size() != y.size()) throw ContractError("vector size mismatch");
  XQ s(0);
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

XQ norm2(const VecE& x) { return dot(x, x); }

bool is_zero(const VecE& x) {
  for (const auto& e : x)
    if (!e.is_zero()) return false;
  return true;
}

bool lex_less(const VecE& x, const VecE& y) {
  const std::size_t n = std::min(x.size(), y.size());
  for (std::size_t i = 0; i < n; ++i) {
    int s = (x[i] - y[i]).sign();
    if (s != 0) return s < 0;
  }
  return x.size() < y.size();
}

MatE mul(const MatE& x, const MatE& y) {
  if (x.cols() != y.rows()) throw ContractError("matrix size mismatch");
  MatE z(x.rows(), y.cols());
  for (int i = 0; i < x.rows(); ++i)
    for (int k = 0; k < x.cols(); ++k) {
      const XQ& xik = x.at(i, k);
      if (xik.is_zero()) continue;
      for (int j = 0; j < y.cols(); ++j)
        z.at(i, j) += xik * y.at(k, j);
    }
  return z;
}

VecE mul(const MatE& m, const VecE& v) {
  if (m.cols() != int(v.size())) throw ContractError("matrix size mismatch");
  VecE z(m.rows(), XQ(0));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!m.at(i, j).is_zero()) z[i] += m.at(i, j) * v[j];
  return z;
}

MatE transpose(const MatE& m) {
  MatE t(m.cols(), m.rows());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) t.at(c, r) = m.at(r, c);
  return t;
}

int rref(MatE& m, std::vector<int>* pivot_cols) {
  if (pivot_cols) pivot_cols->clear();
  int rank = 0;
  for (int col = 0; col < m.cols() && rank < m.rows(); ++col) {
    int pivot = -1;
    for (int r = rank; r < m.rows(); ++r)
      if (!m.at(r, col).is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != rank)
      for (int c = 0; c < m.cols(); ++c)
        std::swap(m.at(pivot, c), m.at(rank, c));
    XQ inv = XQ(1) / m.at(rank, col);
    for (int c = col; c < m.cols(); ++c) m.at(rank, c) = inv * m.at(rank, c);
    for (int r = 0; r < m.rows(); ++r) {
      if (r == rank || m.at(r, col).is_zero()) continue;
      XQ f = m.at(r, col);
      for (int c = col; c < m.cols(); ++c)
        m.at(r, c) -= f * m.at(rank, c);
    }
    if (pivot_cols) pivot_cols->push_back(col);
    ++rank;
  }
  return rank;
}

int rank(const MatE& m) {
  MatE t = m;
  return rref(t);
}

std::optional<VecE> solve(const MatE& a, const VecE& b) {
  if (a.rows() != int(b.size())) throw ContractError("solve size mismatch");
  MatE aug(a.rows(), a.cols() + 1);
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < a.cols(); ++c) aug.at(r, c) = a.at(r, c);
    aug.at(r, a.cols()) = b[r];
  }
  std::vector<int> piv;
  rref(aug, &piv);
  for (int p : piv)
    if (p == a.cols()) return std::nullopt;  // pivot in the rhs column
  VecE x(a.cols(), XQ(0));
  for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug.at(int(i), a.cols());
  return x;
}

std::vector<VecE> kernel(const MatE& a) {
  MatE r = a;
  std::vector<int> piv;
  rref(r, &piv);
  std::vector<bool> is_pivot(a.cols(), false);
  for (int p : piv) is_pivot[p] = true;
  std::vector<VecE> basis;
  for (int free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    VecE v(a.cols(), XQ(0));
    v[free] = XQ(1);
    for (std::size_t i = 0; i < piv.size(); ++i)
      v[piv[i]] = -r.at(int(i), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

MatE inverse(const MatE& a) {
  if (a.rows() != a.cols()) throw ContractError("inverse of non-square matrix");
  const int n = a.rows();
  MatE aug(n, 2 * n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) aug.at(r, c) = a.at(r, c);
    aug.at(r, n + r) = XQ(1);
  }
  std::vector<int> piv;
  rref(aug, &piv);
  // nonsingular iff the first n pivots sit in the left block, one per column
  bool ok = int(piv.size()) >= n;
  for (int i = 0; ok && i < n; ++i) ok = piv[i] == i;
  if (!ok) throw ContractError("inverse of singular matrix");
  MatE inv(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) inv.at(r, c) = aug.at(r, n + c);
  return inv;
}

MatE gram(const MatE& b) { return mul(transpose(b), b); }

VecD to_float(const VecE& v) {
  VecD x(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) x[long(i)] = to_double(v[i]);
  return x;
}

MatD to_float(const MatE& m) {
  MatD x(m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) x(r, c) = to_double(m.at(r, c));
  return x;
}

int rank_svd(const MatD& m, double abs_tol) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<MatD> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s[0] <= 0) return 0;
  const double thresh = abs_tol * s[0];
  int r = 0;
  for (long i = 0; i < s.size(); ++i)
    if (s[i] > thresh) ++r;
  return r;
}

MatD orthonormal_columns(const MatD& m, double abs_tol) {
  if (m.rows() == 0 || m.cols() == 0) return MatD(m.rows(), 0);
  Eigen::JacobiSVD<MatD> svd(m, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s[0] <= 0) return MatD(m.rows(), 0);
  const double thresh = abs_tol * s[0];
  int r = 0;
  for (long i = 0; i < s.size(); ++i)
    if (s[i] > thresh) ++r;
  return svd.matrixU().leftCols(r);
}

MatD kernel_columns(const MatD& m, double abs_tol) {
  if (m.cols() == 0) return MatD(0, 0);
  if (m.rows() == 0) return MatD::Identity(m.cols(), m.cols());
  Eigen::JacobiSVD<MatD> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double smax = s.size() > 0 ? s[0] : 0.0;
  const double thresh = abs_tol * (smax > 0 ? smax : 1.0);
  int r = 0;
  for (long i = 0; i < s.size(); ++i)
    if (s[i] > thresh) ++r;
  return svd.matrixV().rightCols(m.cols() - r);
}

MatD matrix_exp(const MatD& x) { return x.exp(); }

bool approx_equal(const VecD& x, const VecD& y, double tol) {
  return x.size() == y.size() && (x - y).lpNorm<Eigen::Infinity>() <= tol;
}

} // namespace orbitface
