#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "orbitface/scalar.hpp"

namespace orbitface {

using VecD = Eigen::VectorXd;
using MatD = Eigen::MatrixXd;

/// Default numeric thresholds (see ScalarPolicy): rank and membership cutoff,
/// and the coarser point-deduplication cutoff.
inline constexpr double kAbsTol = 1e-9;
inline constexpr double kDedupeTol = 1e-8;

/// Exact vector over XQ.
using VecE = std::vector<XQ>;

/// Exact dense matrix over XQ, row-major.
class MatE {
public:
  MatE() = default;
  MatE(int rows, int cols) : rows_(rows), cols_(cols), a_(rows * cols, XQ(0)) {}

  static MatE identity(int n);
  static MatE from_rows(const std::vector<VecE>& rows);
  static MatE from_cols(const std::vector<VecE>& cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  XQ& at(int r, int c) { return a_[std::size_t(r) * cols_ + c]; }
  const XQ& at(int r, int c) const { return a_[std::size_t(r) * cols_ + c]; }

  VecE row(int r) const;
  VecE col(int c) const;

  friend bool operator==(const MatE& x, const MatE& y);

private:
  int rows_ = 0, cols_ = 0;
  std::vector<XQ> a_;
};

// --- exact vector ops ------------------------------------------------------

VecE operator+(const VecE& x, const VecE& y);
VecE operator-(const VecE& x, const VecE& y);
VecE operator*(const XQ& s, const VecE& x);
XQ dot(const VecE& x, const VecE& y);
XQ norm2(const VecE& x);
bool is_zero(const VecE& x);

/// Entry-wise real-order lexicographic comparison; the canonical ordering for
/// vertex lists and orbit enumerations.
bool lex_less(const VecE& x, const VecE& y);

// --- exact matrix ops ------------------------------------------------------

MatE mul(const MatE& x, const MatE& y);
VecE mul(const MatE& m, const VecE& v);
MatE transpose(const MatE& m);

/// In-place reduced row echelon form; returns rank.  Optionally reports the
/// pivot columns in order.
int rref(MatE& m, std::vector<int>* pivot_cols = nullptr);

int rank(const MatE& m);

/// Solves A x = b exactly.  Returns nothing when inconsistent; free variables
/// are set to zero, so the result is deterministic.
std::optional<VecE> solve(const MatE& a, const VecE& b);

/// Basis of the null space of A (deterministic RREF back-substitution).
std::vector<VecE> kernel(const MatE& a);

/// Inverse of a square nonsingular matrix; throws ContractError otherwise.
MatE inverse(const MatE& a);

/// Gram matrix B^T B of a column set.
MatE gram(const MatE& b);

// --- conversions -----------------------------------------------------------

VecD to_float(const VecE& v);
MatD to_float(const MatE& m);

// --- floating-point helpers (Eigen) ----------------------------------------

/// Numerical rank with threshold abs_tol * sigma_max.
int rank_svd(const MatD& m, double abs_tol);

/// Orthonormal basis of the column span (SVD left vectors above threshold).
MatD orthonormal_columns(const MatD& m, double abs_tol);

/// Orthonormal basis of the null space of m.
MatD kernel_columns(const MatD& m, double abs_tol);

/// Matrix exponential (scaling-and-squaring Pade).
MatD matrix_exp(const MatD& x);

bool approx_equal(const VecD& x, const VecD& y, double tol);

} // namespace orbitface
