#pragma once

// Brute-force reference implementations used only by the tests.  They take
// the slow, obviously-correct route (exhaustive subset enumeration, direct
// definitions) and deliberately share no code path with the engine beyond
// the exact scalar type.

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <vector>

#include "orbitface/linalg.hpp"
#include "orbitface/polytope.hpp"

namespace oracles {

using namespace orbitface;

inline VecE vec(std::initializer_list<const char*> entries) {
  VecE v;
  for (const char* e : entries) v.push_back(parse_exact(e));
  return v;
}

inline VecE veci(std::initializer_list<int> entries) {
  VecE v;
  for (int e : entries) v.push_back(XQ(e));
  return v;
}

struct Hyperplane {
  VecE normal;  // canonical: first nonzero entry has absolute value 1
  XQ offset;
  std::vector<int> on;  // point ids exactly on the plane, sorted
};

/// All facet hyperplanes of conv(pts) inside its affine hull, found by
/// enumerating every d-subset of points, fitting a hyperplane when the
/// subset is affinely independent, and keeping it when all points lie on
/// one side.  O(n^d) and proud of it.
inline std::vector<Hyperplane> brute_facets(const std::vector<VecE>& pts) {
  const int n = int(pts.size());
  const int d = affine_rank(pts);
  std::vector<Hyperplane> out;
  if (d <= 0) return out;

  // Chart via pivot coordinates of an exact RREF, as in the engine, but the
  // facet search itself is exhaustive rather than incremental.
  std::vector<VecE> diffs;
  for (int i = 1; i < n; ++i) diffs.push_back(pts[i] - pts[0]);
  MatE m = MatE::from_rows(diffs);
  std::vector<int> piv;
  rref(m, &piv);
  auto coords = [&](const VecE& p) {
    VecE c(piv.size());
    for (std::size_t i = 0; i < piv.size(); ++i)
      c[i] = p[piv[i]] - pts[0][piv[i]];
    return c;
  };
  std::vector<VecE> q(n);
  for (int i = 0; i < n; ++i) q[i] = coords(pts[i]);

  std::set<std::pair<std::vector<std::string>, std::string>> seen;
  std::vector<int> subset(d);
  auto try_subset = [&]() {
    std::vector<VecE> rows;
    for (int i = 1; i < d; ++i) rows.push_back(q[subset[i]] - q[subset[0]]);
    MatE diff = rows.empty() ? MatE(0, d) : MatE::from_rows(rows);
    auto ker = kernel(diff);
    if (int(ker.size()) != 1) return;
    VecE nrm = ker[0];
    XQ b = dot(nrm, q[subset[0]]);
    int lo = 0, hi = 0;
    for (int i = 0; i < n; ++i) {
      int s = (dot(nrm, q[i]) - b).sign();
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    if (lo < 0 && hi > 0) return;  // cuts through the point set
    if (hi > 0) {
      nrm = XQ(-1) * nrm;
      b = -b;
    }
    for (std::size_t i = 0; i < nrm.size(); ++i) {
      if (nrm[i].is_zero()) continue;
      XQ s = XQ(1) / abs_val(nrm[i]);
      nrm = s * nrm;
      b = s * b;
      break;
    }
    std::vector<std::string> key;
    for (const XQ& e : nrm) key.push_back(format_exact(e));
    if (!seen.insert({key, format_exact(b)}).second) return;
    Hyperplane h;
    h.normal = nrm;
    h.offset = b;
    for (int i = 0; i < n; ++i)
      if ((dot(nrm, q[i]) - b).sign() == 0) h.on.push_back(i);
    // require a genuine (d-1)-dimensional contact
    std::vector<VecE> onpts;
    for (int i : h.on) onpts.push_back(pts[i]);
    if (affine_rank(onpts) == d - 1) out.push_back(std::move(h));
  };

  // enumerate d-subsets
  for (int i = 0; i < d; ++i) subset[i] = i;
  while (true) {
    try_subset();
    int k = d - 1;
    while (k >= 0 && subset[k] == n - d + k) --k;
    if (k < 0) break;
    ++subset[k];
    for (int j = k + 1; j < d; ++j) subset[j] = subset[j - 1] + 1;
  }
  return out;
}

/// Faces of conv(pts) as point-id sets: every intersection of facet on-sets,
/// enumerated over all facet subsets, plus the improper faces.  The ids refer
/// to positions in pts (assumed deduplicated); only ids that are extreme
/// appear in proper faces when pts is a vertex set.
inline std::set<std::vector<int>> brute_face_sets(const std::vector<VecE>& pts) {
  std::set<std::vector<int>> faces;
  std::vector<int> all(pts.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = int(i);
  faces.insert(all);
  faces.insert({});
  auto hp = brute_facets(pts);
  const std::size_t f = hp.size();
  if (f > 20) throw std::runtime_error("oracle: too many facets to enumerate");
  for (std::size_t mask = 1; mask < (std::size_t(1) << f); ++mask) {
    std::vector<int> cur = all;
    for (std::size_t j = 0; j < f; ++j) {
      if (!(mask & (std::size_t(1) << j))) continue;
      std::vector<int> next;
      std::set_intersection(cur.begin(), cur.end(), hp[j].on.begin(),
                            hp[j].on.end(), std::back_inserter(next));
      cur = std::move(next);
    }
    faces.insert(cur);
  }
  return faces;
}

/// Symmetric traceless matrix behind a coordinate vector in the basis used
/// by the spectral examples: n-1 diagonal steps, then sqrt2-scaled pair
/// matrices in (i,j) order.
inline MatD spectral_matrix(const VecD& coords, int n) {
  MatD x = MatD::Zero(n, n);
  int idx = 0;
  for (int k = 1; k < n; ++k, ++idx) {
    const double s = coords[idx] / std::sqrt(double(k) * (k + 1));
    for (int i = 0; i < k; ++i) x(i, i) += s;
    x(k, k) -= double(k) * s;
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++idx)
      x(i, j) = x(j, i) = coords[idx] / std::sqrt(2.0);
  return x;
}

/// Signed distance to the majorization boundary: the smallest partial-sum
/// slack over the strict prefixes (negative outside the spectral hull).  The
/// total sums agree structurally for traceless input, so they are not part
/// of the margin.
inline double majorization_slack(const MatD& x, std::vector<double> lam) {
  Eigen::SelfAdjointEigenSolver<MatD> es(x);
  std::vector<double> eig(es.eigenvalues().data(),
                          es.eigenvalues().data() + x.rows());
  std::sort(eig.rbegin(), eig.rend());
  std::sort(lam.rbegin(), lam.rend());
  double se = 0, sl = 0;
  double slack = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < eig.size(); ++i) {
    se += eig[i];
    sl += lam[i];
    slack = std::min(slack, sl - se);
  }
  return slack;
}

/// Hardy-Littlewood-Polya test: eigenvalues of x dominated by lam after
/// sorting, with equal totals.  The membership oracle for spectral hulls.
inline bool majorized_spectrum(const MatD& x, std::vector<double> lam,
                               double tol) {
  Eigen::SelfAdjointEigenSolver<MatD> es(x);
  std::vector<double> eig(es.eigenvalues().data(),
                          es.eigenvalues().data() + x.rows());
  std::sort(eig.rbegin(), eig.rend());
  std::sort(lam.rbegin(), lam.rend());
  double se = 0, sl = 0;
  for (std::size_t i = 0; i < eig.size(); ++i) {
    se += eig[i];
    sl += lam[i];
    if (i + 1 < eig.size() && se > sl + tol) return false;
  }
  return std::abs(se - sl) <= tol;
}

} // namespace oracles
