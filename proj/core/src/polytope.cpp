#include "orbitface/polytope.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace orbitface {

namespace {

// Canonical scale: first nonzero entry gets absolute value 1.  Preserves
// orientation, so equal hyperplanes get equal keys.
void canonical_scale(VecE& n, XQ& b) {
  for (const XQ& e : n) {
    if (e.is_zero()) continue;
    XQ s = XQ(1) / abs_val(e);
    n = s * n;
    b = s * b;
    return;
  }
  throw ContractError("zero facet normal");
}

struct VecLexLess {
  bool operator()(const VecE& x, const VecE& y) const { return lex_less(x, y); }
};

// Exact affine chart of the input's affine hull.  R is a d x D RREF matrix
// whose rows span the direction space; because of the pivot structure the
// chart coordinates of p are just the pivot entries of p - p0.
struct AffineChart {
  VecE p0;
  MatE rows;             // d x D
  std::vector<int> piv;  // pivot columns, |piv| = d

  int dim() const { return rows.rows(); }

  VecE coords(const VecE& p) const {
    VecE q(piv.size());
    for (std::size_t i = 0; i < piv.size(); ++i) q[i] = p[piv[i]] - p0[piv[i]];
    return q;
  }
};

AffineChart make_chart(const std::vector<VecE>& pts) {
  const int d_amb = int(pts[0].size());
  std::vector<VecE> diffs;
  diffs.reserve(pts.size() - 1);
  for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(pts[i] - pts[0]);
  AffineChart chart;
  chart.p0 = pts[0];
  if (diffs.empty()) {
    chart.rows = MatE(0, d_amb);
    return chart;
  }
  MatE m = MatE::from_rows(diffs);
  std::vector<int> piv;
  int r = rref(m, &piv);
  MatE rows(r, d_amb);
  for (int i = 0; i < r; ++i)
    for (int c = 0; c < d_amb; ++c) rows.at(i, c) = m.at(i, c);
  chart.rows = std::move(rows);
  chart.piv = std::move(piv);
  return chart;
}

// A simplicial boundary piece during the incremental build, in chart coords.
struct SFacet {
  std::vector<int> verts;  // d point ids, sorted
  VecE m;                  // chart-space outward normal, canonical scale
  XQ b;
  bool alive = true;
};

} // namespace

int affine_rank(const std::vector<VecE>& pts) {
  if (pts.empty()) return -1;
  std::vector<VecE> diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(pts[i] - pts[0]);
  if (diffs.empty()) return 0;
  MatE m = MatE::from_rows(diffs);
  return rref(m);
}

OrbitPolytope OrbitPolytope::hull(const std::vector<VecE>& points) {
  if (points.empty()) throw ContractError("hull of empty point set");
  if (int(points.size()) > kMaxHullPoints)
    throw CapError("hull point count exceeds cap");
  const int d_amb = int(points[0].size());
  for (const VecE& p : points)
    if (int(p.size()) != d_amb) throw ContractError("hull: ragged point list");

  // Deduplicate exactly and sort so every downstream id is canonical.
  std::set<VecE, VecLexLess> uniq(points.begin(), points.end());
  std::vector<VecE> pts(uniq.begin(), uniq.end());
  const int n = int(pts.size());

  AffineChart chart = make_chart(pts);
  const int d = chart.dim();
  if (d > kMaxHullDim) throw CapError("hull dimension exceeds cap");

  OrbitPolytope poly;
  poly.ambient_ = d_amb;
  poly.dim_ = d;

  if (d == 0) {
    poly.vertices_ = {pts[0]};
    poly.direction_ = SubspaceE(d_amb);
    SubspaceE whole = SubspaceE::full(d_amb);
    for (int c = 0; c < d_amb; ++c) {
      VecE z = whole.basis().col(c);
      poly.equalities_.emplace_back(z, dot(z, pts[0]));
    }
    return poly;
  }

  std::vector<VecE> q(n);
  for (int i = 0; i < n; ++i) q[i] = chart.coords(pts[i]);

  std::vector<SFacet> sfacets;

  if (d == 1) {
    int lo = 0, hi = 0;
    for (int i = 1; i < n; ++i) {
      if ((q[i][0] - q[lo][0]).sign() < 0) lo = i;
      if ((q[i][0] - q[hi][0]).sign() > 0) hi = i;
    }
    sfacets.push_back({{lo}, VecE{XQ(-1)}, -q[lo][0], true});
    sfacets.push_back({{hi}, VecE{XQ(1)}, q[hi][0], true});
  } else {
    // Initial affinely independent simplex, greedy over the sorted points.
    std::vector<int> simplex = {0};
    std::vector<VecE> diff_rows;
    for (int i = 1; i < n && int(simplex.size()) < d + 1; ++i) {
      diff_rows.push_back(q[i] - q[simplex[0]]);
      MatE t = MatE::from_rows(diff_rows);
      if (rref(t) == int(diff_rows.size())) {
        simplex.push_back(i);
      } else {
        diff_rows.pop_back();
      }
    }
    if (int(simplex.size()) != d + 1)
      throw ContractError("hull: lost affine rank");  // cannot happen

    VecE c_ref(d, XQ(0));
    for (int id : simplex) c_ref = c_ref + q[id];
    c_ref = (XQ(1) / XQ(d + 1)) * c_ref;

    // Hyperplane through d chart points, oriented away from c_ref.
    auto make_sfacet = [&](std::vector<int> verts) {
      std::sort(verts.begin(), verts.end());
      std::vector<VecE> rows;
      for (std::size_t i = 1; i < verts.size(); ++i)
        rows.push_back(q[verts[i]] - q[verts[0]]);
      MatE m = rows.empty() ? MatE(0, d) : MatE::from_rows(rows);
      std::vector<VecE> ker = kernel(m);
      if (ker.size() != 1)
        throw ContractError("hull: degenerate facet seed");
      VecE nrm = ker[0];
      XQ b = dot(nrm, q[verts[0]]);
      int side = (dot(nrm, c_ref) - b).sign();
      if (side == 0) throw ContractError("hull: reference point on facet");
      if (side > 0) {
        nrm = XQ(-1) * nrm;
        b = -b;
      }
      canonical_scale(nrm, b);
      return SFacet{std::move(verts), std::move(nrm), std::move(b), true};
    };

    for (int skip = 0; skip <= d; ++skip) {
      std::vector<int> verts;
      for (int j = 0; j <= d; ++j)
        if (j != skip) verts.push_back(simplex[j]);
      sfacets.push_back(make_sfacet(verts));
    }

    std::set<int> in_simplex(simplex.begin(), simplex.end());
    for (int p = 0; p < n; ++p) {
      if (in_simplex.count(p)) continue;

      std::vector<int> visible;
      for (std::size_t f = 0; f < sfacets.size(); ++f)
        if (sfacets[f].alive && (dot(sfacets[f].m, q[p]) - sfacets[f].b).sign() > 0)
          visible.push_back(int(f));
      if (visible.empty()) continue;  // inside or on the current hull

      // Ridge adjacency over the live facets.
      std::map<std::vector<int>, std::vector<int>> ridge_map;
      for (std::size_t f = 0; f < sfacets.size(); ++f) {
        if (!sfacets[f].alive) continue;
        for (std::size_t skip = 0; skip < sfacets[f].verts.size(); ++skip) {
          std::vector<int> ridge;
          for (std::size_t j = 0; j < sfacets[f].verts.size(); ++j)
            if (j != skip) ridge.push_back(sfacets[f].verts[j]);
          ridge_map[ridge].push_back(int(f));
        }
      }

      std::set<int> vis(visible.begin(), visible.end());
      std::vector<std::vector<int>> horizon;
      for (const auto& [ridge, fs] : ridge_map) {
        if (fs.size() != 2)
          throw ContractError("hull: boundary is not closed");
        const bool v0 = vis.count(fs[0]) > 0, v1 = vis.count(fs[1]) > 0;
        if (v0 != v1) horizon.push_back(ridge);
      }

      for (int f : visible) sfacets[f].alive = false;
      for (std::vector<int> ridge : horizon) {
        ridge.push_back(p);
        sfacets.push_back(make_sfacet(std::move(ridge)));
      }
    }
  }

  // Merge simplicial pieces into true facets keyed by their hyperplane, then
  // attach every input point lying on the hyperplane.
  std::map<std::pair<VecE, XQ>, std::vector<int>,
           bool (*)(const std::pair<VecE, XQ>&, const std::pair<VecE, XQ>&)>
      planes(+[](const std::pair<VecE, XQ>& x, const std::pair<VecE, XQ>& y) {
        if (lex_less(x.first, y.first)) return true;
        if (lex_less(y.first, x.first)) return false;
        return (x.second - y.second).sign() < 0;
      });
  for (const SFacet& f : sfacets) {
    if (!f.alive) continue;
    auto& on = planes[{f.m, f.b}];
    if (!on.empty()) continue;
    for (int i = 0; i < n; ++i)
      if ((dot(f.m, q[i]) - f.b).sign() == 0) on.push_back(i);
  }

  // A point of P is a vertex iff the normals of its containing facets span
  // the full chart space.
  std::vector<std::vector<const VecE*>> normals_at(n);
  for (const auto& [plane, on] : planes)
    for (int i : on) normals_at[i].push_back(&plane.first);
  std::vector<int> vertex_of(n, -1);
  std::vector<VecE> verts;
  for (int i = 0; i < n; ++i) {
    if (int(normals_at[i].size()) < d) continue;
    std::vector<VecE> rows;
    for (const VecE* nm : normals_at[i]) rows.push_back(*nm);
    MatE m = MatE::from_rows(rows);
    if (rref(m) == d) {
      vertex_of[i] = int(verts.size());
      verts.push_back(pts[i]);
    }
  }
  if (verts.empty()) throw ContractError("hull: no vertices found");
  poly.vertices_ = std::move(verts);

  // Direction space and affine-hull equalities in ambient coordinates.
  std::vector<VecE> dir_gens;
  for (int r = 0; r < chart.rows.rows(); ++r) dir_gens.push_back(chart.rows.row(r));
  poly.direction_ = SubspaceE::span(MatE::from_cols(dir_gens));
  SubspaceE ortho = poly.direction_.orthogonal_complement();
  for (int c = 0; c < ortho.basis().cols(); ++c) {
    VecE z = ortho.basis().col(c);
    poly.equalities_.emplace_back(z, dot(z, chart.p0));
  }

  // Pull chart normals back to ambient coordinates: scatter over the pivot
  // columns, then project into the direction space so summed normals stay
  // inside any section containing P.
  for (const auto& [plane, on] : planes) {
    Facet facet;
    VecE scatter(d_amb, XQ(0));
    for (int i = 0; i < d; ++i) scatter[chart.piv[i]] = plane.first[i];
    facet.normal = poly.direction_.project(scatter);
    for (int i : on)
      if (vertex_of[i] >= 0) facet.vertex_ids.push_back(vertex_of[i]);
    std::sort(facet.vertex_ids.begin(), facet.vertex_ids.end());
    if (facet.vertex_ids.empty())
      throw ContractError("hull: facet without vertices");
    facet.offset = dot(facet.normal, poly.vertices_[facet.vertex_ids[0]]);
    canonical_scale(facet.normal, facet.offset);
    poly.facets_.push_back(std::move(facet));
  }
  std::sort(poly.facets_.begin(), poly.facets_.end(),
            [](const Facet& x, const Facet& y) { return x.vertex_ids < y.vertex_ids; });
  return poly;
}

bool OrbitPolytope::contains(const VecE& x) const {
  if (int(x.size()) != ambient_) throw ContractError("contains: bad point size");
  if (dim_ == 0) return is_zero(x - vertices_[0]);
  for (const auto& [nrm, c] : equalities_)
    if ((dot(nrm, x) - c).sign() != 0) return false;
  for (const Facet& f : facets_)
    if ((dot(f.normal, x) - f.offset).sign() > 0) return false;
  return true;
}

bool OrbitPolytope::contains_float(const VecD& x, double tol) const {
  if (int(x.size()) != ambient_) throw ContractError("contains: bad point size");
  const double scale = 1.0 + x.norm();
  if (dim_ == 0) {
    return (x - to_float(vertices_[0])).norm() <= tol * scale;
  }
  for (const auto& [nrm, c] : equalities_) {
    VecD nf = to_float(nrm);
    if (std::abs(nf.dot(x) - to_double(c)) > tol * scale * nf.norm())
      return false;
  }
  for (const Facet& f : facets_) {
    VecD nf = to_float(f.normal);
    if (nf.dot(x) - to_double(f.offset) > tol * scale * nf.norm()) return false;
  }
  return true;
}

VecE OrbitPolytope::centroid() const {
  VecE c(ambient_, XQ(0));
  for (const VecE& v : vertices_) c = c + v;
  return (XQ(1) / XQ(int(vertices_.size()))) * c;
}

XQ OrbitPolytope::support_value(const VecE& u) const {
  if (int(u.size()) != ambient_) throw ContractError("support: bad direction");
  XQ best = dot(u, vertices_[0]);
  for (std::size_t i = 1; i < vertices_.size(); ++i) {
    XQ v = dot(u, vertices_[i]);
    if ((v - best).sign() > 0) best = v;
  }
  return best;
}

std::vector<int> OrbitPolytope::argmax_vertices(const VecE& u) const {
  XQ best = support_value(u);
  std::vector<int> ids;
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if ((dot(u, vertices_[i]) - best).sign() == 0) ids.push_back(int(i));
  return ids;
}

bool OrbitPolytope::is_face(const std::vector<int>& vertex_ids) const {
  for (int id : vertex_ids)
    if (id < 0 || id >= int(vertices_.size()))
      throw ContractError("is_face: vertex id out of range");
  std::vector<int> s = vertex_ids;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  if (s.empty()) return true;
  if (int(s.size()) == int(vertices_.size())) return true;

  VecE u(ambient_, XQ(0));
  bool any = false;
  for (const Facet& f : facets_) {
    if (std::includes(f.vertex_ids.begin(), f.vertex_ids.end(), s.begin(),
                      s.end())) {
      u = u + f.normal;
      any = true;
    }
  }
  if (!any) return false;  // a proper face lies in at least one facet
  return argmax_vertices(u) == s;
}

PFace supporting_face(const OrbitPolytope& p, const VecE& u) {
  PFace face;
  face.vertex_ids = p.argmax_vertices(u);
  std::vector<VecE> pts;
  for (int id : face.vertex_ids) pts.push_back(p.vertices()[id]);
  face.dim = affine_rank(pts);
  face.exposing = u;
  return face;
}

VecE relative_interior_point(const OrbitPolytope& p,
                             const std::vector<int>& vertex_ids) {
  if (!p.is_face(vertex_ids))
    throw ContractError("relative_interior_point: not a face");
  std::vector<int> s = vertex_ids;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  if (s.empty()) throw ContractError("relative_interior_point: empty face");
  VecE c(p.ambient_dim(), XQ(0));
  for (int id : s) c = c + p.vertices()[id];
  return (XQ(1) / XQ(int(s.size()))) * c;
}

OrbitPolytope face_polytope(const OrbitPolytope& p,
                            const std::vector<int>& vertex_ids) {
  if (!p.is_face(vertex_ids))
    throw ContractError("face_polytope: not a face");
  std::vector<VecE> pts;
  for (int id : vertex_ids) pts.push_back(p.vertices()[id]);
  return OrbitPolytope::hull(pts);
}

} // namespace orbitface
