#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "orbitface/subspace.hpp"

namespace orbitface {

/// Desk-scale caps for the exact hull path.
inline constexpr int kMaxHullDim = 8;
inline constexpr int kMaxHullPoints = 2000;

/// Supporting hyperplane <normal, x> <= offset, tight exactly on the facet.
/// The normal lies in the direction space of the affine hull, points
/// outward, and is scaled so its first nonzero entry has absolute value 1.
struct Facet {
  VecE normal;
  XQ offset;
  std::vector<int> vertex_ids;  // sorted indices into the vertex list
};

/// Dimension of the affine hull of a point list (-1 for empty input).
int affine_rank(const std::vector<VecE>& pts);

/// Compact convex polytope with exact vertex and facet data.  Construction is
/// an incremental beneath-beyond hull run in exact arithmetic inside the
/// affine hull of the input, so degenerate (lower-dimensional) input is fine.
class OrbitPolytope {
public:
  /// Convex hull of a nonempty point list.  Throws CapError past the pinned
  /// desk-scale caps and ContractError on malformed input.
  static OrbitPolytope hull(const std::vector<VecE>& points);

  int ambient_dim() const { return ambient_; }
  int dim() const { return dim_; }

  /// Minimal vertex list, lexicographically sorted.
  const std::vector<VecE>& vertices() const { return vertices_; }
  /// Irredundant facet list, sorted by vertex id set.
  const std::vector<Facet>& facets() const { return facets_; }

  /// Direction space of the affine hull.
  const SubspaceE& affine_direction() const { return direction_; }
  /// Affine hull as equality constraints <n, x> = c.
  const std::vector<std::pair<VecE, XQ>>& hull_equalities() const {
    return equalities_;
  }

  bool contains(const VecE& x) const;
  bool contains_float(const VecD& x, double tol) const;

  VecE centroid() const;

  XQ support_value(const VecE& u) const;
  std::vector<int> argmax_vertices(const VecE& u) const;

  /// Exact face test via the exposing-hyperplane construction: a sorted
  /// vertex id set is a face iff the summed outward normals of the facets
  /// containing it expose exactly that set.  Empty set and full set are the
  /// improper faces and return true.
  bool is_face(const std::vector<int>& vertex_ids) const;

private:
  OrbitPolytope() = default;

  int ambient_ = 0;
  int dim_ = 0;
  std::vector<VecE> vertices_;
  std::vector<Facet> facets_;
  SubspaceE direction_{0};
  std::vector<std::pair<VecE, XQ>> equalities_;
};

/// A face handed around by value: vertex ids plus derived data.
struct PFace {
  std::vector<int> vertex_ids;  // sorted
  int dim = -1;                 // -1 for the empty face
  std::optional<VecE> exposing; // a direction exposing exactly this face
};

/// Face of p exposed by direction u (u = 0 gives p itself).
PFace supporting_face(const OrbitPolytope& p, const VecE& u);

/// Exact centroid of a face's vertices; requires the set to be a face.
VecE relative_interior_point(const OrbitPolytope& p,
                             const std::vector<int>& vertex_ids);

/// The face as a polytope in the same ambient space.
OrbitPolytope face_polytope(const OrbitPolytope& p,
                            const std::vector<int>& vertex_ids);

} // namespace orbitface
