#pragma once

#include "orbitface/group.hpp"
#include "orbitface/polytope.hpp"

namespace orbitface {

/// Full face lattice of a polytope, graded by dimension, including the empty
/// face (dim -1) and the polytope itself.  Node ids are canonical: sorted by
/// (dim, vertex id set), so id 0 is the empty face and the last id is P.
class FaceLattice {
public:
  struct Node {
    int id = -1;
    int dim = -1;
    std::vector<int> vertex_ids;   // sorted
    std::vector<int> covered;      // faces covered by this node (dim - 1)
    std::vector<int> covers;       // faces covering this node (dim + 1)
    std::optional<VecE> exposing;  // absent on the improper faces
  };

  /// Enumerates all faces by closing the polytope's facet intersections.
  /// Throws CapError past `cap` nodes.
  static FaceLattice build(const OrbitPolytope& p,
                           std::size_t cap = kClosureCap);

  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& bottom() const { return nodes_.front(); }
  const Node& top() const { return nodes_.back(); }

  /// Node id of a sorted vertex set, or -1 when it is not a face.
  int find(const std::vector<int>& vertex_ids) const;

  /// Strictly increasing saturated chain from `face_id` to the top; by
  /// gradedness its length is dim(P) - dim(face) + 1.  Ties are broken by
  /// smallest node id, so the chain is canonical.
  std::vector<int> maximal_chain(int face_id) const;

  /// Face counts by dimension 0..dim(P).
  std::vector<int> f_vector() const;

private:
  std::vector<Node> nodes_;
};

/// How vertex ids move under exact ambient maps.  Each matrix must permute
/// the vertex set; a ContractError reports the first one that does not.
std::vector<std::vector<int>> vertex_permutations(
    const OrbitPolytope& p, const std::vector<MatE>& elements);

/// Orbit partition of the nonempty faces under a vertex-permutation action.
struct FaceOrbits {
  std::vector<std::vector<int>> classes;  // node ids, each class sorted
  std::vector<int> class_of;              // per node id; -1 for the empty face
};

FaceOrbits face_orbits(const FaceLattice& lattice,
                       const std::vector<std::vector<int>>& vertex_perms);

} // namespace orbitface
