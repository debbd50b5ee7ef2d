#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "orbitface/faces.hpp"
#include "orbitface/group.hpp"
#include "orbitface/polytope.hpp"
#include "oracles.hpp"

using namespace orbitface;
using oracles::vec;
using oracles::veci;

namespace {

std::vector<VecE> square_points() {
  return {veci({1, 0}), veci({-1, 0}), veci({0, 1}), veci({0, -1})};
}

std::vector<VecE> hexagon_points() {
  std::vector<VecE> pts;
  int vals[3] = {3, 2, 1};
  int perm[3] = {0, 1, 2};
  std::sort(perm, perm + 3);
  do {
    pts.push_back(veci({vals[perm[0]], vals[perm[1]], vals[perm[2]]}));
  } while (std::next_permutation(perm, perm + 3));
  return pts;
}

std::vector<VecE> perm_orbit4(std::array<int, 4> vals) {
  std::array<int, 4> idx = {0, 1, 2, 3};
  std::vector<VecE> pts;
  do {
    pts.push_back(
        veci({vals[idx[0]], vals[idx[1]], vals[idx[2]], vals[idx[3]]}));
  } while (std::next_permutation(idx.begin(), idx.end()));
  return pts;
}

// Combinatorial comparison against the exhaustive oracle.
void check_against_oracle(const OrbitPolytope& p) {
  auto oracle_facets = oracles::brute_facets(p.vertices());
  REQUIRE(oracle_facets.size() == p.facets().size());
  std::set<std::vector<int>> engine_sets, oracle_sets;
  for (const auto& f : p.facets()) engine_sets.insert(f.vertex_ids);
  for (const auto& h : oracle_facets) oracle_sets.insert(h.on);
  CHECK(engine_sets == oracle_sets);
}

void check_facet_geometry(const OrbitPolytope& p) {
  for (const auto& f : p.facets()) {
    // supporting: every vertex weakly below, tight set is exactly vertex_ids
    std::vector<int> tight;
    for (std::size_t i = 0; i < p.vertices().size(); ++i) {
      int s = (dot(f.normal, p.vertices()[i]) - f.offset).sign();
      CHECK(s <= 0);
      if (s == 0) tight.push_back(int(i));
    }
    CHECK(tight == f.vertex_ids);
    // outward normal lies in the affine-hull direction space
    CHECK(p.affine_direction().contains(f.normal));
  }
}

} // namespace

TEST_CASE("square: hull, membership, faces") {
  auto p = OrbitPolytope::hull(square_points());
  CHECK(p.dim() == 2);
  CHECK(p.vertices().size() == 4);
  CHECK(p.facets().size() == 4);
  check_against_oracle(p);
  check_facet_geometry(p);

  CHECK(p.contains(veci({0, 0})));
  CHECK(p.contains(vec({"1/2", "1/2"})));
  CHECK_FALSE(p.contains(vec({"1/2", "3/4"})));
  VecD near_edge(2);
  near_edge << 0.5, 0.5 + 1e-9;
  CHECK(p.contains_float(near_edge, 1e-7));
  near_edge << 0.5, 0.6;
  CHECK_FALSE(p.contains_float(near_edge, 1e-7));

  // supporting faces
  auto vtx = supporting_face(p, veci({1, 0}));
  CHECK(vtx.dim == 0);
  REQUIRE(vtx.vertex_ids.size() == 1);
  CHECK(p.vertices()[vtx.vertex_ids[0]] == veci({1, 0}));

  auto edge = supporting_face(p, veci({1, 1}));
  CHECK(edge.dim == 1);
  CHECK(edge.vertex_ids.size() == 2);

  auto whole = supporting_face(p, veci({0, 0}));
  CHECK(whole.dim == 2);
  CHECK(whole.vertex_ids.size() == 4);
}

TEST_CASE("square: is_face accepts faces and rejects the diagonal") {
  auto p = OrbitPolytope::hull(square_points());
  // find ids of (1,0) and (-1,0): the diagonal pair
  int east = -1, west = -1;
  for (std::size_t i = 0; i < p.vertices().size(); ++i) {
    if (p.vertices()[i] == veci({1, 0})) east = int(i);
    if (p.vertices()[i] == veci({-1, 0})) west = int(i);
  }
  REQUIRE(east >= 0);
  REQUIRE(west >= 0);
  CHECK(p.is_face({east}));
  CHECK_FALSE(p.is_face({east, west}));
  CHECK(p.is_face({}));
  CHECK(p.is_face({0, 1, 2, 3}));
  for (const auto& f : p.facets()) CHECK(p.is_face(f.vertex_ids));

  // segment-definition witness for the diagonal: the center is in
  // conv{east, west} and in the relative interior of the segment between
  // the other two vertices, which are not in conv{east, west}.
  VecE center = (xq_half()) * (p.vertices()[east] + p.vertices()[west]);
  CHECK(center == veci({0, 0}));
  int north = -1, south = -1;
  for (std::size_t i = 0; i < p.vertices().size(); ++i) {
    if (p.vertices()[i] == veci({0, 1})) north = int(i);
    if (p.vertices()[i] == veci({0, -1})) south = int(i);
  }
  VecE mid = xq_half() * (p.vertices()[north] + p.vertices()[south]);
  CHECK(mid == center);  // witness established
}

TEST_CASE("face definition holds on midpoints across small polytopes") {
  // For every proper face F and vertex pair (x, y): if the midpoint of x,y
  // lies in F then both endpoints do.  This is the segment definition of a
  // face checked exactly, independent of the exposing construction.
  for (auto pts : {square_points(), hexagon_points()}) {
    auto p = OrbitPolytope::hull(pts);
    auto lat = FaceLattice::build(p);
    for (const auto& node : lat.nodes()) {
      if (node.dim < 0 || node.id == lat.top().id) continue;
      auto fp = face_polytope(p, node.vertex_ids);
      const auto& vs = p.vertices();
      for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j) {
          VecE m = xq_half() * (vs[i] + vs[j]);
          if (fp.contains(m)) {
            CHECK(fp.contains(vs[i]));
            CHECK(fp.contains(vs[j]));
          }
        }
    }
  }
}

TEST_CASE("degenerate inputs") {
  // single point
  auto pt = OrbitPolytope::hull({veci({2, 3, 4})});
  CHECK(pt.dim() == 0);
  CHECK(pt.vertices().size() == 1);
  CHECK(pt.facets().empty());
  CHECK(pt.contains(veci({2, 3, 4})));
  CHECK_FALSE(pt.contains(veci({2, 3, 5})));
  auto lat0 = FaceLattice::build(pt);
  CHECK(lat0.nodes().size() == 2);  // empty face and the point

  // collinear points with an interior one, embedded in the plane
  auto seg = OrbitPolytope::hull({veci({0, 0}), veci({1, 1}), veci({2, 2})});
  CHECK(seg.dim() == 1);
  CHECK(seg.vertices().size() == 2);
  CHECK(seg.facets().size() == 2);
  CHECK(seg.contains(veci({1, 1})));
  CHECK_FALSE(seg.contains(veci({1, 0})));
  auto lat1 = FaceLattice::build(seg);
  CHECK(lat1.nodes().size() == 4);

  // duplicates and non-extreme points are dropped
  auto sq = OrbitPolytope::hull({veci({1, 0}), veci({1, 0}), veci({-1, 0}),
                                 veci({0, 1}), veci({0, -1}), veci({0, 0}),
                                 vec({"1/2", "1/2"})});
  CHECK(sq.vertices().size() == 4);

  CHECK_THROWS_AS(OrbitPolytope::hull({}), ContractError);
}

TEST_CASE("hexagon: lattice shape and chains") {
  auto p = OrbitPolytope::hull(hexagon_points());
  CHECK(p.dim() == 2);
  CHECK(p.vertices().size() == 6);
  CHECK(p.facets().size() == 6);
  check_against_oracle(p);
  check_facet_geometry(p);

  auto lat = FaceLattice::build(p);
  CHECK(lat.nodes().size() == 14);  // 1 + 6 + 6 + 1
  CHECK(lat.f_vector() == std::vector<int>({6, 6, 1}));

  // every node's exposing direction re-derives the node
  for (const auto& node : lat.nodes()) {
    if (!node.exposing) continue;
    auto sf = supporting_face(p, *node.exposing);
    CHECK(sf.vertex_ids == node.vertex_ids);
    CHECK(sf.dim == node.dim);
  }

  // maximal chain from any vertex passes through exactly one edge
  for (const auto& node : lat.nodes()) {
    if (node.dim != 0) continue;
    auto chain = lat.maximal_chain(node.id);
    REQUIRE(chain.size() == 3);
    CHECK(lat.nodes()[chain[0]].dim == 0);
    CHECK(lat.nodes()[chain[1]].dim == 1);
    CHECK(lat.nodes()[chain[2]].dim == 2);
  }

  // oracle face enumeration agrees with the lattice
  auto oracle_faces = oracles::brute_face_sets(p.vertices());
  std::set<std::vector<int>> engine_faces;
  for (const auto& node : lat.nodes()) engine_faces.insert(node.vertex_ids);
  CHECK(engine_faces == oracle_faces);

  // relative interior point of an edge is its midpoint
  for (const auto& node : lat.nodes()) {
    if (node.dim != 1) continue;
    VecE mid = relative_interior_point(p, node.vertex_ids);
    CHECK(p.contains(mid));
    auto fp = face_polytope(p, node.vertex_ids);
    CHECK(fp.contains(mid));
    CHECK(fp.dim() == 1);
  }
}

TEST_CASE("cube: full lattice against the oracle") {
  std::vector<VecE> pts;
  for (int x : {-1, 1})
    for (int y : {-1, 1})
      for (int z : {-1, 1}) pts.push_back(veci({x, y, z}));
  auto p = OrbitPolytope::hull(pts);
  CHECK(p.dim() == 3);
  CHECK(p.vertices().size() == 8);
  CHECK(p.facets().size() == 6);
  check_against_oracle(p);
  check_facet_geometry(p);

  auto lat = FaceLattice::build(p);
  CHECK(lat.f_vector() == std::vector<int>({8, 12, 6, 1}));
  CHECK(lat.nodes().size() == 28);

  auto oracle_faces = oracles::brute_face_sets(p.vertices());
  std::set<std::vector<int>> engine_faces;
  for (const auto& node : lat.nodes()) engine_faces.insert(node.vertex_ids);
  CHECK(engine_faces == oracle_faces);
}

TEST_CASE("permutation orbit of (4,2,1,0): classic 3-polytope") {
  auto p = OrbitPolytope::hull(perm_orbit4({4, 2, 1, 0}));
  CHECK(p.dim() == 3);
  CHECK(p.vertices().size() == 24);
  CHECK(p.facets().size() == 14);
  auto lat = FaceLattice::build(p);
  CHECK(lat.f_vector() == std::vector<int>({24, 36, 14, 1}));
  check_against_oracle(p);
  check_facet_geometry(p);
}

TEST_CASE("group action on faces: orbit classes") {
  // full symmetry group of the square acting on its face lattice
  auto g = FiniteMatrixGroup::from_generators(
      {MatE::from_rows({veci({0, -1}), veci({1, 0})}),
       MatE::from_rows({veci({1, 0}), veci({0, -1})})});
  auto p = OrbitPolytope::hull(square_points());
  auto lat = FaceLattice::build(p);
  auto perms = vertex_permutations(p, g.elements());
  auto orbits = face_orbits(lat, perms);
  CHECK(orbits.classes.size() == 3);  // vertices, edges, the square itself

  // the rotation subgroup gives the same classes here
  auto rot = FiniteMatrixGroup::from_generators(
      {MatE::from_rows({veci({0, -1}), veci({1, 0})})});
  auto orbits_rot = face_orbits(lat, vertex_permutations(p, rot.elements()));
  CHECK(orbits_rot.classes.size() == 3);

  // permutation group on the 4,2,1,0 orbit polytope: frozen class count
  std::vector<MatE> perm_mats;
  std::array<int, 4> idx = {0, 1, 2, 3};
  do {
    MatE m(4, 4);
    for (int r = 0; r < 4; ++r) m.at(r, idx[r]) = XQ(1);
    perm_mats.push_back(m);
  } while (std::next_permutation(idx.begin(), idx.end()));
  auto p4 = OrbitPolytope::hull(perm_orbit4({4, 2, 1, 0}));
  auto lat4 = FaceLattice::build(p4);
  auto orbits4 = face_orbits(lat4, vertex_permutations(p4, perm_mats));
  CHECK(orbits4.classes.size() == 8);  // 1 vertex class, 3 edge, 3 facet, P

  // a non-invariant map is rejected
  MatE bad = MatE::from_rows({veci({0, 1}), veci({1, 0})});
  auto p_asym = OrbitPolytope::hull(
      {veci({2, 0}), veci({0, 1}), veci({-2, 0}), veci({0, -1})});
  CHECK_THROWS_AS(vertex_permutations(p_asym, {bad}), ContractError);
}
