#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "orbitface/correspond.hpp"
#include "oracles.hpp"

using namespace orbitface;
using doctest::Approx;

namespace {

InvariantBody disk_body() { return body_from_entry(make_schur_horn(2), 64); }
InvariantBody hexagon_body() { return body_from_entry(make_schur_horn(3), 48); }

} // namespace

TEST_CASE("spectral 2x2: two face classes, point lift and full lift") {
  InvariantBody b = disk_body();
  Rng rng(kDefaultSeed);
  auto classes = face_orbit_classes(b, 12, rng);
  REQUIRE(classes.size() == 2);

  CHECK(classes[0].q.dim == 0);
  CHECK(classes[0].orbit_size == 2);
  CHECK(classes[0].invariants.vertex_norms2 == std::vector<XQ>{XQ(2)});
  // the lift of a spectral vertex is a single matrix
  CHECK(classes[0].invariants.lift_dim == 0);
  CHECK(classes[0].invariants.lift_min_norm == Approx(std::sqrt(2.0)));
  CHECK(classes[0].invariants.lift_max_norm == Approx(std::sqrt(2.0)));

  CHECK(classes[1].q.dim == 1);
  CHECK(classes[1].orbit_size == 1);
  // the full body is the disk: two-dimensional
  CHECK(classes[1].invariants.lift_dim == 2);
}

TEST_CASE("the lift of a spectral vertex contains only that matrix") {
  InvariantBody b = disk_body();
  Rng rng(kDefaultSeed);
  const LiftedFace f = lift_face(b, std::vector<int>{0});
  const VecD vertex = b.to_ambient(to_float(b.restriction.vertices()[0]));

  for (const VecD& z : sample_lifted(b, f, 16, rng))
    CHECK((z - vertex).norm() <= 1e-6);

  CHECK(lifted_member(b, f, vertex, rng) == Verdict::pass);
  // the antipodal vertex lies in E but projects onto the other face
  CHECK(lifted_member(b, f, -vertex, rng) == Verdict::fail);
  // scaling out of the disk leaves E entirely
  CHECK(lifted_member(b, f, 1.5 * vertex, rng) == Verdict::fail);
}

TEST_CASE("exposed lifts push back onto their face") {
  InvariantBody b = disk_body();
  const LiftedFace f = exposed_lift(b, oracles::veci({1}));
  REQUIRE(f.q.dim == 0);
  CHECK(push_face(b, f).vertex_ids == f.q.vertex_ids);

  CHECK_THROWS_AS(exposed_lift(b, oracles::veci({0})), InputError);
  // the improper face carries no exposing vector, so it cannot be pushed
  std::vector<int> all{0, 1};
  CHECK_THROWS_AS(push_face(b, lift_face(b, all)), InputError);
  CHECK_THROWS_AS(lift_face(b, std::vector<int>{}), InputError);
}

TEST_CASE("hexagon: four face classes with separating invariants") {
  InvariantBody b = hexagon_body();
  Rng rng(kDefaultSeed);
  auto classes = face_orbit_classes(b, 10, rng);
  REQUIRE(classes.size() == 4);

  std::multiset<int> sizes, dims;
  for (const auto& c : classes) {
    sizes.insert(c.orbit_size);
    dims.insert(c.q.dim);
  }
  CHECK(sizes == std::multiset<int>{1, 3, 3, 6});
  CHECK(dims == std::multiset<int>{0, 1, 1, 2});

  // the two edge classes are congruent (an ambient isometry outside the
  // group swaps them), so every intrinsic invariant agrees; they stay
  // distinct classes because no group element carries one onto the other
  std::vector<const CorrespondenceRecord*> edges;
  for (const auto& c : classes)
    if (c.q.dim == 1) edges.push_back(&c);
  REQUIRE(edges.size() == 2);
  CHECK(edges[0]->invariants.vertex_norms2 == edges[1]->invariants.vertex_norms2);
  CHECK(edges[0]->invariants.gram_entries == edges[1]->invariants.gram_entries);
  CHECK(edges[0]->node_id != edges[1]->node_id);

  // every proper class carries an exposing certificate
  for (const auto& c : classes)
    if (c.q.dim < b.restriction.dim()) CHECK(c.exposing.has_value());
}

TEST_CASE("orbit bijection evidence on the hexagon") {
  InvariantBody b = hexagon_body();
  Rng rng(kDefaultSeed);
  const BijectionReport rep = verify_orbit_bijection(b, 40, rng);
  CHECK(rep.classes == 4);
  CHECK(rep.injectivity == Verdict::pass);
  CHECK(rep.inclusion == Verdict::pass);
  CHECK(rep.surjectivity == Verdict::pass);
  CHECK(rep.directions_matched == 40);
  CHECK(rep.overall() == Verdict::pass);
}

TEST_CASE("exposedness certificates on the spectral segment") {
  InvariantBody b = disk_body();
  Rng rng(kDefaultSeed);
  const ExposednessReport rep = exposedness_transfer(b, 1500, rng);
  CHECK(rep.overall == Verdict::pass);
  REQUIRE(rep.classes.size() == 2);
  for (const auto& ec : rep.classes) {
    CHECK(ec.verdict == Verdict::pass);
    CHECK(ec.attained > 0);
  }
}

TEST_CASE("containment probe on the spectral vertex: equality holds") {
  InvariantBody b = disk_body();
  Rng rng(kDefaultSeed);
  const int nid = b.lattice.find({0});
  REQUIRE(nid >= 0);
  PFace q{b.lattice.nodes()[nid].vertex_ids, b.lattice.nodes()[nid].dim,
          b.lattice.nodes()[nid].exposing};
  const ConjectureReport rep = conjecture_probe(b, q, 32, rng);
  CHECK(rep.forward == Verdict::pass);
  CHECK(rep.reverse == Verdict::pass);
  // Q-perp is the whole section, and nothing in so(2) fixes it pointwise
  CHECK(rep.stabilizer_dim == 0);
}

TEST_CASE("containment probe on a hexagon edge: the polar equality") {
  InvariantBody b = hexagon_body();
  Rng rng(kDefaultSeed);
  auto classes = face_orbit_classes(b, 0, rng);
  for (const auto& c : classes) {
    if (c.q.dim != 1) continue;
    const ConjectureReport rep = conjecture_probe(b, c.q, 24, rng);
    CHECK(rep.forward == Verdict::pass);
    CHECK(rep.reverse == Verdict::pass);
    // block rotations fixing the edge's normal line survive in the stabilizer
    CHECK(rep.stabilizer_dim == 1);
  }
}

TEST_CASE("containment probe on the whole body is the invariance statement") {
  InvariantBody b = disk_body();
  Rng rng(kDefaultSeed);
  auto classes = face_orbit_classes(b, 0, rng);
  const ConjectureReport rep = conjecture_probe(b, classes.back().q, 24, rng);
  CHECK(rep.forward == Verdict::pass);
  CHECK(rep.reverse == Verdict::pass);
  CHECK(rep.stabilizer_dim == 1);  // all of so(2)
}

TEST_CASE("trivial section: classes equal the direct lattice orbit partition") {
  InvariantBody b = body_from_entry(builtin_entry("dihedral-8"), 32);
  Rng rng(kDefaultSeed);
  auto classes = face_orbit_classes(b, 0, rng);

  // oracle: partition the brute-force face sets by the exact group action
  const auto& verts = b.restriction.vertices();
  auto face_sets = oracles::brute_face_sets(verts);
  std::map<VecE, int> vert_id;
  for (std::size_t i = 0; i < verts.size(); ++i) vert_id[verts[i]] = int(i);
  std::set<std::vector<int>> remaining(face_sets.begin(), face_sets.end());
  remaining.erase(std::vector<int>{});
  int oracle_classes = 0;
  std::multiset<std::size_t> oracle_sizes;
  while (!remaining.empty()) {
    std::set<std::vector<int>> orbit;
    std::vector<std::vector<int>> frontier{*remaining.begin()};
    orbit.insert(frontier[0]);
    while (!frontier.empty()) {
      auto cur = frontier.back();
      frontier.pop_back();
      for (const MatE& g : b.section.group.as_finite().elements()) {
        std::vector<int> img;
        for (int id : cur) img.push_back(vert_id.at(mul(g, verts[id])));
        std::sort(img.begin(), img.end());
        if (orbit.insert(img).second) frontier.push_back(img);
      }
    }
    for (const auto& fs : orbit) remaining.erase(fs);
    ++oracle_classes;
    oracle_sizes.insert(orbit.size());
  }
  CHECK(int(classes.size()) == oracle_classes);
  std::multiset<std::size_t> got;
  for (const auto& c : classes) got.insert(std::size_t(c.orbit_size));
  CHECK(got == oracle_sizes);
}

TEST_CASE("correspondence records serialize deterministically") {
  InvariantBody b = disk_body();
  Rng r1(7), r2(7);
  auto c1 = face_orbit_classes(b, 8, r1);
  auto c2 = face_orbit_classes(b, 8, r2);
  REQUIRE(c1.size() == c2.size());
  for (std::size_t i = 0; i < c1.size(); ++i)
    CHECK(json_of(c1[i]).dump() == json_of(c2[i]).dump());

  const Json j = json_of(c1[0]);
  CHECK(j.contains("class_id"));
  CHECK(j.at("Q").contains("vertex_ids"));
  CHECK(j.contains("orbit_size"));
  CHECK(j.at("invariants").contains("vertex_norms2"));
  CHECK(j.contains("exposing_vector"));
}
