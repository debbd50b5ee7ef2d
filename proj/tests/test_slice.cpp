#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "orbitface/slice.hpp"
#include "oracles.hpp"

using namespace orbitface;

namespace {

InvariantBody segment_body() { return body_from_entry(make_schur_horn(2), 64); }
InvariantBody hexagon_body() { return body_from_entry(make_schur_horn(3), 48); }
InvariantBody polygon_body() { return body_from_entry(make_dihedral(8), 64); }

} // namespace

TEST_CASE("slice of a finite representation keeps the whole space") {
  InvariantBody b = polygon_body();
  const VecE u = b.restriction.vertices()[0];
  const SliceRep s = slice(b, u);
  CHECK(s.V1.is_full());
  CHECK(s.Sigma1.same_as(b.section.sigma));
  CHECK(s.G1.finite());
  // the vertex direction of a regular polygon is fixed by one reflection
  CHECK(s.G1.as_finite().order() >= 1);
  CHECK(s.invariance.verdict == Verdict::pass);
  CHECK(s.decomposition.verdict == Verdict::pass);
  CHECK(s.axioms.overall() == Verdict::pass);
  CHECK(s.overall() == Verdict::pass);
}

TEST_CASE("spectral 2x2 slice at the diagonal direction") {
  InvariantBody b = segment_body();
  const VecE u = b.restriction.vertices()[0];  // a regular diagonal point
  const SliceRep s = slice(b, u);
  CHECK(s.V1.dim() == 1);
  CHECK(s.Sigma1.same_as(s.V1));
  CHECK_FALSE(s.G1.finite());
  CHECK(s.G1.as_lie().algebra_dim() == 0);
  CHECK(s.decomposition.verdict == Verdict::pass);
  CHECK(s.axioms.overall() == Verdict::pass);
  CHECK(s.axioms.k == 0);
  CHECK(s.overall() == Verdict::pass);

  const AxiomCheck pr = verify_projection_restriction(s, 256);
  CHECK(pr.verdict == Verdict::pass);
  CHECK(pr.worst <= 1e-9);
}

TEST_CASE("spectral 3x3 slice at a regular diagonal point") {
  InvariantBody b = hexagon_body();
  const VecE u = b.restriction.vertices()[0];
  const SliceRep s = slice(b, u);
  // the commutant of a regular diagonal matrix is the diagonal subspace
  CHECK(s.V1.dim() == 2);
  CHECK(s.Sigma1.same_as(b.section.sigma));
  CHECK(s.G1.as_lie().algebra_dim() == 0);
  CHECK(s.overall() == Verdict::pass);
  CHECK(verify_projection_restriction(s, 256).verdict == Verdict::pass);
}

TEST_CASE("spectral 3x3 slice at an edge normal: one so(2) block survives") {
  InvariantBody b = hexagon_body();
  int edge = -1;
  for (int i = 0; i < int(b.lattice.nodes().size()); ++i)
    if (b.lattice.nodes()[i].dim == 1) edge = i;
  REQUIRE(edge >= 0);
  REQUIRE(b.lattice.nodes()[edge].exposing.has_value());
  const SliceRep s = slice(b, *b.lattice.nodes()[edge].exposing);
  CHECK(s.V1.dim() == 3);
  CHECK(s.Sigma1.dim() == 2);
  CHECK(s.G1.as_lie().algebra_dim() == 1);
  CHECK(s.invariance.verdict == Verdict::pass);
  CHECK(s.decomposition.verdict == Verdict::pass);
  // the restricted representation is a planar rotation plus a fixed line
  CHECK(s.axioms.overall() == Verdict::pass);
  CHECK(s.axioms.k == 0);
  CHECK(verify_projection_restriction(s, 256).verdict == Verdict::pass);
}

TEST_CASE("slice input validation") {
  InvariantBody b = segment_body();
  CHECK_THROWS_AS(slice(b, VecE{XQ(0)}), InputError);
  VecD off = VecD::Zero(b.ambient_dim());
  off[b.ambient_dim() - 1] = 1.0;  // the off-diagonal coordinate
  CHECK_THROWS_AS(slice(b, off), InputError);
  CHECK_THROWS_AS(slice(b, VecD::Zero(b.ambient_dim()).eval()), InputError);
}

TEST_CASE("float slice agrees with the exact one") {
  InvariantBody b = hexagon_body();
  const VecE u = b.restriction.vertices()[0];
  const SliceRep se = slice(b, u);
  const SliceRep sf = slice(b, to_float(b.to_ambient_exact(u)));
  CHECK(sf.V1.same_as(se.V1));
  CHECK(sf.Sigma1.same_as(se.Sigma1));
  CHECK(sf.G1.as_lie().algebra_dim() == se.G1.as_lie().algebra_dim());
  CHECK(sf.overall() == Verdict::pass);
}

TEST_CASE("chain reduction of the whole restriction is empty") {
  InvariantBody b = hexagon_body();
  const auto& top = b.lattice.top();
  const ChainReduction r =
      chain_reduce(b, PFace{top.vertex_ids, top.dim, top.exposing});
  CHECK(r.levels.empty());
  CHECK(r.k_dim == 3);  // K = G = the full rotation model
  CHECK(r.containment.verdict == Verdict::pass);
  CHECK(r.overall() == Verdict::pass);
  CHECK_FALSE(r.note.empty());
}

TEST_CASE("spectral 2x2 endpoint reduces in one step") {
  InvariantBody b = segment_body();
  const int nid = b.lattice.find({0});
  REQUIRE(nid >= 0);
  const auto& node = b.lattice.nodes()[nid];
  const ChainReduction r = chain_reduce(b, PFace{node.vertex_ids, node.dim,
                                                 node.exposing});
  REQUIRE(r.levels.size() == 1);
  const ChainLevel& l = r.levels.front();
  CHECK_FALSE(l.projected);
  CHECK(l.rep.V1.dim() == 1);
  CHECK(l.rep.Sigma1.dim() == 1);
  CHECK(l.argmax.verdict == Verdict::pass);
  CHECK(l.refinement.verdict == Verdict::pass);
  CHECK(l.nesting.verdict == Verdict::pass);
  CHECK(l.face_in_slice.verdict == Verdict::pass);
  CHECK(l.proj_restrict.verdict == Verdict::pass);
  CHECK(r.k_dim == 0);
  CHECK(r.containment.verdict == Verdict::pass);
  CHECK(r.overall() == Verdict::pass);
}

TEST_CASE("spectral 3x3 vertex reduces through the edge level") {
  InvariantBody b = hexagon_body();
  const int nid = b.lattice.find({0});
  REQUIRE(nid >= 0);
  const auto& node = b.lattice.nodes()[nid];
  const ChainReduction r = chain_reduce(b, PFace{node.vertex_ids, node.dim,
                                                 node.exposing});
  REQUIRE(r.levels.size() == 2);  // hexagon -> edge -> vertex
  CHECK(r.levels[0].q.dim == 1);
  CHECK(r.levels[1].q.dim == 0);
  CHECK(r.levels[0].rep.V1.dim() == 3);
  CHECK(r.levels[0].rep.G1.as_lie().algebra_dim() == 1);
  CHECK(r.levels[1].rep.V1.dim() == 2);
  CHECK(r.levels[1].rep.G1.as_lie().algebra_dim() == 0);
  for (const ChainLevel& l : r.levels) {
    CHECK(l.argmax.verdict == Verdict::pass);
    CHECK(l.refinement.verdict == Verdict::pass);
    CHECK(l.nesting.verdict == Verdict::pass);
    CHECK(l.face_in_slice.verdict == Verdict::pass);
    CHECK(l.proj_restrict.verdict == Verdict::pass);
    CHECK(l.proj_restrict.worst <= 1e-9);
    CHECK(l.rep.overall() == Verdict::pass);
  }
  CHECK(r.k_dim == 0);
  CHECK(r.containment.verdict == Verdict::pass);
  CHECK(r.overall() == Verdict::pass);
}

TEST_CASE("polygon vertex reduces with exact finite stabilizers") {
  InvariantBody b = polygon_body();
  const int nid = b.lattice.find({0});
  REQUIRE(nid >= 0);
  const auto& node = b.lattice.nodes()[nid];
  const ChainReduction r = chain_reduce(b, PFace{node.vertex_ids, node.dim,
                                                 node.exposing});
  REQUIRE(r.levels.size() == 2);  // polygon -> edge -> vertex
  for (const ChainLevel& l : r.levels) {
    CHECK(l.rep.V1.is_full());
    CHECK(l.rep.G1.finite());
    CHECK(l.argmax.verdict == Verdict::pass);
    CHECK(l.refinement.verdict == Verdict::pass);
    CHECK(l.rep.overall() == Verdict::pass);
  }
  CHECK(r.k_order >= 1);
  CHECK(r.containment.verdict == Verdict::pass);
  CHECK(r.overall() == Verdict::pass);
}

TEST_CASE("chain reduction input validation") {
  InvariantBody b = segment_body();
  CHECK_THROWS_AS(chain_reduce(b, PFace{}), InputError);
  CHECK_THROWS_AS(chain_reduce(b, PFace{{0, 7}, 1, std::nullopt}), InputError);
}

TEST_CASE("chain transcripts are deterministic") {
  InvariantBody b = hexagon_body();
  const int nid = b.lattice.find({0});
  REQUIRE(nid >= 0);
  const auto& node = b.lattice.nodes()[nid];
  const PFace q{node.vertex_ids, node.dim, node.exposing};
  const std::string a = json_of(chain_reduce(b, q)).dump();
  const std::string c = json_of(chain_reduce(b, q)).dump();
  CHECK(a == c);
  CHECK(a.find("\"levels\"") != std::string::npos);
  CHECK(a.find("\"containment\"") != std::string::npos);
}
