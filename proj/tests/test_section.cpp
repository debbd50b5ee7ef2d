#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "orbitface/jsonio.hpp"
#include "orbitface/registry.hpp"
#include "orbitface/section.hpp"
#include "oracles.hpp"

#include <filesystem>

using namespace orbitface;
using oracles::veci;

namespace {

LieGroupModel so3() {
  MatD a = MatD::Zero(3, 3), b = MatD::Zero(3, 3), c = MatD::Zero(3, 3);
  a(0, 1) = -1; a(1, 0) = 1;
  b(0, 2) = -1; b(2, 0) = 1;
  c(1, 2) = -1; c(2, 1) = 1;
  return LieGroupModel(3, {a, b, c});
}

MatE perm3(const std::array<int, 3>& img) {
  MatE m(3, 3);
  for (int j = 0; j < 3; ++j) m.at(img[j], j) = XQ(1);
  return m;
}

} // namespace

TEST_CASE("exact square roots inside the field") {
  CHECK(*xq_sqrt(XQ(4)) == XQ(2));
  CHECK(*xq_sqrt(XQ(2)) == xq_sqrt2());
  CHECK(*xq_sqrt(XQ(12)) == XQ(2) * xq_sqrt3());
  CHECK(*xq_sqrt(XQ(Rat(9, 2))) == XQ(Rat(3, 2)) * xq_sqrt2());
  XQ v = XQ(3) + XQ(2) * xq_sqrt2();  // (1 + sqrt2)^2
  CHECK(*xq_sqrt(v) == XQ(1) + xq_sqrt2());
  CHECK(!xq_sqrt(XQ(5)).has_value());
  CHECK(!xq_sqrt(-XQ(4)).has_value());
  CHECK(!xq_sqrt(xq_sqrt2() + xq_sqrt3()).has_value());
}

TEST_CASE("exact orthonormalization when norms stay in the field") {
  auto s = SubspaceE::span(MatE::from_cols({veci({1, 1, 0}), veci({1, 0, 1})}));
  auto b = orthonormalize_exact(s);
  REQUIRE(b.has_value());
  CHECK(b->cols() == 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(dot(b->col(i), b->col(j)) == (i == j ? XQ(1) : XQ(0)));

  // norm^2 = 5 has no root in the field
  auto bad = orthonormalize_exact(
      SubspaceE::span(MatE::from_cols({veci({1, 2, 0})})));
  CHECK(!bad.has_value());
}

TEST_CASE("rot2: all axioms pass with k = 0 and W of order 2") {
  RegistryEntry e = make_rot2();
  AxiomReport rep = check_axioms(e.candidate, 64);
  CHECK(rep.a.verdict == Verdict::pass);
  CHECK(rep.b.verdict == Verdict::pass);
  CHECK(rep.c.verdict == Verdict::pass);
  CHECK(rep.overall() == Verdict::pass);
  CHECK(rep.k == 0);
  CHECK(rep.principal_orbit_dim == 1);

  Rng rng(kDefaultSeed);
  FatWeylGroup w = fat_weyl_group(e.candidate, rep, rng);
  CHECK(w.finite);
  CHECK(w.order() == 2);
  CHECK(w.normalizer_algebra_dim == 0);
  // the two elements act as +1 and -1 on the axis
  std::vector<XQ> entries;
  for (const MatE& m : w.action->elements()) entries.push_back(m.at(0, 0));
  std::sort(entries.begin(), entries.end());
  CHECK(entries[0] == XQ(-1));
  CHECK(entries[1] == XQ(1));

  VecD x(2);
  x << 2, 0;
  auto slice = weyl_orbit_equals_section_slice(e.candidate, w, x, 32, rng);
  CHECK(slice.verdict == Verdict::pass);
  CHECK(slice.weyl_side == 2);
  CHECK(slice.section_side == 2);
}

TEST_CASE("zero section fails the meets-all-orbits axiom") {
  MatD x(2, 2);
  x << 0, -1, 1, 0;
  auto cand = SectionCandidate::make(GroupModel{LieGroupModel(2, {x})},
                                     SubspaceE(2), "zero-section");
  Rng rng(kDefaultSeed);
  AxiomCheck a = check_axiom_a(cand, 16, rng);
  CHECK(a.verdict == Verdict::fail);
  CHECK(a.worst > 0.3);
  CHECK(!a.witness.empty());
}

TEST_CASE("sigma = V passes trivially; W of so(2) on the full plane is a circle") {
  MatD x(2, 2);
  x << 0, -1, 1, 0;
  auto cand = SectionCandidate::make(GroupModel{LieGroupModel(2, {x})},
                                     SubspaceE::full(2), "trivial");
  AxiomReport rep = check_axioms(cand, 48);
  CHECK(rep.overall() == Verdict::pass);
  CHECK(rep.k == 1);  // dim sigma - dim nu_p = 2 - 1 on the trivial section

  Rng rng(kDefaultSeed);
  FatWeylGroup w = fat_weyl_group(cand, rep, rng);
  CHECK(!w.finite);
  CHECK(w.normalizer_algebra_dim == 1);
  CHECK(!w.action_float().empty());
  for (const MatD& m : w.action_float())
    CHECK((m.transpose() * m - MatD::Identity(2, 2)).norm() <= 1e-6);
}

TEST_CASE("dihedral-4 on its trivial section: W is the group itself") {
  RegistryEntry e = make_dihedral(4);
  AxiomReport rep = check_axioms(e.candidate, 32);
  CHECK(rep.overall() == Verdict::pass);
  CHECK(rep.k == 0);

  Rng rng(kDefaultSeed);
  FatWeylGroup w = fat_weyl_group(e.candidate, rep, rng);
  CHECK(w.finite);
  CHECK(w.order() == 8);

  auto slice = weyl_orbit_equals_section_slice(e.candidate, w, veci({1, 0}));
  CHECK(slice.verdict == Verdict::pass);
  CHECK(slice.weyl_side == 4);
  CHECK(slice.section_side == 4);
}

TEST_CASE("dihedral-4 with the x-axis: returns preserve the axis, quotient is +/-1") {
  auto d4 = builtin_entry("dihedral-4");
  auto cand = SectionCandidate::make(d4.candidate.group,
                                     SubspaceE::coordinate_span(2, {0}),
                                     "d4-axis");
  Rng rng(kDefaultSeed);

  // not a fat section (generic orbits miss the axis) ...
  AxiomCheck a = check_axiom_a(cand, 16, rng);
  CHECK(a.verdict == Verdict::fail);
  // ... but the return axiom holds: four elements bring (1,0) back
  AxiomCheck c = check_axiom_c(cand, 16, rng);
  CHECK(c.verdict == Verdict::pass);
  CHECK(c.samples >= 4);

  FatWeylGroup w = fat_weyl_group_unchecked(cand, rng);
  CHECK(w.finite);
  CHECK(w.order() == 2);
  auto slice = weyl_orbit_equals_section_slice(cand, w, veci({2, 0}));
  CHECK(slice.verdict == Verdict::pass);
  CHECK(slice.weyl_side == 2);   // {(2,0), (-2,0)}
  CHECK(slice.section_side == 2);

  // the axiom gate refuses to build W from a failing report
  AxiomReport rep = check_axioms(cand, 16);
  CHECK(rep.overall() == Verdict::fail);
  CHECK_THROWS_AS(fat_weyl_group(cand, rep, rng), ContractError);
}

TEST_CASE("permutations of three coordinates with a line section") {
  auto g = GroupModel{FiniteMatrixGroup::from_generators(
      {perm3({1, 0, 2}), perm3({1, 2, 0})})};
  CHECK(g.as_finite().order() == 6);
  auto cand = SectionCandidate::make(g, SubspaceE::coordinate_span(3, {0}),
                                     "s3-line");
  Rng rng(kDefaultSeed);
  // only the transposition fixing e1 returns points of the line, and it
  // preserves the line
  AxiomCheck c = check_axiom_c(cand, 16, rng);
  CHECK(c.verdict == Verdict::pass);
  CHECK(c.samples >= 2);
}

TEST_CASE("a plane through the sphere passes A and B but fails C") {
  // Returns exist in abundance (any rotation about a section point), and most
  // of them tilt the plane: exactly what axiom C rules out.
  auto cand = SectionCandidate::make(GroupModel{so3()},
                                     SubspaceE::coordinate_span(3, {0, 2}),
                                     "sphere-plane");
  AxiomReport rep = check_axioms(cand, 48);
  CHECK(rep.a.verdict == Verdict::pass);
  CHECK(rep.b.verdict == Verdict::pass);
  CHECK(rep.k == 1);
  CHECK(rep.c.verdict == Verdict::fail);
  CHECK(!rep.c.witness.empty());
  CHECK(rep.overall() == Verdict::fail);
}

TEST_CASE("schur-horn-3: polar, k = 0, W snaps to the six permutations") {
  RegistryEntry e = make_schur_horn(3);
  CHECK(e.candidate.group.ambient_dim() == 5);

  AxiomReport rep = check_axioms(e.candidate, 48);
  CHECK(rep.overall() == Verdict::pass);
  CHECK(rep.k == 0);
  CHECK(rep.principal_orbit_dim == 3);

  // the normal space at the base spectrum is the diagonal subspace itself
  const VecD p = e.base_points[0];
  SubspaceD nu = e.candidate.group.orbit_normal(p);
  CHECK(nu.dim() == 2);
  CHECK(nu.same_as(e.candidate.sigma, 1e-8));

  Rng rng(kDefaultSeed);
  FatWeylGroup w = fat_weyl_group(e.candidate, rep, rng);
  CHECK(w.finite);
  CHECK(w.order() == 6);
  CHECK(w.normalizer_algebra_dim == 0);

  // W-orbit of the base point has six exact images; the sampled slice agrees
  const VecE coords = w.coords_exact(e.base_points_exact[0]);
  CHECK(int(coords.size()) == 2);
  CHECK(w.orbit_ambient(e.base_points_exact[0]).size() == 6);
  auto slice = weyl_orbit_equals_section_slice(e.candidate, w, p, 48, rng);
  CHECK(slice.verdict == Verdict::pass);
  CHECK(slice.weyl_side == 6);
  CHECK(slice.section_side == 6);
}

TEST_CASE("schur-horn-2: W swaps the two diagonal values") {
  RegistryEntry e = make_schur_horn(2);
  AxiomReport rep = check_axioms(e.candidate, 32);
  CHECK(rep.overall() == Verdict::pass);
  CHECK(rep.k == 0);
  Rng rng(kDefaultSeed);
  FatWeylGroup w = fat_weyl_group(e.candidate, rep, rng);
  CHECK(w.finite);
  CHECK(w.order() == 2);
}

TEST_CASE("so3 vector pairs: k = 1 and a positive-dimensional W") {
  RegistryEntry e = make_so3_vector_pairs();
  CHECK(!e.enabled);
  AxiomReport rep = check_axioms(e.candidate, 24);
  CHECK(rep.overall() == Verdict::pass);
  CHECK(rep.k == 1);
  CHECK(rep.principal_orbit_dim == 3);

  Rng rng(kDefaultSeed);
  FatWeylGroup w = fat_weyl_group(e.candidate, rep, rng);
  CHECK(!w.finite);
  CHECK(w.normalizer_algebra_dim == 1);
  CHECK(!w.action_float().empty());
}

TEST_CASE("registry files round-trip and gate on the axioms") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "orbitface-registry-test";
  fs::remove_all(dir);
  write_default_registry(dir.string());

  for (const std::string& name : builtin_entry_names())
    CHECK(fs::exists(dir / (name + ".json")));

  LoadedEntry rot2 = load_entry("rot2", dir.string(), 32);
  CHECK(rot2.entry.name == "rot2");
  CHECK(rot2.report.overall() == Verdict::pass);
  CHECK(rot2.report.k == 0);
  CHECK(rot2.entry.expected.k == 0);
  CHECK(rot2.entry.expected.weyl_order == 2);

  LoadedEntry pairs = load_entry("so3-vector-pairs", dir.string(), 24);
  CHECK(!pairs.entry.enabled);

  CHECK_THROWS_AS(load_entry("nope", dir.string()), InputError);

  // a candidate whose axioms fail is rejected at load
  Json bad;
  bad["name"] = "bad-axis";
  bad["group"] = json_of(builtin_entry("dihedral-4").candidate.group);
  bad["section"] = Json{{"coords", Json::array({0})}};
  bad["base_points"] = Json::array({Json::array({1, 0})});
  write_json_file((dir / "bad-axis.json").string(), bad);
  CHECK_THROWS_AS(load_entry("bad-axis", dir.string(), 16), ContractError);

  fs::remove_all(dir);
}

TEST_CASE("axiom reports are deterministic and JSON-stable") {
  RegistryEntry e = make_rot2();
  AxiomReport r1 = check_axioms(e.candidate, 32, 7);
  AxiomReport r2 = check_axioms(e.candidate, 32, 7);
  CHECK(json_of(r1).dump() == json_of(r2).dump());
  Json j = json_of(r1);
  CHECK(j.at("overall") == "pass");
  CHECK(j.at("k") == 0);
  CHECK(j.at("seed") == 7);
}
