#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "orbitface/group.hpp"
#include "oracles.hpp"

using namespace orbitface;
using oracles::veci;

namespace {

MatE rot90() {
  return MatE::from_rows({veci({0, -1}), veci({1, 0})});
}

MatE mirror_x() {
  return MatE::from_rows({veci({1, 0}), veci({0, -1})});
}

MatE rot45() {
  XQ c = xq_sqrt2() * xq_half();
  return MatE::from_rows({VecE{c, -c}, VecE{c, c}});
}

} // namespace

TEST_CASE("dihedral closure, orbits, stabilizers") {
  auto g = FiniteMatrixGroup::from_generators({rot90(), mirror_x()});
  CHECK(g.order() == 8);
  CHECK(g.elements()[g.identity_index()] == MatE::identity(2));

  auto axis_orbit = g.orbit(veci({1, 0}));
  CHECK(axis_orbit.size() == 4);
  auto generic_orbit = g.orbit(veci({2, 1}));
  CHECK(generic_orbit.size() == 8);

  CHECK(g.stabilizer(veci({1, 0})).order() == 2);
  CHECK(g.stabilizer(veci({2, 1})).order() == 1);
  CHECK(g.pointwise_stabilizer(SubspaceE::full(2)).order() == 1);
  CHECK(g.setwise_stabilizer(SubspaceE::coordinate_span(2, {0})).order() == 4);

  // element lookup
  CHECK(g.element_index(rot90()) >= 0);
  CHECK(g.element_index(rot45()) == -1);
}

TEST_CASE("order-16 dihedral group with irrational entries") {
  auto g = FiniteMatrixGroup::from_generators({rot45(), mirror_x()});
  CHECK(g.order() == 16);
  auto orbit = g.orbit(veci({1, 0}));
  CHECK(orbit.size() == 8);  // vertices of the regular octagon
  for (const auto& v : orbit) CHECK(norm2(v) == XQ(1));
}

TEST_CASE("non-orthogonal generators are rejected") {
  MatE shear = MatE::from_rows({veci({1, 1}), veci({0, 1})});
  CHECK_THROWS_AS(FiniteMatrixGroup::from_generators({shear}), ContractError);
}

TEST_CASE("closure cap triggers on infinite groups") {
  // Pythagorean rotation (3/5, 4/5) has infinite order.
  MatE r = MatE::from_rows({oracles::vec({"3/5", "-4/5"}),
                            oracles::vec({"4/5", "3/5"})});
  CHECK_THROWS_AS(FiniteMatrixGroup::from_generators({r}, 500), CapError);
}

TEST_CASE("lie model: so(2) acting on the plane") {
  MatD x(2, 2);
  x << 0, -1, 1, 0;
  LieGroupModel g(2, {x});
  CHECK(g.algebra_dim() == 1);

  VecD p(2);
  p << 1, 0;
  CHECK(g.orbit_dim(p) == 1);
  CHECK(g.orbit_normal(p).dim() == 1);
  CHECK(g.orbit_normal(p).contains(p));
  CHECK(g.orbit_dim(VecD::Zero(2)) == 0);

  Rng rng(kDefaultSeed);
  CHECK(g.principal_orbit_dim(rng) == 1);

  // sampled elements stay orthogonal to the pinned exp tolerance
  for (int i = 0; i < 32; ++i) {
    MatD e = g.sample_element(rng);
    CHECK((e.transpose() * e - MatD::Identity(2, 2)).lpNorm<Eigen::Infinity>() <=
          1e-12);
  }

  // orbit samples keep the invariant norm
  std::vector<VecD> orbit = g.sample_orbit(p, 64, rng);
  for (const auto& y : orbit) CHECK(y.norm() == doctest::Approx(1.0).epsilon(1e-12));

  CHECK(g.stabilizer_algebra(p).algebra_dim() == 0);
  CHECK(g.stabilizer_algebra(VecD::Zero(2)).algebra_dim() == 1);
}

TEST_CASE("lie model: so(3) acting on space") {
  MatD a = MatD::Zero(3, 3), b = MatD::Zero(3, 3), c = MatD::Zero(3, 3);
  a(0, 1) = -1; a(1, 0) = 1;
  b(0, 2) = -1; b(2, 0) = 1;
  c(1, 2) = -1; c(2, 1) = 1;
  LieGroupModel g(3, {a, b, c});

  VecD north(3);
  north << 0, 0, 1;
  CHECK(g.orbit_dim(north) == 2);
  CHECK(g.stabilizer_algebra(north).algebra_dim() == 1);
  CHECK(g.orbit_normal(north).dim() == 1);

  Rng rng(kDefaultSeed);
  CHECK(g.principal_orbit_dim(rng) == 2);

  SubspaceD z_axis = SubspaceD::coordinate_span(3, {2});
  CHECK(g.pointwise_stabilizer(z_axis).algebra_dim() == 1);
  CHECK(g.subspace_preserving(z_axis).algebra_dim() == 1);

  // dependent algebra input is rejected
  CHECK_THROWS_AS(LieGroupModel(3, {a, b, MatD(a + b)}), ContractError);
  MatD sym = MatD::Identity(3, 3);
  CHECK_THROWS_AS(LieGroupModel(3, {sym}), ContractError);
}

TEST_CASE("group model handle dispatches by kind") {
  GroupModel finite(FiniteMatrixGroup::from_generators({rot90()}));
  CHECK(finite.finite());
  CHECK(finite.ambient_dim() == 2);
  CHECK(finite.orbit_dim(VecD::Ones(2)) == 0);
  CHECK(finite.orbit_normal(VecD::Ones(2)).is_full());
  CHECK_THROWS_AS(finite.as_lie(), ContractError);

  MatD x(2, 2);
  x << 0, -1, 1, 0;
  GroupModel lie((LieGroupModel(2, {x})));
  CHECK_FALSE(lie.finite());
  CHECK_THROWS_AS(lie.as_finite(), ContractError);

  Rng rng(kDefaultSeed);
  auto samples = finite.orbit_samples(VecD::Ones(2), 16, rng);
  CHECK(samples.size() == 4);  // whole orbit of the finite group
  auto lie_samples = lie.orbit_samples(VecD::Ones(2), 16, rng);
  CHECK(lie_samples.size() == 16);
}
