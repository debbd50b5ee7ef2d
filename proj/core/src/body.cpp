#include "orbitface/body.hpp"

#include <algorithm>
#include <set>

#include "orbitface/descent.hpp"

namespace orbitface {

namespace {

std::vector<VecE> saturate(const FatWeylGroup& w, const SectionCandidate& sec,
                           const std::vector<VecE>& gens) {
  if (!w.finite || !w.action || !w.basis)
    throw ContractError(
        "restriction requires a finite fat Weyl group with exact action");
  std::set<std::vector<XQ>> seen;
  std::vector<VecE> coords;
  for (const VecE& g : gens) {
    VecE in_sigma = g;
    if (sec.group.finite()) {
      if (!sec.sigma_exact)
        throw ContractError("finite-group body needs an exact section");
      auto hit = descend_to_section_exact(sec.group.as_finite(),
                                          *sec.sigma_exact, g);
      if (!hit)
        throw InputError("generator orbit misses the section");
      in_sigma = hit->point;
    } else if (!sec.sigma_exact || !sec.sigma_exact->contains(in_sigma)) {
      // No exact descent exists along a Lie orbit: demand the data up front.
      throw InputError("Lie-model generators must be given inside the section");
    }
    for (const VecE& y : w.orbit_ambient(in_sigma)) {
      VecE c = w.coords_exact(y);
      std::vector<XQ> key(c.begin(), c.end());
      if (seen.insert(std::move(key)).second) coords.push_back(std::move(c));
    }
  }
  return coords;
}

} // namespace

InvariantBody make_body(const SectionCandidate& section,
                        const AxiomReport& report, FatWeylGroup weyl,
                        const std::vector<VecE>& generators) {
  if (generators.empty()) throw InputError("a body needs at least one generator");
  std::vector<VecE> coords = saturate(weyl, section, generators);
  OrbitPolytope p = OrbitPolytope::hull(coords);
  FaceLattice lattice = FaceLattice::build(p);
  // Throws unless every W element permutes the vertex set: P must be
  // W-invariant for the face correspondence to mean anything.
  auto perms = vertex_permutations(p, weyl.action->elements());
  return InvariantBody{section,       report,
                       std::move(weyl), std::move(p),
                       std::move(lattice), std::move(perms),
                       generators};
}

InvariantBody body_from_entry(const RegistryEntry& e, int n_samples,
                              std::uint64_t seed) {
  if (e.base_points_exact.empty())
    throw InputError("entry '" + e.name + "' carries no exact base points");
  AxiomReport rep = check_axioms(e.candidate, n_samples, seed);
  Rng rng(seed);
  FatWeylGroup w = fat_weyl_group(e.candidate, rep, rng);
  return make_body(e.candidate, rep, std::move(w), e.base_points_exact);
}

Membership membership_E(const InvariantBody& b, const VecD& x, Rng& rng) {
  Membership out;
  DescentConfig cfg;
  const DescentResult r = descend_to_section(
      b.section.group, b.section.sigma.projector(), x, cfg, rng);
  out.residual = r.residual;
  out.section_point = r.point;
  const double scale = 1.0 + x.norm();
  if (!r.converged && r.residual > kMembershipTol * scale) {
    // Could be a point off E or a failed descent; only the finite
    // (exhaustive) path may call a miss definite.
    out.verdict = b.section.group.finite() ? Verdict::fail
                                           : Verdict::indeterminate;
    return out;
  }
  out.verdict = b.restriction.contains_float(b.to_coords(r.point),
                                             kMembershipTol * scale)
                    ? Verdict::pass
                    : Verdict::fail;
  return out;
}

VecD sample_P(const InvariantBody& b, Rng& rng) {
  const auto& verts = b.restriction.vertices();
  std::vector<int> ids;
  if (rng.uniform() < 0.5) {
    ids.resize(verts.size());
    for (std::size_t i = 0; i < verts.size(); ++i) ids[i] = int(i);
  } else {
    const auto& nodes = b.lattice.nodes();
    // nodes.front() is the empty face; any other stratum is fair game
    const int pick = 1 + int(rng.index(nodes.size() - 1));
    ids = nodes[pick].vertex_ids;
  }
  VecD pt = VecD::Zero(b.restriction.ambient_dim());
  double total = 0;
  for (int id : ids) {
    const double wgt = -std::log(1.0 - rng.uniform());
    pt += wgt * to_float(verts[id]);
    total += wgt;
  }
  return pt / total;
}

VecD sample_E(const InvariantBody& b, Rng& rng) {
  const VecD z = b.to_ambient(sample_P(b, rng));
  return b.group().sample_element_float(rng) * z;
}

double support_E(const InvariantBody& b, const VecD& u, Rng& rng) {
  double best = -std::numeric_limits<double>::infinity();
  if (b.group().finite()) {
    for (const MatD& g : b.group().as_finite().elements_float())
      for (const VecE& v : b.restriction.vertices())
        best = std::max(best, (g * b.to_ambient(to_float(v))).dot(u));
    return best;
  }
  DescentConfig cfg;
  for (const VecE& v : b.restriction.vertices()) {
    const DescentResult r = ascend_support(
        b.group().as_lie(), b.to_ambient(to_float(v)), u, cfg, rng);
    best = std::max(best, r.point.dot(u));
  }
  return best;
}

} // namespace orbitface
