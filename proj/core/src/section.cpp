#include "orbitface/section.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace orbitface {

namespace {

// Pinned thresholds for the axiom checks and Weyl recovery.
constexpr double kAxiomATol = 1e-6;      // descent residual accepted as "meets"
constexpr double kAxiomBTol = 1e-8;      // normal-vector containment in sigma
constexpr double kReturnTol = 1e-8;      // "g p lands back in sigma"
constexpr double kMapTol = 1e-6;         // "g sigma = sigma" on basis images
constexpr double kViolationFloor = 1e-3; // definite failure for sampled checks
constexpr long kSnapDen = 1000;          // max denominator when snapping
constexpr double kSnapTol = 1e-6;

std::string brief(const VecD& v) {
  std::ostringstream os;
  os << std::setprecision(4) << "(";
  for (int i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ")";
  return os.str();
}

VecD random_point(Rng& rng, int dim) {
  VecD v(dim);
  for (int i = 0; i < dim; ++i) v[i] = rng.normal();
  double n = v.norm();
  if (n < 1e-12) {
    v.setZero();
    v[0] = 1.0;
    n = 1.0;
  }
  return v * (rng.uniform(0.5, 2.0) / n);
}

std::optional<VecD> random_sigma_point(Rng& rng, const SubspaceD& sigma) {
  const int d = sigma.dim();
  if (d == 0) return std::nullopt;
  VecD c(d);
  for (int i = 0; i < d; ++i) c[i] = rng.normal();
  VecD p = sigma.basis() * c;
  const double n = p.norm();
  if (n < 1e-12) return std::nullopt;
  return p * (rng.uniform(0.5, 2.0) / n);
}

std::optional<VecD> regular_sigma_point(const GroupModel& g,
                                        const SubspaceD& sigma, int principal,
                                        Rng& rng, int tries) {
  for (int t = 0; t < tries; ++t) {
    auto p = random_sigma_point(rng, sigma);
    if (!p) return std::nullopt;
    if (g.orbit_dim(*p) == principal) return p;
  }
  return std::nullopt;
}

// Entry snapping for numerically recovered Weyl actions: rational multiples of
// 1, sqrt2, sqrt3, sqrt6.  All rungs within tolerance compete and the closest
// wins, so an exactly representable entry cannot lose to a lucky fraction.
std::optional<XQ> snap_entry(double v) {
  struct Rung {
    double value;
    XQ unit;
  };
  const Rung rungs[4] = {{1.0, XQ(1)},
                         {std::sqrt(2.0), xq_sqrt2()},
                         {std::sqrt(3.0), xq_sqrt3()},
                         {std::sqrt(6.0), xq_sqrt6()}};
  std::optional<XQ> best;
  double best_err = kSnapTol;
  for (const Rung& r : rungs) {
    auto q = snap_rational(v / r.value, kSnapDen, kSnapTol);
    if (!q) continue;
    XQ cand = XQ(Q2(*q)) * r.unit;
    const double err = std::abs(to_double(cand) - v);
    if (err <= best_err) {
      best_err = err;
      best = cand;
    }
  }
  return best;
}

std::optional<MatE> snap_matrix(const MatD& m) {
  MatE out(int(m.rows()), int(m.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      auto e = snap_entry(m(i, j));
      if (!e) return std::nullopt;
      out.at(i, j) = *e;
    }
  return out;
}

bool mat_lex_less(const MatD& a, const MatD& b) {
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      if (a(i, j) < b(i, j)) return true;
      if (a(i, j) > b(i, j)) return false;
    }
  return false;
}

} // namespace

SectionCandidate SectionCandidate::make(GroupModel g, SubspaceE sigma,
                                        std::string name) {
  if (sigma.ambient_dim() != g.ambient_dim())
    throw InputError("section and group ambient dimensions differ");
  SubspaceD f = to_float(sigma);
  return SectionCandidate{std::move(g), std::move(f), std::move(sigma),
                          std::move(name)};
}

SectionCandidate SectionCandidate::make(GroupModel g, SubspaceD sigma,
                                        std::string name) {
  if (sigma.ambient_dim() != g.ambient_dim())
    throw InputError("section and group ambient dimensions differ");
  return SectionCandidate{std::move(g), std::move(sigma), std::nullopt,
                          std::move(name)};
}

Verdict AxiomReport::overall() const {
  for (const AxiomCheck* ck : {&a, &b, &c})
    if (ck->verdict == Verdict::fail) return Verdict::fail;
  for (const AxiomCheck* ck : {&a, &b, &c})
    if (ck->verdict == Verdict::indeterminate) return Verdict::indeterminate;
  return Verdict::pass;
}

AxiomCheck check_axiom_a(const SectionCandidate& c, int n, Rng& rng) {
  AxiomCheck out;
  DescentConfig cfg;
  const MatD proj = c.sigma.projector();
  for (int i = 0; i < n; ++i) {
    const VecD x = random_point(rng, c.group.ambient_dim());
    const DescentResult r = descend_to_section(c.group, proj, x, cfg, rng);
    ++out.samples;
    out.worst = std::max(out.worst, r.residual);
    if (r.residual > kAxiomATol && out.witness.empty()) {
      std::ostringstream os;
      os << "orbit of x = " << brief(x) << " stays " << std::scientific
         << std::setprecision(2) << r.residual << " away from sigma";
      out.witness = os.str();
    }
  }
  if (out.worst <= kAxiomATol)
    out.verdict = Verdict::pass;
  else if (c.group.finite() || out.worst >= kViolationFloor)
    out.verdict = Verdict::fail;  // finite descent enumerates, a miss is real
  else
    out.verdict = Verdict::indeterminate;
  return out;
}

AxiomBResult check_axiom_b(const SectionCandidate& c, int n, Rng& rng,
                           int principal_dim) {
  AxiomBResult out;
  AxiomCheck& ck = out.check;

  if (c.group.finite()) {
    // Finite orbits have zero-dimensional tangents: nu_p is all of V, so the
    // axiom degenerates to sigma = V with k = 0 (the only fat section).
    ck.samples = 1;
    if (c.sigma.is_full()) {
      ck.verdict = Verdict::pass;
      out.k = 0;
    } else {
      ck.verdict = Verdict::fail;
      ck.worst = 1.0;
      ck.witness = "nu_p = V for a finite orbit, but sigma is proper";
    }
    return out;
  }

  if (principal_dim < 0)
    principal_dim = c.group.principal_orbit_dim(rng.fork("principal"));

  int common_k = -1;
  bool k_consistent = true;
  const int max_tries = 4 * n;
  for (int t = 0; t < max_tries && ck.samples < n; ++t) {
    auto p = random_sigma_point(rng, c.sigma);
    if (!p) break;
    if (c.group.orbit_dim(*p) != principal_dim) continue;
    const SubspaceD nu = c.group.orbit_normal(*p);
    ++ck.samples;
    for (int col = 0; col < nu.dim(); ++col) {
      const VecD b = nu.basis().col(col);
      const double res = (b - c.sigma.project(b)).norm();
      out.check.worst = std::max(out.check.worst, res);
      if (res > kAxiomBTol && ck.witness.empty()) {
        std::ostringstream os;
        os << "normal direction at p = " << brief(*p) << " leaves sigma by "
           << std::scientific << std::setprecision(2) << res;
        ck.witness = os.str();
      }
    }
    const int k = c.sigma.dim() - nu.dim();
    if (common_k == -1) common_k = k;
    if (k != common_k) {
      k_consistent = false;
      if (ck.witness.empty())
        ck.witness = "codimension flips between " + std::to_string(common_k) +
                     " and " + std::to_string(k) + " across regular points";
    }
  }
  if (ck.samples == 0) {
    ck.verdict = Verdict::indeterminate;
    ck.witness = "no regular points of sigma were sampled";
    return out;
  }
  if (!k_consistent || ck.worst > kAxiomBTol) {
    ck.verdict = Verdict::fail;
    return out;
  }
  ck.verdict = Verdict::pass;
  out.k = common_k;
  return out;
}

namespace {

// Exact finite variant of axiom (C): exhaustive over elements, generic
// rational points of sigma.
AxiomCheck axiom_c_finite_exact(const FiniteMatrixGroup& g,
                                const SubspaceE& sigma, int n, Rng& rng) {
  AxiomCheck out;
  const int d = sigma.dim();
  if (d == 0) {
    out.verdict = Verdict::pass;
    out.witness = "sigma = 0 is preserved by every element";
    return out;
  }

  const int want = std::max(1, std::min(n, 8));
  std::vector<VecE> pts;
  for (int t = 0; t < 16 * want && int(pts.size()) < want; ++t) {
    VecE p(g.ambient_dim(), XQ(0));
    bool nonzero = false;
    for (int j = 0; j < d; ++j) {
      const int coeff = int(rng.index(19)) - 9;
      if (coeff == 0) continue;
      nonzero = true;
      p = p + XQ(coeff) * sigma.basis().col(j);
    }
    if (nonzero) pts.push_back(std::move(p));
  }
  // Keep only sigma-generic points: maximal orbit size among the samples.
  std::size_t max_orbit = 0;
  std::vector<std::size_t> sizes;
  for (const VecE& p : pts) {
    sizes.push_back(g.orbit(p).size());
    max_orbit = std::max(max_orbit, sizes.back());
  }
  for (std::size_t e = 0; e < g.order(); ++e) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (sizes[i] != max_orbit) continue;
      if (!sigma.contains(g.apply(e, pts[i]))) continue;
      ++out.samples;
      for (int j = 0; j < d; ++j) {
        if (!sigma.contains(g.apply(e, sigma.basis().col(j)))) {
          out.verdict = Verdict::fail;
          out.worst = 1.0;
          out.witness = "element #" + std::to_string(e) +
                        " returns a generic point to sigma but moves sigma";
          return out;
        }
      }
    }
  }
  out.verdict = Verdict::pass;
  return out;
}

// Float finite variant, for candidates supplied without exact data.
AxiomCheck axiom_c_finite_float(const FiniteMatrixGroup& g,
                                const SubspaceD& sigma, int n, Rng& rng) {
  AxiomCheck out;
  std::vector<VecD> pts;
  const int want = std::max(1, std::min(n, 8));
  std::size_t max_orbit = 0;
  std::vector<std::pair<VecD, std::size_t>> cands;
  for (int t = 0; t < 4 * want && int(cands.size()) < want; ++t) {
    auto p = random_sigma_point(rng, sigma);
    if (!p) break;
    std::vector<VecD> orbit;
    for (std::size_t e = 0; e < g.order(); ++e) {
      VecD y = g.apply_float(e, *p);
      bool dup = false;
      for (const VecD& z : orbit)
        if ((y - z).norm() <= kDedupeTol * (1.0 + p->norm())) {
          dup = true;
          break;
        }
      if (!dup) orbit.push_back(std::move(y));
    }
    cands.push_back({*p, orbit.size()});
    max_orbit = std::max(max_orbit, orbit.size());
  }
  for (const auto& [p, size] : cands) {
    if (size != max_orbit) continue;
    const double scale = 1.0 + p.norm();
    for (std::size_t e = 0; e < g.order(); ++e) {
      const VecD gp = g.apply_float(e, p);
      if ((gp - sigma.project(gp)).norm() > kReturnTol * scale) continue;
      ++out.samples;
      for (int j = 0; j < sigma.dim(); ++j) {
        const VecD img = g.apply_float(e, VecD(sigma.basis().col(j)));
        const double res = (img - sigma.project(img)).norm();
        out.worst = std::max(out.worst, res);
        if (res > kMapTol && out.witness.empty())
          out.witness = "element #" + std::to_string(e) +
                        " returns p to sigma but moves sigma by " +
                        std::to_string(res);
      }
    }
  }
  if (out.samples == 0) {
    out.verdict = Verdict::indeterminate;
    out.witness = "no element returned a sampled point to sigma";
  } else {
    out.verdict = out.worst <= kMapTol ? Verdict::pass : Verdict::fail;
  }
  return out;
}

} // namespace

AxiomCheck check_axiom_c(const SectionCandidate& c, int n, Rng& rng,
                         int principal_dim) {
  if (c.group.finite()) {
    const auto& g = c.group.as_finite();
    if (c.sigma_exact) return axiom_c_finite_exact(g, *c.sigma_exact, n, rng);
    return axiom_c_finite_float(g, c.sigma, n, rng);
  }

  AxiomCheck out;
  if (principal_dim < 0)
    principal_dim = c.group.principal_orbit_dim(rng.fork("principal"));
  const auto& lie = c.group.as_lie();
  DescentConfig cfg;
  const MatD proj = c.sigma.projector();
  const MatD& basis = c.sigma.basis();

  const int max_tries = 4 * n;
  for (int t = 0; t < max_tries && out.samples < n; ++t) {
    auto p = regular_sigma_point(c.group, c.sigma, principal_dim, rng, 16);
    if (!p) break;
    const MatD g0 = lie.sample_element(rng);
    const DescentResult r = descend_to_section(c.group, proj, g0 * *p, cfg, rng);
    const double scale = 1.0 + p->norm();
    if (r.residual > kReturnTol * scale) continue;  // no return element found
    const MatD g = r.element * g0;
    ++out.samples;
    for (int col = 0; col < basis.cols(); ++col) {
      const VecD img = g * basis.col(col);
      const double res = (img - proj * img).norm();
      out.worst = std::max(out.worst, res);
      if (res > kMapTol && out.witness.empty()) {
        std::ostringstream os;
        os << "return element at p = " << brief(*p) << " moves sigma by "
           << std::scientific << std::setprecision(2) << res;
        out.witness = os.str();
      }
    }
  }
  if (out.samples == 0) {
    out.verdict = Verdict::indeterminate;
    out.witness = "no descent produced a return element";
    return out;
  }
  if (out.worst <= kMapTol)
    out.verdict = Verdict::pass;
  else
    out.verdict =
        out.worst >= kViolationFloor ? Verdict::fail : Verdict::indeterminate;
  return out;
}

AxiomReport check_axioms(const SectionCandidate& c, int n,
                         std::uint64_t seed) {
  AxiomReport rep;
  rep.n_samples = n;
  rep.seed = seed;
  Rng root(seed);
  rep.principal_orbit_dim = c.group.principal_orbit_dim(root.fork("principal"));
  Rng ra = root.fork("axiom-a");
  Rng rb = root.fork("axiom-b");
  Rng rc = root.fork("axiom-c");
  rep.a = check_axiom_a(c, n, ra);
  AxiomBResult b = check_axiom_b(c, n, rb, rep.principal_orbit_dim);
  rep.b = b.check;
  rep.k = b.k;
  rep.c = check_axiom_c(c, n, rc, rep.principal_orbit_dim);
  return rep;
}

std::size_t FatWeylGroup::order() const {
  if (!finite || !action) throw ContractError("Weyl group is not finite");
  return action->order();
}

VecE FatWeylGroup::coords_exact(const VecE& x) const {
  if (!basis) throw ContractError("no exact Weyl basis available");
  return mul(transpose(*basis), x);
}

VecE FatWeylGroup::ambient_exact(const VecE& coords) const {
  if (!basis) throw ContractError("no exact Weyl basis available");
  return mul(*basis, coords);
}

VecD FatWeylGroup::coords_float(const VecD& x) const {
  return basis_float.transpose() * x;
}

VecD FatWeylGroup::ambient_float(const VecD& coords) const {
  return basis_float * coords;
}

std::vector<MatD> FatWeylGroup::action_float() const {
  if (finite && action) return action->elements_float();
  return sampled;
}

std::vector<VecE> FatWeylGroup::orbit_ambient(const VecE& x) const {
  if (!finite || !action || !basis)
    throw ContractError("exact Weyl orbit needs the finite exact action");
  const VecE coords = coords_exact(x);
  std::vector<VecE> out;
  for (const MatE& w : action->elements()) {
    VecE y = ambient_exact(mul(w, coords));
    if (std::find(out.begin(), out.end(), y) == out.end())
      out.push_back(std::move(y));
  }
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

namespace {

FatWeylGroup weyl_finite(const SectionCandidate& c) {
  if (!c.sigma_exact)
    throw ContractError("finite Weyl extraction needs exact section data");
  auto basis = orthonormalize_exact(*c.sigma_exact);
  if (!basis)
    throw ContractError(
        "section basis cannot be orthonormalized inside the scalar field");
  FatWeylGroup w;
  w.basis = *basis;
  w.basis_float = to_float(*basis);
  const int d = basis->cols();
  if (d == 0) {
    w.finite = true;
    w.action = FiniteMatrixGroup::trivial(0);
    return w;
  }
  const auto& g = c.group.as_finite();
  const FiniteMatrixGroup nsub = g.setwise_stabilizer(*c.sigma_exact);
  const MatE bt = transpose(*basis);
  // Deduplication of the restrictions is exactly the quotient by Z_G(sigma).
  std::vector<MatE> restrictions;
  for (const MatE& e : nsub.elements()) {
    MatE r = mul(bt, mul(e, *basis));
    if (std::find(restrictions.begin(), restrictions.end(), r) ==
        restrictions.end())
      restrictions.push_back(std::move(r));
  }
  w.finite = true;
  w.action = FiniteMatrixGroup::from_generators(restrictions, 4096);
  return w;
}

FatWeylGroup weyl_lie(const SectionCandidate& c, Rng& rng) {
  const auto& lie = c.group.as_lie();
  FatWeylGroup w;

  // Infinitesimal normalizer vs centralizer of sigma decides finiteness.
  const LieGroupModel nalg = lie.subspace_preserving(c.sigma);
  const LieGroupModel zalg = lie.pointwise_stabilizer(c.sigma);
  w.normalizer_algebra_dim = nalg.algebra_dim() - zalg.algebra_dim();

  if (c.sigma_exact) {
    if (auto be = orthonormalize_exact(*c.sigma_exact)) {
      w.basis = *be;
      w.basis_float = to_float(*be);
    }
  }
  if (w.basis_float.size() == 0) w.basis_float = c.sigma.basis();
  const int d = int(w.basis_float.cols());
  if (d == 0) {
    w.finite = true;
    w.action = FiniteMatrixGroup::trivial(0);
    return w;
  }

  const int principal = lie.principal_orbit_dim(rng.fork("weyl-principal"));
  auto x0 = regular_sigma_point(c.group, c.sigma, principal, rng, 256);
  if (!x0) {
    w.note = "no regular section point sampled; action left empty";
    return w;
  }
  const double scale = 1.0 + x0->norm();
  DescentConfig cfg;
  const MatD proj = c.sigma.projector();
  const MatD& bf = w.basis_float;

  std::vector<MatD> floats;
  std::vector<MatE> snapped;
  bool snap_ok = w.normalizer_algebra_dim == 0;
  int stale = 0;
  constexpr int kPatience = 48, kCapSamples = 512;
  for (int t = 0; t < kCapSamples && stale < kPatience; ++t) {
    const MatD g0 = lie.sample_element(rng);
    const DescentResult r =
        descend_to_section(c.group, proj, g0 * *x0, cfg, rng);
    if (r.residual > kReturnTol * scale) {
      ++stale;
      continue;
    }
    const MatD g = r.element * g0;
    const MatD rest = bf.transpose() * g * bf;
    if ((g * bf - bf * rest).norm() > kMapTol * std::sqrt(double(d))) {
      ++stale;  // not a normalizer element; axiom C would have flagged this
      continue;
    }
    bool dup = false;
    for (const MatD& q : floats)
      if ((q - rest).norm() <= 1e-6 * d) {
        dup = true;
        break;
      }
    if (dup) {
      ++stale;
      continue;
    }
    floats.push_back(rest);
    stale = 0;
    if (snap_ok) {
      auto ex = snap_matrix(rest);
      if (ex)
        snapped.push_back(std::move(*ex));
      else
        snap_ok = false;
    }
  }
  std::sort(floats.begin(), floats.end(), mat_lex_less);

  if (w.normalizer_algebra_dim == 0 && snap_ok && !snapped.empty()) {
    std::vector<MatE> uniq;
    for (MatE& m : snapped)
      if (std::find(uniq.begin(), uniq.end(), m) == uniq.end())
        uniq.push_back(std::move(m));
    try {
      w.action = FiniteMatrixGroup::from_generators(uniq, 4096);
      w.finite = true;
      return w;
    } catch (const Error& e) {
      w.note = std::string("snapped action failed validation: ") + e.what();
    }
  } else if (w.normalizer_algebra_dim == 0 && !snap_ok) {
    w.note = "restriction entries did not snap; keeping sampled action";
  }
  w.sampled = std::move(floats);
  return w;
}

} // namespace

FatWeylGroup fat_weyl_group_unchecked(const SectionCandidate& c, Rng& rng) {
  if (c.group.finite()) return weyl_finite(c);
  return weyl_lie(c, rng);
}

FatWeylGroup fat_weyl_group(const SectionCandidate& c,
                            const AxiomReport& report, Rng& rng) {
  if (report.overall() != Verdict::pass)
    throw ContractError("fat section axioms not validated for '" + c.name +
                        "'");
  return fat_weyl_group_unchecked(c, rng);
}

SliceEqualityReport weyl_orbit_equals_section_slice(const SectionCandidate& c,
                                                    const FatWeylGroup& w,
                                                    const VecE& x) {
  if (!c.group.finite() || !c.sigma_exact || !w.finite || !w.basis)
    throw ContractError("exact slice equality needs finite exact data");
  if (!c.sigma_exact->contains(x))
    throw InputError("point does not lie in the section");

  SliceEqualityReport rep;
  const auto& g = c.group.as_finite();
  std::vector<VecE> slice;
  for (const VecE& y : g.orbit(x))
    if (c.sigma_exact->contains(y)) slice.push_back(y);
  const std::vector<VecE> worbit = w.orbit_ambient(x);
  rep.weyl_side = int(worbit.size());
  rep.section_side = int(slice.size());
  if (worbit == slice) {
    rep.verdict = Verdict::pass;
  } else {
    rep.verdict = Verdict::fail;
    rep.detail = "W.x and (G.x) ∩ sigma differ as exact point sets";
  }
  return rep;
}

SliceEqualityReport weyl_orbit_equals_section_slice(const SectionCandidate& c,
                                                    const FatWeylGroup& w,
                                                    const VecD& x, int n,
                                                    Rng& rng) {
  SliceEqualityReport rep;
  const double scale = 1.0 + x.norm();
  if (!c.sigma.contains(x, kAbsTol * scale))
    throw InputError("point does not lie in the section");

  const std::vector<MatD> acts = w.action_float();
  if (acts.empty()) {
    rep.detail = "no Weyl action available";
    return rep;
  }
  const double tol = 1e-6 * scale;
  const VecD coords = w.coords_float(x);
  std::vector<VecD> wpts;
  for (const MatD& r : acts) {
    VecD y = w.ambient_float(r * coords);
    bool dup = false;
    for (const VecD& z : wpts)
      if ((y - z).norm() <= tol) {
        dup = true;
        break;
      }
    if (!dup) wpts.push_back(std::move(y));
  }

  DescentConfig cfg;
  const MatD proj = c.sigma.projector();
  std::vector<VecD> spts;
  std::vector<VecD> orbit_pts;  // finite only
  int converged = 0;
  if (c.group.finite()) {
    const auto& g = c.group.as_finite();
    for (std::size_t e = 0; e < g.order(); ++e) {
      VecD y = g.apply_float(e, x);
      orbit_pts.push_back(y);
      if ((y - proj * y).norm() > kReturnTol * scale) continue;
      ++converged;
      bool dup = false;
      for (const VecD& z : spts)
        if ((y - z).norm() <= tol) {
          dup = true;
          break;
        }
      if (!dup) spts.push_back(std::move(y));
    }
  } else {
    const auto& lie = c.group.as_lie();
    for (int i = 0; i < n; ++i) {
      const MatD g0 = lie.sample_element(rng);
      const DescentResult r =
          descend_to_section(c.group, proj, g0 * x, cfg, rng);
      if (r.residual > kReturnTol * scale) continue;
      ++converged;
      bool dup = false;
      for (const VecD& z : spts)
        if ((r.point - z).norm() <= tol) {
          dup = true;
          break;
        }
      if (!dup) spts.push_back(r.point);
    }
  }

  std::string bad;
  double worst = 0.0;
  for (const VecD& s : spts) {
    double dmin = std::numeric_limits<double>::infinity();
    for (const VecD& wp : wpts) dmin = std::min(dmin, (s - wp).norm());
    worst = std::max(worst, dmin);
    if (dmin > tol && bad.empty())
      bad = "section point " + brief(s) + " is not a Weyl image";
  }
  for (const VecD& wp : wpts) {
    double dmin = std::numeric_limits<double>::infinity();
    if (c.group.finite()) {
      for (const VecD& y : orbit_pts) dmin = std::min(dmin, (wp - y).norm());
    } else {
      const DescentResult m = match_point(c.group.as_lie(), x, wp, cfg, rng);
      dmin = (m.point - wp).norm();
    }
    worst = std::max(worst, dmin);
    if (dmin > tol && bad.empty())
      bad = "Weyl image " + brief(wp) + " is unreachable from the orbit";
  }

  rep.weyl_side = int(wpts.size());
  rep.section_side = int(spts.size());
  rep.worst = worst;
  rep.detail = bad;
  if (converged == 0) {
    rep.verdict = Verdict::indeterminate;
    rep.detail = "no orbit point descended into sigma";
  } else if (bad.empty()) {
    rep.verdict = Verdict::pass;
  } else {
    rep.verdict = worst >= kViolationFloor * scale ? Verdict::fail
                                                   : Verdict::indeterminate;
  }
  return rep;
}

} // namespace orbitface
