#include "orbitface/slice.hpp"

#include <algorithm>
#include <set>

namespace orbitface {

namespace {

Verdict combine(const std::vector<Verdict>& vs) {
  Verdict out = Verdict::pass;
  for (Verdict v : vs) {
    if (v == Verdict::fail) return Verdict::fail;
    if (v == Verdict::indeterminate) out = Verdict::indeterminate;
  }
  return out;
}

// The representation currently being sliced: the chain reduction rebinds this
// after every level, so the group always acts on the original ambient space
// while V and sigma shrink.
struct Frame {
  SubspaceD V;
  SubspaceD sigma;
  std::optional<SubspaceE> sigma_exact;
  std::optional<FiniteMatrixGroup> gf;
  std::optional<LieGroupModel> gl;
  std::string name;
};

Frame top_frame(const InvariantBody& b) {
  Frame fr{SubspaceD::full(b.ambient_dim()), b.section.sigma,
           b.section.sigma_exact,          std::nullopt,
           std::nullopt,                   b.section.name};
  if (b.group().finite())
    fr.gf = b.group().as_finite();
  else
    fr.gl = b.group().as_lie();
  return fr;
}

// Independent generators of {B^T X B}: orthonormalizing the vectorized images
// drops the kernel of the restriction, and combinations of skews stay skew.
std::vector<MatD> restrict_algebra(const std::vector<MatD>& algebra,
                                   const MatD& B) {
  const int d = int(B.cols());
  if (algebra.empty() || d == 0) return {};
  MatD cols(d * d, int(algebra.size()));
  int m = 0;
  for (const MatD& x : algebra) {
    MatD xr = B.transpose() * x * B;
    xr = 0.5 * (xr - xr.transpose().eval());
    if (xr.norm() <= kAbsTol) continue;
    cols.col(m++) = Eigen::Map<const VecD>(xr.data(), d * d);
  }
  if (m == 0) return {};
  const MatD on = orthonormal_columns(cols.leftCols(m), kAbsTol);
  std::vector<MatD> out;
  out.reserve(std::size_t(on.cols()));
  for (int i = 0; i < on.cols(); ++i)
    out.push_back(Eigen::Map<const MatD>(on.col(i).data(), d, d));
  return out;
}

// Coordinates of a subspace s ⊆ span(B) in the orthonormal columns of B.
SubspaceD restrict_subspace(const SubspaceD& s, const MatD& B) {
  if (s.dim() == 0) return SubspaceD(int(B.cols()));
  return SubspaceD::span(B.transpose() * s.basis());
}

AxiomReport slice_axioms(const SubspaceD& v1, const SubspaceD& sigma1,
                         const std::optional<SubspaceE>& sigma1_exact,
                         const std::optional<FiniteMatrixGroup>& gf,
                         const std::optional<LieGroupModel>& gl,
                         const std::string& name, int budget,
                         std::uint64_t seed) {
  if (gf) {
    // discrete orbits never shrink the space, so the check runs unrestricted
    if (!v1.is_full())
      throw ContractError("finite slice must keep the full space");
    if (sigma1_exact)
      return check_axioms(
          SectionCandidate::make(GroupModel(*gf), *sigma1_exact, name), budget,
          seed);
    return check_axioms(SectionCandidate::make(GroupModel(*gf), sigma1, name),
                        budget, seed);
  }
  const MatD& basis = v1.basis();
  LieGroupModel restricted(int(basis.cols()),
                           restrict_algebra(gl->algebra(), basis));
  return check_axioms(SectionCandidate::make(GroupModel(std::move(restricted)),
                                             restrict_subspace(sigma1, basis),
                                             name),
                      budget, seed);
}

SliceRep slice_frame(const Frame& fr, const VecD& u1,
                     const std::optional<VecE>& u1_amb_exact, int budget,
                     std::uint64_t seed) {
  if (u1.norm() <= kAbsTol)
    throw InputError("slice direction must be nonzero");
  if ((u1 - fr.sigma.project(u1)).norm() >
      kProjRestrictTol * (1.0 + u1.norm()))
    throw InputError("slice direction must lie in the section");

  SubspaceD v1(int(u1.size()));
  std::optional<FiniteMatrixGroup> gf1;
  std::optional<LieGroupModel> gl1;
  if (fr.gf) {
    v1 = fr.V;  // discrete orbits: the normal space is everything
    if (u1_amb_exact) {
      gf1 = fr.gf->stabilizer(*u1_amb_exact);
    } else {
      // float direction: keep the exact elements that fix it numerically
      std::vector<MatE> fix;
      const auto& els = fr.gf->elements();
      const auto& elsf = fr.gf->elements_float();
      for (std::size_t i = 0; i < els.size(); ++i)
        if ((elsf[i] * u1 - u1).norm() <= kProjRestrictTol * (1.0 + u1.norm()))
          fix.push_back(els[i]);
      gf1 = FiniteMatrixGroup::from_generators(fix);
    }
  } else {
    v1 = fr.gl->orbit_normal(u1).intersect(fr.V);
    gl1 = fr.gl->stabilizer_algebra(u1);
  }
  const SubspaceD sigma1 = v1.intersect(fr.sigma);

  AxiomCheck inv;
  inv.verdict = Verdict::pass;
  inv.worst = std::max((u1 - v1.project(u1)).norm(),
                       (u1 - sigma1.project(u1)).norm()) /
              (1.0 + u1.norm());
  if (inv.worst > kProjRestrictTol)
    inv.witness = "u1 escapes V1 or Sigma1";
  Rng rng = Rng(seed).fork("slice-invariance");
  const int rounds = 32;
  for (int t = 0; t < rounds; ++t) {
    const MatD g = gf1 ? gf1->elements_float()[rng.index(gf1->order())]
                       : gl1->sample_element(rng);
    for (int c = 0; c < v1.basis().cols(); ++c) {
      const VecD gv = g * v1.basis().col(c);
      const double res = (gv - v1.project(gv)).norm();
      if (res > inv.worst) {
        inv.worst = res;
        if (res > kProjRestrictTol) inv.witness = "a stabilizer element moves V1";
      }
    }
  }
  inv.samples = rounds;
  if (inv.worst > kProjRestrictTol) inv.verdict = Verdict::fail;

  AxiomCheck dec;
  const int d_in = sigma1.dim();
  const int d_out = v1.intersect(fr.sigma.orthogonal_complement()).dim();
  dec.samples = 1;
  dec.worst = double(std::abs(v1.dim() - d_in - d_out));
  dec.verdict = v1.dim() == d_in + d_out ? Verdict::pass : Verdict::fail;
  if (dec.verdict == Verdict::fail)
    dec.witness = "dim V1 != dim(V1 ∩ Σ) + dim(V1 ∩ Σ^perp)";

  AxiomReport axioms =
      slice_axioms(v1, sigma1, fr.gf && sigma1.same_as(fr.sigma)
                                   ? fr.sigma_exact
                                   : std::nullopt,
                   gf1, gl1, fr.name + "|slice", budget, seed);

  GroupModel g1 = gf1 ? GroupModel(*gf1) : GroupModel(*gl1);
  return SliceRep{u1,       u1_amb_exact, v1,  sigma1, fr.sigma,
                  std::move(g1), inv,     dec, axioms};
}

VecD random_face_point(const std::vector<VecE>& verts, Rng& rng) {
  VecD pt = VecD::Zero(int(verts[0].size()));
  double total = 0;
  for (const VecE& v : verts) {
    const double w = -std::log(1.0 - rng.uniform());
    pt += w * to_float(v);
    total += w;
  }
  return pt / total;
}

}  // namespace

Verdict SliceRep::overall() const {
  return combine({invariance.verdict, decomposition.verdict, axioms.overall()});
}

SliceRep slice(const InvariantBody& b, const VecD& u1, std::uint64_t seed) {
  return slice_frame(top_frame(b), u1, std::nullopt, kSliceBudget, seed);
}

SliceRep slice(const InvariantBody& b, const VecE& u1_coords,
               std::uint64_t seed) {
  if (is_zero(u1_coords)) throw InputError("slice direction must be nonzero");
  const VecE amb = b.to_ambient_exact(u1_coords);
  return slice_frame(top_frame(b), to_float(amb), amb, kSliceBudget, seed);
}

AxiomCheck verify_projection_restriction(const SliceRep& s, int n,
                                         std::uint64_t seed) {
  AxiomCheck out;
  out.verdict = Verdict::pass;
  out.samples = n;
  Rng rng = Rng(seed).fork("proj-restrict");
  const MatD& basis = s.V1.basis();
  for (int t = 0; t < n; ++t) {
    VecD x = VecD::Zero(s.V1.ambient_dim());
    for (int c = 0; c < basis.cols(); ++c) x += rng.normal() * basis.col(c);
    const double res =
        (s.Sigma1.project(x) - s.sigma_parent.project(x)).norm() /
        (1.0 + x.norm());
    if (res > out.worst) {
      out.worst = res;
      if (res > kProjRestrictTol) {
        out.verdict = Verdict::fail;
        out.witness = "projection onto Sigma1 disagrees with the parent";
      }
    }
  }
  return out;
}

Verdict ChainReduction::overall() const {
  std::vector<Verdict> vs{containment.verdict};
  for (const ChainLevel& l : levels) {
    vs.push_back(l.rep.overall());
    vs.push_back(l.argmax.verdict);
    vs.push_back(l.refinement.verdict);
    vs.push_back(l.nesting.verdict);
    vs.push_back(l.face_in_slice.verdict);
    vs.push_back(l.proj_restrict.verdict);
  }
  return combine(vs);
}

ChainReduction chain_reduce(const InvariantBody& b, const PFace& q, int budget,
                            std::uint64_t seed) {
  if (q.vertex_ids.empty())
    throw InputError("chain reduction needs a nonempty face");
  const int qid = b.lattice.find(q.vertex_ids);
  if (qid < 0) throw InputError("vertex set is not a face of the restriction");

  const auto& nodes = b.lattice.nodes();
  const auto& facets = b.restriction.facets();
  const auto& verts = b.restriction.vertices();
  const int cd = b.restriction.ambient_dim();

  ChainReduction out;
  out.q = PFace{nodes[qid].vertex_ids, nodes[qid].dim, nodes[qid].exposing};

  std::vector<int> chain = b.lattice.maximal_chain(qid);
  std::reverse(chain.begin(), chain.end());  // P = Q_0 ⊃ … ⊃ Q_n = q

  Rng rng = Rng(seed).fork("chain-reduce");
  Frame fr = top_frame(b);

  const auto active_facets = [&](const std::vector<int>& ids) {
    std::set<int> a;
    for (int i = 0; i < int(facets.size()); ++i)
      if (std::includes(facets[i].vertex_ids.begin(),
                        facets[i].vertex_ids.end(), ids.begin(), ids.end()))
        a.insert(i);
    return a;
  };

  VecE u_cum(std::size_t(cd), XQ(0));
  for (std::size_t step = 1; step < chain.size(); ++step) {
    const auto& prev = nodes[chain[step - 1]];
    const auto& cur = nodes[chain[step]];

    // u_i = sum of the facet normals that become active at this step: on
    // Q_{i-1} every facet functional is one-sided, so the sum is maximized
    // exactly where all the new facets are tight, which is Q_i.
    const std::set<int> ap = active_facets(prev.vertex_ids);
    const std::set<int> ac = active_facets(cur.vertex_ids);
    VecE u(std::size_t(cd), XQ(0));
    int added = 0;
    for (int fi : ac)
      if (!ap.count(fi)) {
        u = u + facets[fi].normal;
        ++added;
      }
    if (added == 0)
      throw ContractError("covering step activates no new facet");
    u_cum = u_cum + u;

    AxiomCheck am;
    am.samples = int(prev.vertex_ids.size());
    XQ best(0);
    std::vector<int> arg;
    for (int vid : prev.vertex_ids) {
      const XQ val = dot(verts[vid], u);
      if (arg.empty() || best < val) {
        best = val;
        arg.assign(1, vid);
      } else if (!(val < best)) {
        arg.push_back(vid);
      }
    }
    if (arg != cur.vertex_ids)
      throw ContractError("exposing sum does not cut the covering step");
    am.verdict = Verdict::pass;

    const VecE u_amb_exact = b.to_ambient_exact(u);
    VecD u_amb = to_float(u_amb_exact);
    bool projected = false;
    if (!fr.sigma.contains(u_amb, kProjRestrictTol * (1.0 + u_amb.norm()))) {
      // u exposes the same face of Q_{i-1} after projection: the dropped
      // component is orthogonal to Σ_{i-1} ⊇ Q_{i-1}
      u_amb = fr.sigma.project(u_amb);
      projected = true;
    }
    SliceRep rep = slice_frame(
        fr, u_amb,
        projected ? std::nullopt : std::optional<VecE>(u_amb_exact), budget,
        seed);

    AxiomCheck nest;
    nest.verdict = Verdict::pass;
    nest.samples = rep.V1.dim() + rep.Sigma1.dim();
    for (int c = 0; c < rep.V1.basis().cols(); ++c) {
      const VecD v = rep.V1.basis().col(c);
      nest.worst = std::max(nest.worst, (v - fr.V.project(v)).norm());
    }
    for (int c = 0; c < rep.Sigma1.basis().cols(); ++c) {
      const VecD v = rep.Sigma1.basis().col(c);
      nest.worst = std::max(nest.worst, (v - fr.sigma.project(v)).norm());
    }
    if (nest.worst > kProjRestrictTol) {
      nest.verdict = Verdict::fail;
      nest.witness = "slice escapes the previous level";
    }

    AxiomCheck fis;
    fis.verdict = Verdict::pass;
    fis.samples = int(cur.vertex_ids.size());
    for (int vid : cur.vertex_ids) {
      const VecD amb = to_float(b.to_ambient_exact(verts[vid]));
      const double res =
          (amb - rep.Sigma1.project(amb)).norm() / (1.0 + amb.norm());
      if (res > fis.worst) {
        fis.worst = res;
        if (res > kProjRestrictTol) {
          fis.verdict = Verdict::fail;
          fis.witness = "a face vertex leaves the slice section";
        }
      }
    }

    const AxiomCheck pr = verify_projection_restriction(rep, 256, seed);

    // independent F_{Q_i} samples must satisfy the Q_{i-1} oracle: the
    // cumulative normal sum exposes Q_i globally, so the sampler applies.
    AxiomCheck ref;
    LiftedFace lf = exposed_lift(b, u_cum);
    if (lf.q.vertex_ids != cur.vertex_ids)
      throw ContractError("cumulative exposing drifted off the chain");
    const std::vector<VecD> zs = sample_lifted(b, lf, 16, rng);
    ref.samples = int(zs.size());
    for (const VecD& z : zs) {
      const VecD coords = b.to_coords(b.section.sigma.project(z));
      const double res = face_residual(b.restriction, prev.vertex_ids, coords);
      if (res > ref.worst) {
        ref.worst = res;
        if (res > kLiftTol * lf.scale * (1.0 + z.norm())) {
          ref.verdict = Verdict::fail;
          ref.witness = "a lift sample violates the parent face oracle";
        }
      }
    }
    if (ref.verdict != Verdict::fail)
      ref.verdict = zs.empty() ? Verdict::indeterminate : Verdict::pass;

    out.levels.push_back(ChainLevel{PFace{cur.vertex_ids, cur.dim, cur.exposing},
                                    u, u_amb, projected, std::move(rep), am,
                                    ref, nest, fis, pr});

    const SliceRep& level = out.levels.back().rep;
    fr.V = level.V1;
    if (!level.Sigma1.same_as(fr.sigma)) fr.sigma_exact = std::nullopt;
    fr.sigma = level.Sigma1;
    if (level.G1.finite()) {
      fr.gf = level.G1.as_finite();
      fr.gl.reset();
    } else {
      fr.gl = level.G1.as_lie();
      fr.gf.reset();
    }
  }

  const GroupModel& k = out.levels.empty() ? b.group() : out.levels.back().rep.G1;
  if (k.finite())
    out.k_order = int(k.as_finite().order());
  else
    out.k_dim = k.as_lie().algebra_dim();

  // K fixes every chain direction, so K·Q must stay inside F_Q
  AxiomCheck cont;
  cont.verdict = Verdict::pass;
  std::vector<VecE> qverts;
  for (int vid : out.q.vertex_ids) qverts.push_back(verts[vid]);
  double scale = 1.0;
  for (const VecE& v : qverts) scale = std::max(scale, 1.0 + to_float(v).norm());
  const int ns = std::max(budget, 1);
  cont.samples = ns;
  for (int t = 0; t < ns; ++t) {
    const VecD z =
        k.sample_element_float(rng) * b.to_ambient(random_face_point(qverts, rng));
    const VecD coords = b.to_coords(b.section.sigma.project(z));
    const double res = face_residual(b.restriction, out.q.vertex_ids, coords);
    if (res > cont.worst) {
      cont.worst = res;
      if (res > kLiftTol * scale * (1.0 + z.norm())) {
        cont.verdict = Verdict::fail;
        cont.witness = "a stabilizer image leaves the lifted face";
      }
    }
  }
  out.containment = cont;
  if (out.levels.empty())
    out.note = "the face is the whole restriction: K = G and the chain is empty";
  return out;
}

Json json_of(const SliceRep& s) {
  Json j;
  j["u1"] = json_of(s.u1);
  if (s.u1_exact) j["u1_exact"] = json_of(*s.u1_exact);
  j["dim_V1"] = s.V1.dim();
  j["dim_Sigma1"] = s.Sigma1.dim();
  j["dim_sigma_parent"] = s.sigma_parent.dim();
  j["G1"] = json_of(s.G1);
  j["invariance"] = json_of(s.invariance);
  j["decomposition"] = json_of(s.decomposition);
  j["axioms"] = json_of(s.axioms);
  j["overall"] = json_of(s.overall());
  return j;
}

Json json_of(const ChainReduction& r) {
  Json j;
  j["Q"] = Json{{"vertex_ids", r.q.vertex_ids}, {"dim", r.q.dim}};
  Json levels = Json::array();
  for (const ChainLevel& l : r.levels) {
    Json lev;
    lev["Q"] = Json{{"vertex_ids", l.q.vertex_ids}, {"dim", l.q.dim}};
    lev["u"] = json_of(l.u_coords);
    lev["projected"] = l.projected;
    lev["dim_V"] = l.rep.V1.dim();
    lev["dim_Sigma"] = l.rep.Sigma1.dim();
    if (l.rep.G1.finite())
      lev["stabilizer"] = Json{{"order", int(l.rep.G1.as_finite().order())}};
    else
      lev["stabilizer"] = Json{{"algebra_dim", l.rep.G1.as_lie().algebra_dim()}};
    Json checks;
    checks["argmax"] = json_of(l.argmax);
    checks["refinement"] = json_of(l.refinement);
    checks["nesting"] = json_of(l.nesting);
    checks["face_in_slice"] = json_of(l.face_in_slice);
    checks["projection_restriction"] = json_of(l.proj_restrict);
    checks["invariance"] = json_of(l.rep.invariance);
    checks["decomposition"] = json_of(l.rep.decomposition);
    checks["axioms"] = json_of(l.rep.axioms);
    lev["checks"] = std::move(checks);
    levels.push_back(std::move(lev));
  }
  j["levels"] = std::move(levels);
  if (r.k_order >= 0)
    j["K"] = Json{{"order", r.k_order}};
  else
    j["K"] = Json{{"algebra_dim", r.k_dim}};
  j["containment"] = json_of(r.containment);
  if (!r.note.empty()) j["note"] = r.note;
  j["overall"] = json_of(r.overall());
  return j;
}

} // namespace orbitface
