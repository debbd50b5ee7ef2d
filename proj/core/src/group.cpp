#include "orbitface/group.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace orbitface {

namespace {

struct MatLexLess {
  bool operator()(const MatE& x, const MatE& y) const {
    for (int r = 0; r < x.rows(); ++r)
      for (int c = 0; c < x.cols(); ++c) {
        int s = (x.at(r, c) - y.at(r, c)).sign();
        if (s != 0) return s < 0;
      }
    return false;
  }
};

struct VecLexLess {
  bool operator()(const VecE& x, const VecE& y) const { return lex_less(x, y); }
};

bool is_orthogonal(const MatE& g) {
  if (g.rows() != g.cols()) return false;
  return mul(transpose(g), g) == MatE::identity(g.rows());
}

} // namespace

void FiniteMatrixGroup::index_elements() {
  std::sort(elements_.begin(), elements_.end(), MatLexLess());
  elements_float_.clear();
  elements_float_.reserve(elements_.size());
  const MatE id = MatE::identity(ambient_);
  identity_ = 0;
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    elements_float_.push_back(to_float(elements_[i]));
    if (elements_[i] == id) identity_ = i;
  }
}

FiniteMatrixGroup FiniteMatrixGroup::from_generators(
    const std::vector<MatE>& gens, std::size_t cap) {
  if (gens.empty()) throw ContractError("finite group needs >= 1 generator");
  const int n = gens[0].rows();
  for (const MatE& g : gens) {
    if (g.rows() != n || g.cols() != n)
      throw ContractError("generator size mismatch");
    if (!is_orthogonal(g))
      throw ContractError("generator is not an orthogonal matrix");
  }

  FiniteMatrixGroup grp;
  grp.ambient_ = n;
  grp.generators_ = gens;

  std::map<MatE, std::size_t, MatLexLess> seen;
  std::vector<MatE> queue;
  auto push = [&](const MatE& g) {
    if (seen.emplace(g, seen.size()).second) {
      queue.push_back(g);
      if (seen.size() > cap) throw CapError("group closure exceeds cap");
    }
  };
  push(MatE::identity(n));
  for (const MatE& g : gens) push(g);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const MatE cur = queue[head];
    for (const MatE& g : gens) push(mul(g, cur));
  }

  grp.elements_.reserve(seen.size());
  for (const auto& [g, idx] : seen) grp.elements_.push_back(g);
  grp.index_elements();
  return grp;
}

FiniteMatrixGroup FiniteMatrixGroup::trivial(int ambient_dim) {
  FiniteMatrixGroup grp;
  grp.ambient_ = ambient_dim;
  grp.generators_ = {MatE::identity(ambient_dim)};
  grp.elements_ = grp.generators_;
  grp.index_elements();
  return grp;
}

VecE FiniteMatrixGroup::apply(std::size_t element, const VecE& x) const {
  return mul(elements_[element], x);
}

VecD FiniteMatrixGroup::apply_float(std::size_t element, const VecD& x) const {
  return elements_float_[element] * x;
}

int FiniteMatrixGroup::element_index(const MatE& g) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), g, MatLexLess());
  if (it == elements_.end() || !(*it == g)) return -1;
  return int(it - elements_.begin());
}

std::vector<VecE> FiniteMatrixGroup::orbit(const VecE& x) const {
  if (int(x.size()) != ambient_) throw ContractError("orbit: bad point size");
  std::set<VecE, VecLexLess> pts;
  for (const MatE& g : elements_) pts.insert(mul(g, x));
  return std::vector<VecE>(pts.begin(), pts.end());
}

FiniteMatrixGroup FiniteMatrixGroup::stabilizer(const VecE& p) const {
  FiniteMatrixGroup sub;
  sub.ambient_ = ambient_;
  for (const MatE& g : elements_)
    if (mul(g, p) == p) sub.elements_.push_back(g);
  sub.generators_ = sub.elements_;
  sub.index_elements();
  return sub;
}

FiniteMatrixGroup FiniteMatrixGroup::pointwise_stabilizer(
    const SubspaceE& s) const {
  FiniteMatrixGroup sub;
  sub.ambient_ = ambient_;
  for (const MatE& g : elements_) {
    bool fixes = true;
    for (int c = 0; c < s.basis().cols() && fixes; ++c) {
      VecE b = s.basis().col(c);
      fixes = mul(g, b) == b;
    }
    if (fixes) sub.elements_.push_back(g);
  }
  sub.generators_ = sub.elements_;
  sub.index_elements();
  return sub;
}

FiniteMatrixGroup FiniteMatrixGroup::setwise_stabilizer(
    const SubspaceE& s) const {
  FiniteMatrixGroup sub;
  sub.ambient_ = ambient_;
  for (const MatE& g : elements_) {
    bool preserves = true;
    for (int c = 0; c < s.basis().cols() && preserves; ++c)
      preserves = s.contains(mul(g, s.basis().col(c)));
    if (preserves) sub.elements_.push_back(g);
  }
  sub.generators_ = sub.elements_;
  sub.index_elements();
  return sub;
}

// ---------------------------------------------------------------------------

LieGroupModel::LieGroupModel(int ambient_dim, std::vector<MatD> algebra_basis,
                             double abs_tol)
    : ambient_(ambient_dim), abs_tol_(abs_tol), algebra_(std::move(algebra_basis)) {
  MatD flat(ambient_ * ambient_, long(algebra_.size()));
  for (std::size_t i = 0; i < algebra_.size(); ++i) {
    const MatD& x = algebra_[i];
    if (x.rows() != ambient_ || x.cols() != ambient_)
      throw ContractError("algebra basis size mismatch");
    const double skew = (x + x.transpose()).lpNorm<Eigen::Infinity>();
    if (skew > abs_tol_ * (1.0 + x.lpNorm<Eigen::Infinity>()))
      throw ContractError("algebra basis element is not skew-symmetric");
    flat.col(long(i)) = Eigen::Map<const VecD>(x.data(), x.size());
  }
  if (!algebra_.empty() && rank_svd(flat, abs_tol_) != int(algebra_.size()))
    throw ContractError("algebra basis is linearly dependent");
}

MatD LieGroupModel::element(const VecD& coeffs) const {
  if (coeffs.size() != long(algebra_.size()))
    throw ContractError("element: coefficient count mismatch");
  MatD x = MatD::Zero(ambient_, ambient_);
  for (std::size_t i = 0; i < algebra_.size(); ++i)
    x += coeffs[long(i)] * algebra_[i];
  return matrix_exp(x);
}

VecD LieGroupModel::sample_coeffs(Rng& rng) const {
  VecD t(algebra_.size());
  for (long i = 0; i < t.size(); ++i)
    t[i] = rng.uniform(-3.14159265358979323846, 3.14159265358979323846);
  return t;
}

MatD LieGroupModel::sample_element(Rng& rng) const {
  return element(sample_coeffs(rng));
}

std::vector<VecD> LieGroupModel::sample_orbit(const VecD& x, int n,
                                              Rng& rng) const {
  std::vector<VecD> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(sample_element(rng) * x);
  return out;
}

SubspaceD LieGroupModel::orbit_tangent(const VecD& p) const {
  MatD gens(ambient_, long(algebra_.size()));
  for (std::size_t i = 0; i < algebra_.size(); ++i)
    gens.col(long(i)) = algebra_[i] * p;
  return SubspaceD::span(gens, abs_tol_);
}

SubspaceD LieGroupModel::orbit_normal(const VecD& p) const {
  return orbit_tangent(p).orthogonal_complement();
}

int LieGroupModel::orbit_dim(const VecD& p) const {
  return orbit_tangent(p).dim();
}

int LieGroupModel::principal_orbit_dim(Rng rng) const {
  Rng sub = rng.fork("principal-orbit-dim");
  int best = 0;
  for (int i = 0; i < 64; ++i) {
    VecD p(ambient_);
    for (int j = 0; j < ambient_; ++j) p[j] = sub.normal();
    best = std::max(best, orbit_dim(p));
  }
  return best;
}

namespace {

// Restrict the algebra span to the kernel of a linear condition given by its
// action matrix on coefficient space.
std::vector<MatD> algebra_kernel(const std::vector<MatD>& algebra,
                                 const MatD& condition, double abs_tol) {
  if (algebra.empty()) return {};
  MatD z = kernel_columns(condition, abs_tol);
  std::vector<MatD> out;
  for (long j = 0; j < z.cols(); ++j) {
    MatD x = MatD::Zero(algebra[0].rows(), algebra[0].cols());
    for (std::size_t i = 0; i < algebra.size(); ++i)
      x += z(long(i), j) * algebra[i];
    out.push_back(x);
  }
  return out;
}

} // namespace

LieGroupModel LieGroupModel::stabilizer_algebra(const VecD& p) const {
  MatD cond(ambient_, long(algebra_.size()));
  for (std::size_t i = 0; i < algebra_.size(); ++i)
    cond.col(long(i)) = algebra_[i] * p;
  return LieGroupModel(ambient_, algebra_kernel(algebra_, cond, abs_tol_),
                       abs_tol_);
}

LieGroupModel LieGroupModel::pointwise_stabilizer(const SubspaceD& s) const {
  MatD cond(long(ambient_) * s.dim(), long(algebra_.size()));
  for (std::size_t i = 0; i < algebra_.size(); ++i) {
    MatD image = algebra_[i] * s.basis();  // ambient x dim(s)
    cond.col(long(i)) = Eigen::Map<const VecD>(image.data(), image.size());
  }
  return LieGroupModel(ambient_, algebra_kernel(algebra_, cond, abs_tol_),
                       abs_tol_);
}

LieGroupModel LieGroupModel::subspace_preserving(const SubspaceD& s) const {
  // X preserves s iff (I - P_s) X b = 0 for each basis vector b.
  MatD proj_out = MatD::Identity(ambient_, ambient_) - s.projector();
  MatD cond(long(ambient_) * s.dim(), long(algebra_.size()));
  for (std::size_t i = 0; i < algebra_.size(); ++i) {
    MatD image = proj_out * (algebra_[i] * s.basis());
    cond.col(long(i)) = Eigen::Map<const VecD>(image.data(), image.size());
  }
  return LieGroupModel(ambient_, algebra_kernel(algebra_, cond, abs_tol_),
                       abs_tol_);
}

// ---------------------------------------------------------------------------

const FiniteMatrixGroup& GroupModel::as_finite() const {
  if (!finite()) throw ContractError("operation requires a finite group model");
  return std::get<FiniteMatrixGroup>(model_);
}

const LieGroupModel& GroupModel::as_lie() const {
  if (finite()) throw ContractError("operation requires a Lie group model");
  return std::get<LieGroupModel>(model_);
}

int GroupModel::ambient_dim() const {
  return finite() ? as_finite().ambient_dim() : as_lie().ambient_dim();
}

MatD GroupModel::sample_element_float(Rng& rng) const {
  if (finite()) {
    const auto& g = as_finite();
    return g.elements_float()[rng.index(g.order())];
  }
  return as_lie().sample_element(rng);
}

std::vector<VecD> GroupModel::orbit_samples(const VecD& x, int n,
                                            Rng& rng) const {
  if (finite()) {
    const auto& g = as_finite();
    std::vector<VecD> out;
    if (g.order() <= std::size_t(n)) {
      for (std::size_t i = 0; i < g.order(); ++i)
        out.push_back(g.apply_float(i, x));
    } else {
      for (int i = 0; i < n; ++i)
        out.push_back(g.apply_float(rng.index(g.order()), x));
    }
    return out;
  }
  return as_lie().sample_orbit(x, n, rng);
}

SubspaceD GroupModel::orbit_tangent(const VecD& p) const {
  if (finite()) return SubspaceD(ambient_dim());
  return as_lie().orbit_tangent(p);
}

SubspaceD GroupModel::orbit_normal(const VecD& p) const {
  if (finite()) return SubspaceD::full(ambient_dim());
  return as_lie().orbit_normal(p);
}

int GroupModel::orbit_dim(const VecD& p) const {
  return finite() ? 0 : as_lie().orbit_dim(p);
}

int GroupModel::principal_orbit_dim(Rng rng) const {
  return finite() ? 0 : as_lie().principal_orbit_dim(rng);
}

} // namespace orbitface
