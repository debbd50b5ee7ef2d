#include "orbitface/descent.hpp"

#include <cmath>
#include <functional>

namespace orbitface {

namespace {

// Objective over orbit points y = g x.  When `a` is set the objective is the
// least-squares value 0.5 |a y - c|^2 and Gauss-Newton polish is available;
// otherwise it is the linear functional <l, y>.
struct OrbitObjective {
  std::optional<MatD> a;
  VecD c;
  VecD l;

  double value(const VecD& y) const {
    if (a) return 0.5 * (*a * y - c).squaredNorm();
    return l.dot(y);
  }
  VecD gradient(const VecD& y) const {
    if (a) return a->transpose() * (*a * y - c);
    return l;
  }
  double residual(const VecD& y) const {
    if (a) return (*a * y - c).norm();
    return std::numeric_limits<double>::infinity();
  }
};

DescentResult minimize_over_orbit(const LieGroupModel& group, const VecD& x,
                                  const OrbitObjective& obj,
                                  const DescentConfig& cfg, Rng& rng,
                                  const std::vector<MatD>* warm_starts) {
  const int m = group.algebra_dim();
  const int dim = group.ambient_dim();
  const double scale = 1.0 + x.norm();

  // The incumbent (x itself) always competes and the identity is always a
  // start, so repeated calls can only improve a point: the alternating
  // samplers rely on that monotonicity to polish boundary points.
  DescentResult best;
  best.element = MatD::Identity(dim, dim);
  best.point = x;
  best.residual = obj.residual(x);
  double best_value = obj.value(x);
  bool have_best = true;

  for (int start = 0; start < cfg.starts; ++start) {
    MatD g;
    if (start == 0) {
      g = MatD::Identity(dim, dim);
    } else if (warm_starts && start - 1 < int(warm_starts->size())) {
      g = (*warm_starts)[start - 1];
    } else {
      g = group.sample_element(rng);
    }
    VecD y = g * x;
    double f = obj.value(y);

    int it = 0;
    for (; it < cfg.max_iters && m > 0; ++it) {
      if (obj.a && obj.residual(y) <= cfg.tol * scale) break;

      const VecD grad_y = obj.gradient(y);
      VecD gamma(m);
      for (int i = 0; i < m; ++i) gamma[i] = grad_y.dot(group.algebra()[i] * y);
      const double gnorm = gamma.norm();
      if (gnorm <= 1e-13 * (1.0 + std::abs(f))) break;  // stationary

      VecD step;
      if (obj.a && obj.residual(y) < cfg.gn_switch * scale) {
        const VecD r = *obj.a * y - obj.c;
        MatD jac(obj.a->rows(), m);
        for (int i = 0; i < m; ++i) jac.col(i) = *obj.a * (group.algebra()[i] * y);
        step = jac.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(-r);
      } else {
        step = -gamma / (1.0 + gnorm);
      }

      MatD w = MatD::Zero(dim, dim);
      for (int i = 0; i < m; ++i) w += step[i] * group.algebra()[i];
      const double slope = gamma.dot(step);  // negative for a descent step
      double t = 1.0;
      bool moved = false;
      for (int bt = 0; bt < 40; ++bt) {
        const MatD e = matrix_exp(t * w);
        const VecD y2 = e * y;
        const double f2 = obj.value(y2);
        if (f2 <= f + 1e-4 * t * slope) {
          g = e * g;
          y = y2;
          f = f2;
          moved = true;
          break;
        }
        t *= 0.5;
      }
      if (!moved) break;
      if ((it + 1) % 25 == 0) {
        y = g * x;  // contain drift from repeated retractions
        f = obj.value(y);
      }
    }

    y = g * x;
    const double fv = obj.value(y);
    if (!have_best || fv < best_value) {
      have_best = true;
      best_value = fv;
      best.element = g;
      best.point = y;
      best.residual = obj.residual(y);
      best.iterations = it;
      best.converged = obj.a && best.residual <= cfg.tol * scale;
    }
    if (best.converged) return best;
  }
  return best;
}

} // namespace

DescentResult descend_to_section(const GroupModel& group, const MatD& projector,
                                 const VecD& x, const DescentConfig& cfg,
                                 Rng& rng) {
  const int dim = group.ambient_dim();
  const double scale = 1.0 + x.norm();
  const MatD a = MatD::Identity(dim, dim) - projector;

  if (group.finite()) {
    const auto& g = group.as_finite();
    DescentResult best;
    for (std::size_t i = 0; i < g.order(); ++i) {
      VecD y = g.apply_float(i, x);
      double res = (a * y).norm();
      if (i == 0 || res < best.residual) {
        best.point = y;
        best.element = g.elements_float()[i];
        best.residual = res;
      }
    }
    best.converged = best.residual <= cfg.tol * scale;
    best.iterations = int(g.order());
    return best;
  }

  OrbitObjective obj;
  obj.a = a;
  obj.c = VecD::Zero(dim);
  return minimize_over_orbit(group.as_lie(), x, obj, cfg, rng, nullptr);
}

DescentResult ascend_support(const LieGroupModel& group, const VecD& x,
                             const VecD& u, const DescentConfig& cfg,
                             Rng& rng) {
  const int dim = group.ambient_dim();

  // Cheap pool of orbit samples; the top ones seed the careful ascents so a
  // bad basin cannot hide the global ordering.
  const int pool = std::max(64, 16 * cfg.starts);
  std::vector<std::pair<double, MatD>> ranked;
  ranked.reserve(pool + 1);
  ranked.push_back({u.dot(x), MatD::Identity(dim, dim)});
  for (int i = 0; i < pool; ++i) {
    MatD g = group.sample_element(rng);
    ranked.push_back({u.dot(g * x), std::move(g)});
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& p, const auto& q) { return p.first > q.first; });
  std::vector<MatD> warm;
  for (int i = 0; i < std::max(1, cfg.starts / 2) && i < int(ranked.size()); ++i)
    warm.push_back(ranked[i].second);

  OrbitObjective obj;
  obj.l = -u;  // minimize -<u, y>
  DescentResult r = minimize_over_orbit(group, x, obj, cfg, rng, &warm);

  // Converged means the Riemannian gradient vanished at the best point.
  const double scale = (1.0 + x.norm()) * (1.0 + u.norm());
  VecD grad(group.algebra_dim());
  for (int i = 0; i < group.algebra_dim(); ++i)
    grad[i] = u.dot(group.algebra()[i] * r.point);
  r.residual = grad.norm();
  r.converged = r.residual <= 1e-7 * scale;
  return r;
}

DescentResult match_point(const LieGroupModel& group, const VecD& x,
                          const VecD& target, const DescentConfig& cfg,
                          Rng& rng) {
  const int dim = group.ambient_dim();
  OrbitObjective obj;
  obj.a = MatD::Identity(dim, dim);
  obj.c = target;
  return minimize_over_orbit(group, x, obj, cfg, rng, nullptr);
}

std::optional<ExactDescent> descend_to_section_exact(
    const FiniteMatrixGroup& group, const SubspaceE& sigma, const VecE& x) {
  std::optional<ExactDescent> best;
  for (std::size_t i = 0; i < group.order(); ++i) {
    VecE y = group.apply(i, x);
    if (!sigma.contains(y)) continue;
    if (!best || lex_less(y, best->point)) best = ExactDescent{y, i};
  }
  return best;
}

} // namespace orbitface
