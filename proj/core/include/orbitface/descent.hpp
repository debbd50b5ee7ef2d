#pragma once

#include <optional>

#include "orbitface/group.hpp"
#include "orbitface/rng.hpp"
#include "orbitface/subspace.hpp"

namespace orbitface {

struct DescentConfig {
  int starts = 16;
  int max_iters = 500;
  double tol = 1e-9;        // success threshold, scaled by 1 + |x|
  double gn_switch = 1e-3;  // residual fraction below which Gauss-Newton kicks in
};

struct DescentResult {
  VecD point;       // g x for the best g found
  MatD element;     // the group element itself
  double residual = std::numeric_limits<double>::infinity();
  bool converged = false;
  int iterations = 0;
};

// Minimize |(I - projector) g x| over the orbit: the nearest orbit point to the
// section, exact enumeration for finite groups.
DescentResult descend_to_section(const GroupModel& group, const MatD& projector,
                                 const VecD& x, const DescentConfig& cfg,
                                 Rng& rng);

// Maximize <u, g x> over the orbit.  `converged` reports a vanishing Riemannian
// gradient at the winner, not optimality.
DescentResult ascend_support(const LieGroupModel& group, const VecD& x,
                             const VecD& u, const DescentConfig& cfg, Rng& rng);

// Minimize |g x - target| over the orbit.
DescentResult match_point(const LieGroupModel& group, const VecD& x,
                          const VecD& target, const DescentConfig& cfg,
                          Rng& rng);

struct ExactDescent {
  VecE point;
  std::size_t element_index;
};

// Lexicographically first orbit point lying in the section, if any.
std::optional<ExactDescent> descend_to_section_exact(
    const FiniteMatrixGroup& group, const SubspaceE& sigma, const VecE& x);

} // namespace orbitface
