#pragma once

#include <vector>

#include "wfr/coupling.hpp"
#include "wfr/measure.hpp"

namespace wfr {

struct SolverConfig {
  // Stop once the relative gain of the value function per iteration falls
  // below epsilon.
  double epsilon = 1e-10;
  int max_iterations = 10000;
  bool record_history = false;
  // The default sweep updates the source block first, then the target block.
  // Swapping the order is exposed for experiments only.
  bool target_block_first = false;
};

struct SolveReport {
  double distance = 0.0;
  double f_star = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> history;  // value function per sweep, filled on request
  RestrictedCoupling coupling;
};

// Exact maximizer of the value function over the source matrix with the
// target matrix held fixed: row i concentrates a_i proportionally to
// target_ij * Omega_ij^2. A row whose weights all vanish sends its mass to the
// destruction slot. The target matrix passes through unchanged.
RestrictedCoupling update_source_block(const RestrictedCoupling& c, const DiscreteMeasure& mu);

// Mirror image over the target matrix, columns concentrating b_j.
RestrictedCoupling update_target_block(const RestrictedCoupling& c, const DiscreteMeasure& nu);

// Alternating block ascent from the uniform interior start. Returns the
// distance sqrt(total_mass(mu) + total_mass(nu) - 2 F*) together with the
// maximizing coupling.
SolveReport solve(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                  const Kernel& kernel = Kernel{}, const SolverConfig& config = {});

// Same ascent against a caller-supplied kernel matrix.
SolveReport solve_with_cost(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                            const CostMatrix& omega, const SolverConfig& config = {});
SolveReport solve_with_cost(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                            std::shared_ptr<const CostMatrix> omega,
                            const SolverConfig& config = {});

// Distance between single-atom measures a delta_u and b delta_v in closed
// form: sqrt(a + b - 2 sqrt(a b) max(u . v, 0)).
double closed_form_single_atom(double a, double b, const UnitVector& u, const UnitVector& v);

}  // namespace wfr
