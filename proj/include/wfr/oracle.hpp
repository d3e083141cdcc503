#pragma once

#include <vector>

#include "wfr/coupling.hpp"
#include "wfr/measure.hpp"

namespace wfr {

// Brute-force maximizers of the value function on small instances, used to
// cross-check the fast solver. Deliberately independent of the solver's block
// updates: these work in square-root variables where the feasible set is a
// product of sphere patches and the objective is smooth.

struct OracleResult {
  enum class Method { grid, projected_ascent };
  double f_star = 0.0;
  RestrictedCoupling argmax;
  Method method = Method::projected_ascent;
};

// Projected gradient ascent over (P, Q) with source = P^2, target = Q^2,
// elementwise. Row i of P lives on the sphere of radius sqrt(a_i) over the
// cells the restriction allows, columns of Q likewise. Runs one interior start
// plus `restarts` random interior starts and keeps the best value (ties go to
// the earliest run). Guarded to m * n <= 16.
OracleResult brute_force_max(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                             const CostMatrix& omega, int restarts = 8);

// Exhaustive grid over the free simplex coordinates, 21 points per coordinate.
// Coarse by construction; kept as a second, dumber check for m, n <= 2.
OracleResult grid_max(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                      const CostMatrix& omega);

struct OracleInstance {
  DiscreteMeasure mu;
  DiscreteMeasure nu;
  CostMatrix omega;
};

struct OracleComparison {
  double max_abs_deviation = 0.0;
  std::vector<double> deviations;
  bool pass = false;
};

// Runs the solver and the ascent oracle on every instance and compares the
// maxima they report.
OracleComparison compare_solver_to_oracle(const std::vector<OracleInstance>& instances,
                                          double tolerance);

}  // namespace wfr
