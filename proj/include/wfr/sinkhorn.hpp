#pragma once

#include <Eigen/Dense>

#include "wfr/coupling.hpp"
#include "wfr/measure.hpp"

namespace wfr {

// Entropic reference solver for the same squared distance, used to reproduce
// the accuracy comparison against the exact block ascent. The squared distance
// is the infimum over plans gamma of
//   KL(row marginals | mu) + KL(column marginals | nu) + sum_ij c_ij gamma_ij
// with ground cost c_ij = -log(cos^2(min(d_ij, pi/2))); pairs further apart
// than pi/2 are unreachable and their plan entries stay exactly zero.

struct TransportPlan {
  Eigen::MatrixXd gamma;  // m x n over atom pairs, no slot row/column
};

struct SinkhornResult {
  TransportPlan plan;
  // Unregularized objective evaluated at the returned plan. Upper bound of the
  // squared distance; tightens as lambda shrinks.
  double cost = 0.0;
};

// Scaling iterations on the entropic relaxation with regularization weight
// lambda, run in the log domain throughout so small lambda stays stable.
SinkhornResult sinkhorn_solve(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                              double lambda, int max_iterations = 2000);

// Plan equivalent to a semi-coupling: gamma_ij = sqrt(source_ij * target_ij)
// * max(Omega_ij, 0), where Omega is the plain inner-product kernel. At the
// ascent optimum the unregularized objective of this plan equals the squared
// distance.
TransportPlan plan_from_semicoupling(const SemiCoupling& c, const CostMatrix& omega);

// Unregularized objective of an arbitrary plan against the two measures.
double plan_cost(const TransportPlan& plan, const DiscreteMeasure& mu, const DiscreteMeasure& nu);

}  // namespace wfr
