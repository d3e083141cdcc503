#pragma once

#include <Eigen/Dense>
#include <memory>

#include "wfr/measure.hpp"

namespace wfr {

// Pair of allocation matrices describing how mass moves between two measures
// with m and n atoms. Both matrices are (m+1) x (n+1); row and column 0 are
// the creation/destruction slots. `source(i,j)` is mass leaving atom i of the
// first measure toward atom j of the second, `target(i,j)` is mass arriving.
//
// Feasibility: entries nonnegative, row i >= 1 of `source` sums to weight a_i,
// row 0 of `source` is zero, column j >= 1 of `target` sums to b_j, column 0
// of `target` is zero.
struct SemiCoupling {
  Eigen::MatrixXd source;
  Eigen::MatrixXd target;

  int m() const { return static_cast<int>(source.rows()) - 1; }
  int n() const { return static_cast<int>(source.cols()) - 1; }
};

// Throws invalid_input when the pair breaks the feasibility conditions above.
void check_semi_coupling(const SemiCoupling& c, const DiscreteMeasure& mu,
                         const DiscreteMeasure& nu, double tol = 1e-9);

// A semi-coupling restricted against a kernel matrix: transport cells with
// Omega_ij <= 0 carry no mass, and a slot entry (i,0) or (0,j) carries mass
// only when its row/column of Omega has no positive entry. The value function
// attains its maximum on this set and is concave there.
struct RestrictedCoupling : SemiCoupling {
  std::shared_ptr<const CostMatrix> omega;
};

bool satisfies_restriction(const SemiCoupling& c, const CostMatrix& omega, double tol = 0.0);

// F(c) = sum_{i,j >= 1} sqrt(source_ij * target_ij) * Omega_ij.
// 2 F enters the squared distance as the negative term.
double value_function(const SemiCoupling& c, const CostMatrix& omega);

// Moves mass off nonpositive-kernel cells (and out of slots that the
// restriction forbids) into each row's/column's best kernel cell, lowest index
// on ties. Never decreases the value function; marginals are preserved exactly.
RestrictedCoupling project_to_restricted(const SemiCoupling& c,
                                         std::shared_ptr<const CostMatrix> omega);
RestrictedCoupling project_to_restricted(const SemiCoupling& c, const CostMatrix& omega);

// Strictly positive on every transport cell the restriction allows: row i of
// `source` splits a_i evenly over {j : Omega_ij > 0}, or parks it in the
// destruction slot when that set is empty; columns of `target` likewise.
RestrictedCoupling uniform_interior_start(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                          std::shared_ptr<const CostMatrix> omega);
RestrictedCoupling uniform_interior_start(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                          const CostMatrix& omega);

}  // namespace wfr
