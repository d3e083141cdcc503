#pragma once

#include <Eigen/Dense>

namespace wfr {

struct MdsResult {
  Eigen::MatrixXd coords;       // one row per input point
  Eigen::VectorXd eigenvalues;  // of the centered Gram matrix, largest first
  int clamped_negative = 0;     // axes whose eigenvalue fell below zero
};

// Classical (Torgerson) multidimensional scaling: double-center the squared
// distances and embed along the top eigenvectors scaled by sqrt(eigenvalue).
// Negative eigenvalues (non-Euclidean inputs) are clamped to zero and counted.
MdsResult classical_mds(const Eigen::MatrixXd& distances, int dim = 3);

}  // namespace wfr
