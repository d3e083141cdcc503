#include "wfr/mds.hpp"

#include <cmath>

#include "wfr/errors.hpp"

namespace wfr {

MdsResult classical_mds(const Eigen::MatrixXd& distances, int dim) {
  const auto n = distances.rows();
  if (n < 1 || distances.cols() != n) throw invalid_input("distance matrix must be square");
  if (!distances.allFinite()) throw invalid_input("distance matrix has non-finite entries");
  if ((distances - distances.transpose()).cwiseAbs().maxCoeff() > 1e-9)
    throw invalid_input("distance matrix must be symmetric");
  if (dim < 1) throw invalid_input("embedding dimension must be positive");

  const Eigen::MatrixXd squared = distances.cwiseAbs2();
  const Eigen::MatrixXd centering =
      Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / n);
  const Eigen::MatrixXd gram = -0.5 * centering * squared * centering;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  if (eig.info() != Eigen::Success) throw invalid_input("eigendecomposition failed");

  MdsResult out;
  out.coords = Eigen::MatrixXd::Zero(n, dim);
  out.eigenvalues = Eigen::VectorXd::Zero(dim);
  // Eigen sorts ascending; walk the top of the spectrum. Negative values are
  // clamped, but only materially negative ones count toward the warning;
  // roundoff turns exact zeros into -1e-17 routinely.
  const double material = 1e-12 * std::max(std::abs(eig.eigenvalues()(n - 1)), 1.0);
  for (int k = 0; k < dim && k < n; ++k) {
    const auto source = n - 1 - k;
    double lambda = eig.eigenvalues()(source);
    if (lambda < 0.0) {
      if (lambda < -material) ++out.clamped_negative;
      lambda = 0.0;
    }
    out.eigenvalues(k) = lambda;
    out.coords.col(k) = std::sqrt(lambda) * eig.eigenvectors().col(source);
  }
  return out;
}

}  // namespace wfr
