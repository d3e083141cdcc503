#include "wfr/coupling.hpp"

#include <cmath>

namespace wfr {

namespace {

void check_dims(const SemiCoupling& c, const CostMatrix& omega) {
  if (c.source.rows() != c.target.rows() || c.source.cols() != c.target.cols())
    throw invalid_input("coupling matrices have different shapes");
  if (c.source.rows() != omega.rows() + 1 || c.source.cols() != omega.cols() + 1)
    throw invalid_input("coupling shape does not match the kernel matrix");
}

// Index of the best strictly positive kernel entry in a row (resp. column),
// in coupling coordinates (1-based atoms, 0 meaning "none, use the slot").
std::vector<int> best_in_rows(const CostMatrix& omega) {
  std::vector<int> k(static_cast<size_t>(omega.rows()), 0);
  for (int i = 0; i < omega.rows(); ++i) {
    double best = 0.0;
    for (int j = 0; j < omega.cols(); ++j) {
      if (omega(i, j) > best) {
        best = omega(i, j);
        k[static_cast<size_t>(i)] = j + 1;
      }
    }
  }
  return k;
}

std::vector<int> best_in_cols(const CostMatrix& omega) {
  std::vector<int> l(static_cast<size_t>(omega.cols()), 0);
  for (int j = 0; j < omega.cols(); ++j) {
    double best = 0.0;
    for (int i = 0; i < omega.rows(); ++i) {
      if (omega(i, j) > best) {
        best = omega(i, j);
        l[static_cast<size_t>(j)] = i + 1;
      }
    }
  }
  return l;
}

}  // namespace

void check_semi_coupling(const SemiCoupling& c, const DiscreteMeasure& mu,
                         const DiscreteMeasure& nu, double tol) {
  const int m = mu.size();
  const int n = nu.size();
  if (c.source.rows() != m + 1 || c.source.cols() != n + 1 || c.target.rows() != m + 1 ||
      c.target.cols() != n + 1)
    throw invalid_input("coupling shape does not match the measures");
  if (c.source.minCoeff() < -tol || c.target.minCoeff() < -tol)
    throw invalid_input("coupling has negative entries");
  for (int j = 0; j <= n; ++j) {
    if (std::abs(c.source(0, j)) > tol)
      throw invalid_input("creation row of the source matrix must be zero");
  }
  for (int i = 0; i <= m; ++i) {
    if (std::abs(c.target(i, 0)) > tol)
      throw invalid_input("destruction column of the target matrix must be zero");
  }
  for (int i = 1; i <= m; ++i) {
    const double a = mu.weight(i - 1);
    if (std::abs(c.source.row(i).sum() - a) > tol * std::max(1.0, a))
      throw invalid_input("source row sums do not match the first measure's weights");
  }
  for (int j = 1; j <= n; ++j) {
    const double b = nu.weight(j - 1);
    if (std::abs(c.target.col(j).sum() - b) > tol * std::max(1.0, b))
      throw invalid_input("target column sums do not match the second measure's weights");
  }
}

bool satisfies_restriction(const SemiCoupling& c, const CostMatrix& omega, double tol) {
  check_dims(c, omega);
  const int m = omega.rows();
  const int n = omega.cols();
  for (int i = 1; i <= m; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (omega(i - 1, j - 1) <= 0.0 &&
          (std::abs(c.source(i, j)) > tol || std::abs(c.target(i, j)) > tol))
        return false;
    }
  }
  const auto k = best_in_rows(omega);
  const auto l = best_in_cols(omega);
  for (int i = 1; i <= m; ++i) {
    if (k[static_cast<size_t>(i - 1)] != 0 && std::abs(c.source(i, 0)) > tol) return false;
  }
  for (int j = 1; j <= n; ++j) {
    if (l[static_cast<size_t>(j - 1)] != 0 && std::abs(c.target(0, j)) > tol) return false;
  }
  return true;
}

double value_function(const SemiCoupling& c, const CostMatrix& omega) {
  check_dims(c, omega);
  const int m = omega.rows();
  const int n = omega.cols();
  double f = 0.0;
  for (int i = 1; i <= m; ++i) {
    for (int j = 1; j <= n; ++j) {
      const double p = c.source(i, j) * c.target(i, j);
      if (p > 0.0) f += std::sqrt(p) * omega(i - 1, j - 1);
    }
  }
  return f;
}

RestrictedCoupling project_to_restricted(const SemiCoupling& c,
                                         std::shared_ptr<const CostMatrix> omega) {
  check_dims(c, *omega);
  const int m = omega->rows();
  const int n = omega->cols();
  const auto k = best_in_rows(*omega);
  const auto l = best_in_cols(*omega);

  RestrictedCoupling out;
  out.source = c.source;
  out.target = c.target;
  out.omega = std::move(omega);

  // Vacate every nonpositive-kernel cell into the row's (column's) best cell,
  // or into the slot when the whole row (column) is nonpositive.
  for (int i = 1; i <= m; ++i) {
    for (int j = 1; j <= n; ++j) {
      if ((*out.omega)(i - 1, j - 1) > 0.0) continue;
      out.source(i, k[static_cast<size_t>(i - 1)]) += out.source(i, j);
      out.source(i, j) = 0.0;
      out.target(l[static_cast<size_t>(j - 1)], j) += out.target(i, j);
      out.target(i, j) = 0.0;
    }
  }
  // Slot mass is only allowed to stay where no positive cell exists.
  for (int i = 1; i <= m; ++i) {
    const int ki = k[static_cast<size_t>(i - 1)];
    if (ki != 0) {
      out.source(i, ki) += out.source(i, 0);
      out.source(i, 0) = 0.0;
    }
  }
  for (int j = 1; j <= n; ++j) {
    const int lj = l[static_cast<size_t>(j - 1)];
    if (lj != 0) {
      out.target(lj, j) += out.target(0, j);
      out.target(0, j) = 0.0;
    }
  }
  return out;
}

RestrictedCoupling project_to_restricted(const SemiCoupling& c, const CostMatrix& omega) {
  return project_to_restricted(c, std::make_shared<const CostMatrix>(omega));
}

RestrictedCoupling uniform_interior_start(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                          std::shared_ptr<const CostMatrix> omega) {
  const int m = mu.size();
  const int n = nu.size();
  if (omega->rows() != m || omega->cols() != n)
    throw invalid_input("kernel matrix shape does not match the measures");

  RestrictedCoupling c;
  c.source = Eigen::MatrixXd::Zero(m + 1, n + 1);
  c.target = Eigen::MatrixXd::Zero(m + 1, n + 1);
  c.omega = std::move(omega);

  for (int i = 1; i <= m; ++i) {
    int count = 0;
    for (int j = 1; j <= n; ++j)
      if ((*c.omega)(i - 1, j - 1) > 0.0) ++count;
    if (count == 0) {
      c.source(i, 0) = mu.weight(i - 1);
      continue;
    }
    const double share = mu.weight(i - 1) / count;
    for (int j = 1; j <= n; ++j)
      if ((*c.omega)(i - 1, j - 1) > 0.0) c.source(i, j) = share;
  }
  for (int j = 1; j <= n; ++j) {
    int count = 0;
    for (int i = 1; i <= m; ++i)
      if ((*c.omega)(i - 1, j - 1) > 0.0) ++count;
    if (count == 0) {
      c.target(0, j) = nu.weight(j - 1);
      continue;
    }
    const double share = nu.weight(j - 1) / count;
    for (int i = 1; i <= m; ++i)
      if ((*c.omega)(i - 1, j - 1) > 0.0) c.target(i, j) = share;
  }
  return c;
}

RestrictedCoupling uniform_interior_start(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                          const CostMatrix& omega) {
  return uniform_interior_start(mu, nu, std::make_shared<const CostMatrix>(omega));
}

}  // namespace wfr
