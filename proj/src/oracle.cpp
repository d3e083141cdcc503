#include "wfr/oracle.hpp"

#include <cmath>
#include <random>

#include "wfr/solver.hpp"

namespace wfr {

namespace {

struct SqrtVars {
  // Square roots of the allocation matrices over atom cells only (m x n,
  // 0-based). Cells with Omega <= 0 are pinned to zero by the masks.
  Eigen::MatrixXd P, Q;
  Eigen::MatrixXd row_mask, col_mask;  // 1.0 on cells the restriction allows
  std::vector<bool> row_free, col_free;
};

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Rescales each free row of P back onto its sphere, and each free column of Q.
void renormalize(SqrtVars& v, const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  for (int i = 0; i < v.P.rows(); ++i) {
    if (!v.row_free[static_cast<size_t>(i)]) continue;
    const double norm = v.P.row(i).norm();
    if (norm > 0.0) v.P.row(i) *= std::sqrt(mu.weight(i)) / norm;
  }
  for (int j = 0; j < v.Q.cols(); ++j) {
    if (!v.col_free[static_cast<size_t>(j)]) continue;
    const double norm = v.Q.col(j).norm();
    if (norm > 0.0) v.Q.col(j) *= std::sqrt(nu.weight(j)) / norm;
  }
}

double objective(const SqrtVars& v, const CostMatrix& omega) {
  double f = 0.0;
  for (int i = 0; i < v.P.rows(); ++i)
    for (int j = 0; j < v.P.cols(); ++j)
      if (omega(i, j) > 0.0) f += v.P(i, j) * v.Q(i, j) * omega(i, j);
  return f;
}

SqrtVars make_vars(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                   const CostMatrix& omega) {
  const int m = mu.size();
  const int n = nu.size();
  SqrtVars v;
  v.P = Eigen::MatrixXd::Zero(m, n);
  v.Q = Eigen::MatrixXd::Zero(m, n);
  v.row_mask = Eigen::MatrixXd::Zero(m, n);
  v.col_mask = Eigen::MatrixXd::Zero(m, n);
  v.row_free.assign(static_cast<size_t>(m), false);
  v.col_free.assign(static_cast<size_t>(n), false);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      if (omega(i, j) > 0.0) {
        v.row_mask(i, j) = 1.0;
        v.col_mask(i, j) = 1.0;
        v.row_free[static_cast<size_t>(i)] = true;
        v.col_free[static_cast<size_t>(j)] = true;
      }
  return v;
}

void fill_start(SqrtVars& v, const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                std::mt19937_64* rng) {
  for (int i = 0; i < v.P.rows(); ++i)
    for (int j = 0; j < v.P.cols(); ++j) {
      if (v.row_mask(i, j) == 0.0) continue;
      const double r = rng ? -std::log(1.0 - uniform01(*rng)) : 1.0;
      v.P(i, j) = std::sqrt(r);
      const double s = rng ? -std::log(1.0 - uniform01(*rng)) : 1.0;
      v.Q(i, j) = std::sqrt(s);
    }
  renormalize(v, mu, nu);
}

// Tangential component of the euclidean gradient, row spheres for P and
// column spheres for Q. Its norm is the first-order stationarity residual.
double riemannian_gradient(const SqrtVars& v, const CostMatrix& omega, Eigen::MatrixXd& gp,
                           Eigen::MatrixXd& gq) {
  gp.setZero(v.P.rows(), v.P.cols());
  gq.setZero(v.P.rows(), v.P.cols());
  for (int i = 0; i < v.P.rows(); ++i)
    for (int j = 0; j < v.P.cols(); ++j)
      if (omega(i, j) > 0.0) {
        gp(i, j) = v.Q(i, j) * omega(i, j);
        gq(i, j) = v.P(i, j) * omega(i, j);
      }
  double norm2 = 0.0;
  for (int i = 0; i < v.P.rows(); ++i) {
    if (!v.row_free[static_cast<size_t>(i)]) continue;
    const double rr = v.P.row(i).squaredNorm();
    const double proj = v.P.row(i).dot(gp.row(i)) / rr;
    gp.row(i) -= proj * v.P.row(i);
    norm2 += gp.row(i).squaredNorm();
  }
  for (int j = 0; j < v.Q.cols(); ++j) {
    if (!v.col_free[static_cast<size_t>(j)]) continue;
    const double cc = v.Q.col(j).squaredNorm();
    const double proj = v.Q.col(j).dot(gq.col(j)) / cc;
    gq.col(j) -= proj * v.Q.col(j);
    norm2 += gq.col(j).squaredNorm();
  }
  return std::sqrt(norm2);
}

double ascend(SqrtVars& v, const DiscreteMeasure& mu, const DiscreteMeasure& nu,
              const CostMatrix& omega) {
  constexpr int kMaxSteps = 100000;
  constexpr double kGradTol = 1e-12;
  Eigen::MatrixXd gp, gq;
  double f = objective(v, omega);
  double step = 1.0;
  for (int it = 0; it < kMaxSteps; ++it) {
    const double gnorm = riemannian_gradient(v, omega, gp, gq);
    if (gnorm <= kGradTol) break;
    bool accepted = false;
    while (step >= 1e-18) {
      SqrtVars trial = v;
      trial.P += step * gp;
      trial.Q += step * gq;
      trial.P = trial.P.cwiseMax(0.0).cwiseProduct(trial.row_mask);
      trial.Q = trial.Q.cwiseMax(0.0).cwiseProduct(trial.col_mask);
      renormalize(trial, mu, nu);
      const double ft = objective(trial, omega);
      if (ft >= f + 1e-4 * step * gnorm * gnorm) {
        v = std::move(trial);
        f = ft;
        step *= 2.0;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // line search exhausted, roundoff plateau
  }
  return f;
}

RestrictedCoupling pad_to_coupling(const SqrtVars& v, const DiscreteMeasure& mu,
                                   const DiscreteMeasure& nu, const CostMatrix& omega) {
  const int m = mu.size();
  const int n = nu.size();
  RestrictedCoupling c;
  c.source = Eigen::MatrixXd::Zero(m + 1, n + 1);
  c.target = Eigen::MatrixXd::Zero(m + 1, n + 1);
  c.omega = std::make_shared<const CostMatrix>(omega);
  for (int i = 0; i < m; ++i) {
    if (!v.row_free[static_cast<size_t>(i)]) {
      c.source(i + 1, 0) = mu.weight(i);
      continue;
    }
    for (int j = 0; j < n; ++j) c.source(i + 1, j + 1) = v.P(i, j) * v.P(i, j);
  }
  for (int j = 0; j < n; ++j) {
    if (!v.col_free[static_cast<size_t>(j)]) {
      c.target(0, j + 1) = nu.weight(j);
      continue;
    }
    for (int i = 0; i < m; ++i) c.target(i + 1, j + 1) = v.Q(i, j) * v.Q(i, j);
  }
  return c;
}

void check_instance(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                    const CostMatrix& omega) {
  if (omega.rows() != mu.size() || omega.cols() != nu.size())
    throw invalid_input("kernel matrix shape does not match the measures");
  if (mu.size() * nu.size() > 16)
    throw invalid_input("oracle instances are limited to m * n <= 16");
}

}  // namespace

OracleResult brute_force_max(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                             const CostMatrix& omega, int restarts) {
  check_instance(mu, nu, omega);
  if (restarts < 0) throw invalid_input("restart count must be nonnegative");

  OracleResult best;
  best.method = OracleResult::Method::projected_ascent;
  best.f_star = -1.0;
  for (int run = 0; run <= restarts; ++run) {
    SqrtVars v = make_vars(mu, nu, omega);
    if (run == 0) {
      fill_start(v, mu, nu, nullptr);
    } else {
      std::mt19937_64 rng(0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(run));
      fill_start(v, mu, nu, &rng);
    }
    const double f = ascend(v, mu, nu, omega);
    if (f > best.f_star) {
      best.f_star = f;
      best.argmax = pad_to_coupling(v, mu, nu, omega);
    }
  }
  if (best.f_star < 0.0) best.f_star = 0.0;
  return best;
}

namespace {

// Free simplex coordinates of one row (column): none, a single forced cell, or
// a split across several cells scanned on a regular grid.
struct LineDof {
  int owner;               // row index for P, column index for Q
  std::vector<int> cells;  // allowed cells, size >= 2
};

constexpr int kGridPoints = 21;

}  // namespace

OracleResult grid_max(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                      const CostMatrix& omega) {
  check_instance(mu, nu, omega);
  if (mu.size() > 2 || nu.size() > 2)
    throw invalid_input("grid oracle is limited to m <= 2 and n <= 2");
  const int m = mu.size();
  const int n = nu.size();

  Eigen::MatrixXd a_base = Eigen::MatrixXd::Zero(m, n);
  Eigen::MatrixXd b_base = Eigen::MatrixXd::Zero(m, n);
  std::vector<LineDof> a_dofs, b_dofs;
  for (int i = 0; i < m; ++i) {
    std::vector<int> cells;
    for (int j = 0; j < n; ++j)
      if (omega(i, j) > 0.0) cells.push_back(j);
    if (cells.size() == 1) a_base(i, cells[0]) = mu.weight(i);
    if (cells.size() >= 2) a_dofs.push_back({i, cells});
  }
  for (int j = 0; j < n; ++j) {
    std::vector<int> cells;
    for (int i = 0; i < m; ++i)
      if (omega(i, j) > 0.0) cells.push_back(i);
    if (cells.size() == 1) b_base(cells[0], j) = nu.weight(j);
    if (cells.size() >= 2) b_dofs.push_back({j, cells});
  }

  Eigen::MatrixXd A = a_base, B = b_base;
  double best_f = -1.0;
  Eigen::MatrixXd best_a = a_base, best_b = b_base;

  const size_t total_dofs = a_dofs.size() + b_dofs.size();
  std::vector<int> ticks(total_dofs, 0);
  while (true) {
    A = a_base;
    B = b_base;
    for (size_t d = 0; d < a_dofs.size(); ++d) {
      const double t = static_cast<double>(ticks[d]) / (kGridPoints - 1);
      const auto& dof = a_dofs[d];
      A(dof.owner, dof.cells[0]) = t * mu.weight(dof.owner);
      A(dof.owner, dof.cells[1]) = (1.0 - t) * mu.weight(dof.owner);
    }
    for (size_t d = 0; d < b_dofs.size(); ++d) {
      const double t = static_cast<double>(ticks[a_dofs.size() + d]) / (kGridPoints - 1);
      const auto& dof = b_dofs[d];
      B(dof.cells[0], dof.owner) = t * nu.weight(dof.owner);
      B(dof.cells[1], dof.owner) = (1.0 - t) * nu.weight(dof.owner);
    }
    double f = 0.0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) {
        const double p = A(i, j) * B(i, j);
        if (p > 0.0) f += std::sqrt(p) * omega(i, j);
      }
    if (f > best_f) {
      best_f = f;
      best_a = A;
      best_b = B;
    }
    size_t d = 0;
    for (; d < total_dofs; ++d) {
      if (++ticks[d] < kGridPoints) break;
      ticks[d] = 0;
    }
    if (d == total_dofs) break;
  }
  OracleResult out;
  out.method = OracleResult::Method::grid;
  out.f_star = std::max(best_f, 0.0);
  out.argmax.source = Eigen::MatrixXd::Zero(m + 1, n + 1);
  out.argmax.target = Eigen::MatrixXd::Zero(m + 1, n + 1);
  out.argmax.omega = std::make_shared<const CostMatrix>(omega);
  for (int i = 0; i < m; ++i) {
    double placed = 0.0;
    for (int j = 0; j < n; ++j) {
      out.argmax.source(i + 1, j + 1) = best_a(i, j);
      placed += best_a(i, j);
    }
    out.argmax.source(i + 1, 0) = std::max(mu.weight(i) - placed, 0.0);
  }
  for (int j = 0; j < n; ++j) {
    double placed = 0.0;
    for (int i = 0; i < m; ++i) {
      out.argmax.target(i + 1, j + 1) = best_b(i, j);
      placed += best_b(i, j);
    }
    out.argmax.target(0, j + 1) = std::max(nu.weight(j) - placed, 0.0);
  }
  return out;
}

OracleComparison compare_solver_to_oracle(const std::vector<OracleInstance>& instances,
                                          double tolerance) {
  OracleComparison cmp;
  cmp.deviations.reserve(instances.size());
  for (const auto& inst : instances) {
    const SolveReport report = solve_with_cost(inst.mu, inst.nu, inst.omega, SolverConfig{});
    const OracleResult oracle = brute_force_max(inst.mu, inst.nu, inst.omega);
    const double dev = std::abs(report.f_star - oracle.f_star);
    cmp.deviations.push_back(dev);
    cmp.max_abs_deviation = std::max(cmp.max_abs_deviation, dev);
  }
  cmp.pass = cmp.max_abs_deviation <= tolerance;
  return cmp;
}

}  // namespace wfr
