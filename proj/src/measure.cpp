#include "wfr/measure.hpp"

#include <cmath>
#include <random>

namespace wfr {

UnitVector::UnitVector(double x, double y, double z) : v_(x, y, z) {
  if (!v_.allFinite()) throw invalid_input("support vector has non-finite components");
  const double norm = v_.norm();
  if (norm < 1e-300) throw invalid_input("support vector has zero norm");
  v_ /= norm;
}

DiscreteMeasure::DiscreteMeasure(std::vector<double> weights, std::vector<UnitVector> supports)
    : weights_(std::move(weights)), supports_(std::move(supports)) {
  if (weights_.empty()) throw invalid_input("measure needs at least one atom");
  if (weights_.size() != supports_.size())
    throw invalid_input("weights and supports have different lengths");
  for (double w : weights_) {
    if (!std::isfinite(w) || w <= 0.0) throw invalid_input("weights must be positive and finite");
    total_mass_ += w;
  }
}

DiscreteMeasure DiscreteMeasure::consolidated(double dot_threshold) const {
  std::vector<double> w;
  std::vector<UnitVector> s;
  for (size_t i = 0; i < weights_.size(); ++i) {
    bool merged = false;
    for (size_t k = 0; k < s.size(); ++k) {
      if (supports_[i].dot(s[k]) > dot_threshold) {
        w[k] += weights_[i];
        merged = true;
        break;
      }
    }
    if (!merged) {
      w.push_back(weights_[i]);
      s.push_back(supports_[i]);
    }
  }
  return DiscreteMeasure(std::move(w), std::move(s));
}

Kernel Kernel::wfr(double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw invalid_input("kernel scale rho must be positive");
  return Kernel{Family::wfr, rho};
}

Kernel Kernel::ghk(double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw invalid_input("kernel scale rho must be positive");
  return Kernel{Family::ghk, rho};
}

CostMatrix build_cost_matrix(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                             const Kernel& kernel) {
  const int m = mu.size();
  const int n = nu.size();
  Eigen::MatrixXd omega(m, n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      const double dot = mu.support(i).dot(nu.support(j));
      if (kernel.family == Kernel::Family::wfr && kernel.rho == 1.0) {
        // The geodesic round trip cos(acos(.)) only adds rounding noise here.
        omega(i, j) = dot;
        continue;
      }
      const double d = std::acos(std::clamp(dot, -1.0, 1.0));
      omega(i, j) = kernel.family == Kernel::Family::wfr
                        ? std::cos(d / kernel.rho)
                        : std::exp(-d * d / (2.0 * kernel.rho));
    }
  }
  return CostMatrix{std::move(omega)};
}

namespace {

double uniform01(std::mt19937_64& rng) {
  // 53 random mantissa bits, value in [0, 1). Avoids distribution objects so
  // streams are identical across standard library implementations.
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void gaussian_pair(std::mt19937_64& rng, double& g0, double& g1) {
  const double u1 = 1.0 - uniform01(rng);  // (0, 1], keeps the log finite
  const double u2 = uniform01(rng);
  const double r = std::sqrt(-2.0 * std::log(u1));
  g0 = r * std::cos(2.0 * M_PI * u2);
  g1 = r * std::sin(2.0 * M_PI * u2);
}

}  // namespace

DiscreteMeasure random_measure(int n, std::uint64_t seed, double mass_scale) {
  if (n < 1) throw invalid_input("random measure needs at least one atom");
  if (!(mass_scale > 0.0) || !std::isfinite(mass_scale))
    throw invalid_input("mass scale must be positive");
  std::mt19937_64 rng(seed);
  std::vector<double> weights;
  std::vector<UnitVector> supports;
  weights.reserve(static_cast<size_t>(n));
  supports.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    double g[4];
    Eigen::Vector3d v;
    do {
      gaussian_pair(rng, g[0], g[1]);
      gaussian_pair(rng, g[2], g[3]);
      v = Eigen::Vector3d(g[0], g[1], g[2]);
    } while (v.norm() < 1e-12);
    supports.emplace_back(v);
    weights.push_back(mass_scale * (1.0 - uniform01(rng)));  // (0, mass_scale]
  }
  return DiscreteMeasure(std::move(weights), std::move(supports));
}

}  // namespace wfr
