#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "wfr/errors.hpp"

namespace wfr {

// Point on the unit sphere. Inputs are renormalized on construction so the
// invariant |norm - 1| <= 1e-12 holds afterwards.
class UnitVector {
 public:
  UnitVector() = default;
  UnitVector(double x, double y, double z);
  explicit UnitVector(const Eigen::Vector3d& v) : UnitVector(v.x(), v.y(), v.z()) {}

  double x() const { return v_.x(); }
  double y() const { return v_.y(); }
  double z() const { return v_.z(); }
  const Eigen::Vector3d& vec() const { return v_; }

  double dot(const UnitVector& o) const { return v_.dot(o.v_); }

 private:
  Eigen::Vector3d v_{0.0, 0.0, 1.0};
};

// Finitely supported nonnegative measure on the sphere: sum_i weight_i * delta(support_i).
// Weights are strictly positive and finite; at least one atom.
class DiscreteMeasure {
 public:
  DiscreteMeasure(std::vector<double> weights, std::vector<UnitVector> supports);

  int size() const { return static_cast<int>(weights_.size()); }
  double total_mass() const { return total_mass_; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<UnitVector>& supports() const { return supports_; }
  double weight(int i) const { return weights_[static_cast<size_t>(i)]; }
  const UnitVector& support(int i) const { return supports_[static_cast<size_t>(i)]; }

  // Merges atoms whose supports satisfy dot > threshold, summing their weights.
  // The first occurrence keeps its support vector.
  DiscreteMeasure consolidated(double dot_threshold = 1.0 - 1e-12) const;

 private:
  std::vector<double> weights_;
  std::vector<UnitVector> supports_;
  double total_mass_ = 0.0;
};

// Ground kernel evaluated at pairs of support points.
//   wfr: Omega = cos(d(u,v)/rho), with the raw dot product at rho = 1
//   ghk: Omega = exp(-d(u,v)^2 / (2 rho))
// where d is the geodesic (arc length) distance on the sphere.
struct Kernel {
  enum class Family { wfr, ghk };
  Family family = Family::wfr;
  double rho = 1.0;

  static Kernel wfr(double rho = 1.0);
  static Kernel ghk(double rho);
};

// Kernel values Omega_ij = k(u_i, v_j) for all support pairs, entries in [-1, 1].
struct CostMatrix {
  Eigen::MatrixXd entries;

  int rows() const { return static_cast<int>(entries.rows()); }
  int cols() const { return static_cast<int>(entries.cols()); }
  double operator()(int i, int j) const { return entries(i, j); }
};

CostMatrix build_cost_matrix(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                             const Kernel& kernel);

// n atoms with supports uniform on the sphere (normalized Gaussian triples) and
// weights uniform on (0, mass_scale]. Deterministic for a fixed seed.
DiscreteMeasure random_measure(int n, std::uint64_t seed, double mass_scale = 1.0);

}  // namespace wfr
