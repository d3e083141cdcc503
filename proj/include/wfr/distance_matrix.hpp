#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "wfr/measure.hpp"
#include "wfr/solver.hpp"

namespace wfr {

// Pairwise distances over a list of inputs, all mesh files (.off/.obj, shape
// distance) or all measure files (.csv/.json, transport distance under the
// given kernel). Pairs run in parallel up to `parallelism` worker threads.
struct DistanceMatrixJob {
  std::vector<std::string> inputs;
  Kernel kernel;
  SolverConfig config;
  int parallelism = 0;  // 0 picks the hardware thread count
  bool consolidate = true;
};

struct DistanceMatrixResult {
  std::vector<std::string> names;  // input basenames
  Eigen::MatrixXd distances;       // symmetric, zero diagonal, NaN on failure
  std::vector<std::pair<int, int>> failures;
  std::vector<std::string> failure_messages;
};

DistanceMatrixResult run_distance_matrix(const DistanceMatrixJob& job);

}  // namespace wfr
