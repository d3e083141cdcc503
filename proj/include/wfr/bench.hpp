#pragma once

#include <cstdint>
#include <vector>

#include "wfr/solver.hpp"

namespace wfr {

// Accuracy and timing comparison between the exact ascent and the entropic
// reference on random measure pairs of growing size.
struct BenchParams {
  std::vector<int> sizes{128};
  int pairs = 100;
  double lambda = 1e-3;
  std::uint64_t seed = 0;
  double mass_scale = 30.0;
  int sinkhorn_max_iterations = 2000;
  SolverConfig solver;
};

struct BenchRow {
  int n = 0;
  int pairs = 0;
  double mean_exact_distance = 0.0;
  double mean_sinkhorn_distance = 0.0;
  // Relative excess of the entropic cost over the squared exact distance,
  // (cost - d^2) / d^2, averaged over pairs, with its sample variance.
  double mean_rel_error = 0.0;
  double var_rel_error = 0.0;
  double mean_time_exact_s = 0.0;
  double mean_time_sinkhorn_s = 0.0;
  int exact_not_above_sinkhorn = 0;  // pairs with d^2 <= entropic cost
};

std::vector<BenchRow> run_benchmark(const BenchParams& params);

}  // namespace wfr
