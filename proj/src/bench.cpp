#include "wfr/bench.hpp"

#include <chrono>
#include <cmath>

#include "wfr/sinkhorn.hpp"

namespace wfr {

namespace {

std::uint64_t mix(std::uint64_t x) {
  // splitmix64 finalizer, good enough to derive independent seeds
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

std::vector<BenchRow> run_benchmark(const BenchParams& params) {
  if (params.pairs < 0) throw invalid_input("pair count must be nonnegative");
  for (int n : params.sizes)
    if (n < 1) throw invalid_input("benchmark sizes must be positive");
  std::vector<BenchRow> rows;
  if (params.pairs == 0) return rows;
  for (int n : params.sizes) {
    BenchRow row;
    row.n = n;
    row.pairs = params.pairs;
    std::vector<double> rel_errors;
    rel_errors.reserve(static_cast<size_t>(params.pairs));
    for (int k = 0; k < params.pairs; ++k) {
      const auto base = mix(params.seed ^ mix(static_cast<std::uint64_t>(n)) ^
                            mix(static_cast<std::uint64_t>(k) << 1));
      const DiscreteMeasure mu = random_measure(n, base, params.mass_scale);
      const DiscreteMeasure nu = random_measure(n, mix(base), params.mass_scale);

      auto t0 = std::chrono::steady_clock::now();
      const SolveReport exact = solve(mu, nu, Kernel{}, params.solver);
      row.mean_time_exact_s += seconds_since(t0);

      t0 = std::chrono::steady_clock::now();
      const SinkhornResult entropic =
          sinkhorn_solve(mu, nu, params.lambda, params.sinkhorn_max_iterations);
      row.mean_time_sinkhorn_s += seconds_since(t0);

      const double d2 = exact.distance * exact.distance;
      row.mean_exact_distance += exact.distance;
      row.mean_sinkhorn_distance += std::sqrt(std::max(entropic.cost, 0.0));
      if (d2 <= entropic.cost) ++row.exact_not_above_sinkhorn;
      rel_errors.push_back(d2 > 0.0 ? (entropic.cost - d2) / d2 : 0.0);
    }
    if (params.pairs > 0) {
      const double count = params.pairs;
      row.mean_exact_distance /= count;
      row.mean_sinkhorn_distance /= count;
      row.mean_time_exact_s /= count;
      row.mean_time_sinkhorn_s /= count;
      double mean = 0.0;
      for (double e : rel_errors) mean += e;
      mean /= count;
      row.mean_rel_error = mean;
      if (params.pairs > 1) {
        double var = 0.0;
        for (double e : rel_errors) var += (e - mean) * (e - mean);
        row.var_rel_error = var / (count - 1.0);
      }
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace wfr
