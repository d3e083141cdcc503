#include "wfr/distance_matrix.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <mutex>
#include <thread>

#include "wfr/io.hpp"
#include "wfr/mesh.hpp"

namespace wfr {

namespace {

bool is_mesh_path(const std::string& path) {
  const auto dot = path.rfind('.');
  if (dot == std::string::npos) return false;
  std::string ext = path.substr(dot + 1);
  for (auto& ch : ext) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return ext == "off" || ext == "obj";
}

std::string basename_of(const std::string& path) {
  const auto slash = path.find_last_of('/');
  return slash == std::string::npos ? path : path.substr(slash + 1);
}

}  // namespace

DistanceMatrixResult run_distance_matrix(const DistanceMatrixJob& job) {
  const int n = static_cast<int>(job.inputs.size());
  if (n < 2) throw invalid_input("distance matrix needs at least two inputs");
  bool any_mesh = false, any_measure = false;
  for (const auto& path : job.inputs) {
    std::ifstream probe(path);
    if (!probe) throw invalid_input("cannot open " + path);
    (is_mesh_path(path) ? any_mesh : any_measure) = true;
  }
  if (any_mesh && any_measure)
    throw invalid_input("inputs must be all mesh files or all measure files");

  std::vector<DiscreteMeasure> measures;
  measures.reserve(static_cast<size_t>(n));
  DistanceMatrixResult result;
  for (const auto& path : job.inputs) {
    if (any_mesh) {
      measures.push_back(srnf_measure(load_mesh(path), job.consolidate));
    } else {
      DiscreteMeasure m = read_measure(path);
      measures.push_back(job.consolidate ? m.consolidated() : m);
    }
    result.names.push_back(basename_of(path));
  }

  result.distances = Eigen::MatrixXd::Zero(n, n);
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

  int workers = job.parallelism > 0 ? job.parallelism
                                    : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  workers = std::min<int>(workers, static_cast<int>(pairs.size()));

  std::atomic<size_t> cursor{0};
  std::mutex failures_mutex;
  auto work = [&] {
    for (size_t at = cursor.fetch_add(1); at < pairs.size(); at = cursor.fetch_add(1)) {
      const auto [i, j] = pairs[at];
      try {
        const SolveReport report =
            solve(measures[static_cast<size_t>(i)], measures[static_cast<size_t>(j)], job.kernel,
                  job.config);
        result.distances(i, j) = result.distances(j, i) = report.distance;
      } catch (const std::exception& e) {
        result.distances(i, j) = result.distances(j, i) =
            std::numeric_limits<double>::quiet_NaN();
        std::lock_guard<std::mutex> lock(failures_mutex);
        result.failures.emplace_back(i, j);
        result.failure_messages.emplace_back(e.what());
      }
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<size_t>(workers));
    for (int t = 0; t < workers; ++t) threads.emplace_back(work);
    for (auto& t : threads) t.join();
  }
  return result;
}

}  // namespace wfr
