// Command line front end: exact transport distances between spherical
// measures, shape distances between meshes, the entropic reference solver,
// and batch tooling (benchmarks, distance matrices, MDS embeddings).
//
// Exit codes: 0 success, 2 bad input, 3 numeric failure.

#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "wfr/bench.hpp"
#include "wfr/io.hpp"
#include "wfr/mesh.hpp"
#include "wfr/sinkhorn.hpp"

namespace {

struct GlobalOptions {
  double epsilon = 1e-10;
  int max_iter = 10000;
  std::string kernel = "wfr";
  double rho = 1.0;
  std::uint64_t seed = 0;
  int threads = 0;

  wfr::Kernel make_kernel() const {
    if (kernel == "wfr") return wfr::Kernel::wfr(rho);
    if (kernel == "ghk") return wfr::Kernel::ghk(rho);
    throw wfr::invalid_input("unknown kernel '" + kernel + "', expected wfr or ghk");
  }
  wfr::SolverConfig make_config(bool history = false) const {
    wfr::SolverConfig config;
    config.epsilon = epsilon;
    config.max_iterations = max_iter;
    config.record_history = history;
    return config;
  }
};

void print_distance(double d) { std::printf("%.12g\n", d); }

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw wfr::invalid_input("cannot write " + path);
  return out;
}

int cmd_dist(const GlobalOptions& global, const std::string& path_a, const std::string& path_b,
             const std::string& report_path, const std::string& coupling_path, bool history) {
  const wfr::DiscreteMeasure mu = wfr::read_measure(path_a);
  const wfr::DiscreteMeasure nu = wfr::read_measure(path_b);
  const wfr::SolveReport report =
      wfr::solve(mu, nu, global.make_kernel(), global.make_config(history));
  if (!report_path.empty()) {
    auto out = open_out(report_path);
    out << wfr::report_to_json(report) << '\n';
  }
  if (!coupling_path.empty()) {
    auto out = open_out(coupling_path);
    wfr::write_coupling_csv(out, report.coupling);
  }
  print_distance(report.distance);
  return 0;
}

int cmd_srnf(const GlobalOptions& global, const std::string& path_a, const std::string& path_b,
             const std::string& corr_path, bool check_closure) {
  const wfr::TriangleMesh mesh_a = wfr::load_mesh(path_a);
  const wfr::TriangleMesh mesh_b = wfr::load_mesh(path_b);
  if (check_closure) {
    std::fprintf(stderr, "closure %s: %.6g\n", path_a.c_str(),
                 wfr::closure_residual(wfr::face_geometry(mesh_a)));
    std::fprintf(stderr, "closure %s: %.6g\n", path_b.c_str(),
                 wfr::closure_residual(wfr::face_geometry(mesh_b)));
  }
  // The per-face correspondence needs one coupling row per face, so that
  // variant solves the raw measures; the distance itself is the same.
  const bool consolidate = corr_path.empty();
  const wfr::SolveReport report =
      wfr::srnf_distance(mesh_a, mesh_b, global.make_config(), consolidate);
  if (!corr_path.empty()) {
    const wfr::Correspondence corr = wfr::fuzzy_correspondence(report, mesh_a, mesh_b);
    auto out = open_out(corr_path);
    wfr::write_correspondence_csv(out, corr);
  }
  print_distance(report.distance);
  return 0;
}

int cmd_bench(const GlobalOptions& global, const std::vector<int>& sizes, int pairs,
              double lambda, double mass_scale, const std::string& csv_path) {
  wfr::BenchParams params;
  if (!sizes.empty()) params.sizes = sizes;
  params.pairs = pairs;
  params.lambda = lambda;
  params.mass_scale = mass_scale;
  params.seed = global.seed;
  params.solver = global.make_config();
  const auto rows = wfr::run_benchmark(params);

  std::printf("lambda=%g seed=%llu mass_scale=%g epsilon=%g\n", lambda,
              static_cast<unsigned long long>(global.seed), mass_scale, global.epsilon);
  std::printf("%8s %6s %12s %12s %12s %12s %10s %10s %8s\n", "n", "pairs", "mean_exact",
              "mean_sink", "rel_err", "var_rel_err", "t_exact_s", "t_sink_s", "d2<=cost");
  for (const auto& row : rows)
    std::printf("%8d %6d %12.5f %12.5f %12.5e %12.5e %10.4f %10.4f %8d\n", row.n, row.pairs,
                row.mean_exact_distance, row.mean_sinkhorn_distance, row.mean_rel_error,
                row.var_rel_error, row.mean_time_exact_s, row.mean_time_sinkhorn_s,
                row.exact_not_above_sinkhorn);

  if (!csv_path.empty()) {
    auto out = open_out(csv_path);
    out << "n,pairs,mean_exact_distance,mean_sinkhorn_distance,mean_rel_error,var_rel_error,"
           "mean_time_exact_s,mean_time_sinkhorn_s,exact_not_above_sinkhorn\n";
    char line[512];
    for (const auto& row : rows) {
      std::snprintf(line, sizeof line, "%d,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n", row.n,
                    row.pairs, row.mean_exact_distance, row.mean_sinkhorn_distance,
                    row.mean_rel_error, row.var_rel_error, row.mean_time_exact_s,
                    row.mean_time_sinkhorn_s, row.exact_not_above_sinkhorn);
      out << line;
    }
  }
  return 0;
}

int cmd_matrix(const GlobalOptions& global, const std::vector<std::string>& inputs,
               const std::string& out_path, const std::string& mds_path) {
  wfr::DistanceMatrixJob job;
  job.inputs = inputs;
  job.kernel = global.make_kernel();
  job.config = global.make_config();
  job.parallelism = global.threads;
  const wfr::DistanceMatrixResult result = wfr::run_distance_matrix(job);

  auto out = open_out(out_path);
  wfr::write_distance_matrix_csv(out, result);

  if (!result.failures.empty()) {
    for (size_t k = 0; k < result.failures.size(); ++k)
      std::fprintf(stderr, "pair (%s, %s) failed: %s\n",
                   result.names[static_cast<size_t>(result.failures[k].first)].c_str(),
                   result.names[static_cast<size_t>(result.failures[k].second)].c_str(),
                   result.failure_messages[k].c_str());
    if (!mds_path.empty())
      std::fprintf(stderr, "skipping MDS, the distance matrix has failed entries\n");
    return 3;
  }
  if (!mds_path.empty()) {
    const wfr::MdsResult mds = wfr::classical_mds(result.distances);
    if (mds.clamped_negative > 0)
      std::fprintf(stderr, "warning: clamped %d negative eigenvalue(s) in the MDS embedding\n",
                   mds.clamped_negative);
    auto mds_out = open_out(mds_path);
    wfr::write_mds_csv(mds_out, result.names, mds.coords);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  GlobalOptions global;
  CLI::App app{"Transport distances between measures on the sphere and shape distances "
               "between triangle meshes"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--epsilon", global.epsilon, "Relative convergence threshold");
  app.add_option("--max-iter", global.max_iter, "Iteration cap for the ascent");
  app.add_option("--kernel", global.kernel, "Ground kernel: wfr or ghk");
  app.add_option("--rho", global.rho, "Kernel scale");
  app.add_option("--seed", global.seed, "Seed for randomized commands");
  app.add_option("--threads", global.threads, "Worker threads (0 = all cores)");

  std::string path_a, path_b, report_path, coupling_path, corr_path, out_path, mds_path, csv_path;
  bool history = false, check_closure = false;
  std::vector<int> sizes;
  std::vector<std::string> inputs;
  int pairs = 100;
  double lambda = 1e-3, mass_scale = 30.0;

  auto* dist = app.add_subcommand("dist", "Distance between two measure files");
  dist->add_option("a", path_a, "First measure (.csv or .json)")->required();
  dist->add_option("b", path_b, "Second measure (.csv or .json)")->required();
  dist->add_option("--report", report_path, "Write a JSON solve report");
  dist->add_option("--coupling", coupling_path, "Write the argmax coupling as CSV");
  dist->add_flag("--history", history, "Record per-iteration values in the report");

  auto* srnf = app.add_subcommand("srnf", "Shape distance between two mesh files");
  srnf->add_option("a", path_a, "First mesh (.off or .obj)")->required();
  srnf->add_option("b", path_b, "Second mesh (.off or .obj)")->required();
  srnf->add_option("--corr", corr_path, "Write the fuzzy face correspondence as CSV");
  srnf->add_flag("--check-closure", check_closure, "Report the closure residual of each mesh");

  auto* corr = app.add_subcommand("corr", "Shape distance plus face correspondence CSV");
  corr->add_option("a", path_a, "First mesh (.off or .obj)")->required();
  corr->add_option("b", path_b, "Second mesh (.off or .obj)")->required();
  corr->add_option("out", corr_path, "Correspondence CSV path")->required();
  corr->add_flag("--check-closure", check_closure, "Report the closure residual of each mesh");

  auto* bench = app.add_subcommand("bench", "Exact vs entropic accuracy and timing table");
  bench->add_option("--sizes", sizes, "Measure sizes to benchmark")->delimiter(',');
  bench->add_option("--pairs", pairs, "Random pairs per size");
  bench->add_option("--lambda", lambda, "Entropic regularization weight");
  bench->add_option("--mass-scale", mass_scale, "Upper bound of the random atom masses");
  bench->add_option("--csv", csv_path, "Write the table as CSV");

  auto* matrix = app.add_subcommand("matrix", "Pairwise distance matrix and MDS embedding");
  matrix->add_option("inputs", inputs, "Mesh files or measure files (2 or more)")
      ->required()
      ->expected(-2);
  matrix->add_option("--out", out_path, "Distance matrix CSV path")->required();
  matrix->add_option("--mds", mds_path, "MDS coordinates CSV path");

  try {
    app.parse(argc, argv);
    if (dist->parsed())
      return cmd_dist(global, path_a, path_b, report_path, coupling_path, history);
    if (srnf->parsed()) return cmd_srnf(global, path_a, path_b, corr_path, check_closure);
    if (corr->parsed()) return cmd_srnf(global, path_a, path_b, corr_path, check_closure);
    if (bench->parsed())
      return cmd_bench(global, sizes, pairs, lambda, mass_scale, csv_path);
    if (matrix->parsed()) return cmd_matrix(global, inputs, out_path, mds_path);
    return 2;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const wfr::numeric_failure& e) {
    std::fprintf(stderr, "numeric failure: %s\n", e.what());
    return 3;
  } catch (const wfr::format_error& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return 2;
  } catch (const wfr::invalid_input& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
