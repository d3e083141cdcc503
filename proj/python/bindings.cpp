#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <utility>
#include <vector>

#include "wfr/mds.hpp"
#include "wfr/mesh.hpp"
#include "wfr/sinkhorn.hpp"
#include "wfr/solver.hpp"

namespace py = pybind11;
using namespace wfr;

namespace {

Kernel kernel_from(const std::string& family, double rho) {
  if (family == "wfr") return Kernel::wfr(rho);
  if (family == "ghk") return Kernel::ghk(rho);
  throw invalid_input("unknown kernel family '" + family + "', expected wfr or ghk");
}

DiscreteMeasure make_measure(const Eigen::VectorXd& weights, const Eigen::MatrixXd& points) {
  if (points.cols() != 3 || points.rows() != weights.size())
    throw invalid_input("measure needs n weights and n x 3 points");
  std::vector<double> w(weights.data(), weights.data() + weights.size());
  std::vector<UnitVector> s;
  s.reserve(static_cast<size_t>(points.rows()));
  for (Eigen::Index i = 0; i < points.rows(); ++i)
    s.emplace_back(points(i, 0), points(i, 1), points(i, 2));
  return DiscreteMeasure(std::move(w), std::move(s));
}

Eigen::MatrixXd point_matrix(const DiscreteMeasure& m) {
  Eigen::MatrixXd pts(m.size(), 3);
  for (int i = 0; i < m.size(); ++i) pts.row(i) = m.support(i).vec().transpose();
  return pts;
}

Eigen::VectorXd weight_vector(const DiscreteMeasure& m) {
  return Eigen::Map<const Eigen::VectorXd>(m.weights().data(),
                                           static_cast<Eigen::Index>(m.weights().size()));
}

Eigen::MatrixXd vertex_matrix(const TriangleMesh& mesh) {
  Eigen::MatrixXd v(static_cast<Eigen::Index>(mesh.vertices.size()), 3);
  for (size_t i = 0; i < mesh.vertices.size(); ++i)
    v.row(static_cast<Eigen::Index>(i)) = mesh.vertices[i].transpose();
  return v;
}

TriangleMesh make_mesh(const Eigen::MatrixXd& vertices,
                       const std::vector<std::array<int, 3>>& faces) {
  if (vertices.cols() != 3) throw invalid_input("mesh vertices must be n x 3");
  TriangleMesh mesh;
  mesh.vertices.reserve(static_cast<size_t>(vertices.rows()));
  for (Eigen::Index i = 0; i < vertices.rows(); ++i)
    mesh.vertices.push_back(vertices.row(i).transpose());
  mesh.faces = faces;
  filter_degenerate_faces(mesh);
  return mesh;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "transport distance between measures on the sphere, plus mesh shape distance";

  py::register_exception<invalid_input>(mod, "InvalidInput", PyExc_ValueError);
  py::register_exception<numeric_failure>(mod, "NumericFailure", PyExc_ArithmeticError);
  py::register_exception<format_error>(mod, "FormatError", PyExc_ValueError);

  py::class_<DiscreteMeasure>(mod, "Measure")
      .def(py::init(&make_measure), py::arg("weights"), py::arg("points"))
      .def_property_readonly("size", &DiscreteMeasure::size)
      .def_property_readonly("total_mass", &DiscreteMeasure::total_mass)
      .def_property_readonly("weights", &weight_vector)
      .def_property_readonly("points", &point_matrix)
      .def("consolidated", &DiscreteMeasure::consolidated,
           py::arg("dot_threshold") = 1.0 - 1e-12)
      .def("__len__", &DiscreteMeasure::size)
      .def("__repr__", [](const DiscreteMeasure& m) {
        return "Measure(" + std::to_string(m.size()) +
               " atoms, mass=" + std::to_string(m.total_mass()) + ")";
      });

  mod.def("random_measure", &random_measure, py::arg("n"), py::arg("seed"),
          py::arg("mass_scale") = 1.0);

  mod.def(
      "cost_matrix",
      [](const DiscreteMeasure& mu, const DiscreteMeasure& nu, const std::string& family,
         double rho) { return build_cost_matrix(mu, nu, kernel_from(family, rho)).entries; },
      py::arg("mu"), py::arg("nu"), py::arg("family") = "wfr", py::arg("rho") = 1.0);

  py::class_<SolveReport>(mod, "Report")
      .def_readonly("distance", &SolveReport::distance)
      .def_readonly("f_star", &SolveReport::f_star)
      .def_readonly("iterations", &SolveReport::iterations)
      .def_readonly("converged", &SolveReport::converged)
      .def_readonly("history", &SolveReport::history)
      .def_property_readonly("source",
                             [](const SolveReport& r) { return r.coupling.source; })
      .def_property_readonly("target",
                             [](const SolveReport& r) { return r.coupling.target; })
      .def("__repr__", [](const SolveReport& r) {
        return "Report(distance=" + std::to_string(r.distance) +
               ", iterations=" + std::to_string(r.iterations) + ")";
      });

  mod.def(
      "solve",
      [](const DiscreteMeasure& mu, const DiscreteMeasure& nu, const std::string& family,
         double rho, double epsilon, int max_iterations, bool record_history) {
        SolverConfig config;
        config.epsilon = epsilon;
        config.max_iterations = max_iterations;
        config.record_history = record_history;
        return solve(mu, nu, kernel_from(family, rho), config);
      },
      py::arg("mu"), py::arg("nu"), py::arg("family") = "wfr", py::arg("rho") = 1.0,
      py::arg("epsilon") = 1e-10, py::arg("max_iterations") = 10000,
      py::arg("record_history") = false);

  mod.def(
      "closed_form_single_atom",
      [](double a, double b, const Eigen::Vector3d& u, const Eigen::Vector3d& v) {
        return closed_form_single_atom(a, b, UnitVector(u), UnitVector(v));
      },
      py::arg("a"), py::arg("b"), py::arg("u"), py::arg("v"));

  mod.def(
      "sinkhorn",
      [](const DiscreteMeasure& mu, const DiscreteMeasure& nu, double lam, int max_iterations) {
        SinkhornResult r = sinkhorn_solve(mu, nu, lam, max_iterations);
        return py::make_tuple(r.cost, r.plan.gamma);
      },
      py::arg("mu"), py::arg("nu"), py::arg("lam"), py::arg("max_iterations") = 2000);

  py::class_<TriangleMesh>(mod, "Mesh")
      .def(py::init(&make_mesh), py::arg("vertices"), py::arg("faces"))
      .def_property_readonly("vertices", &vertex_matrix)
      .def_property_readonly("faces",
                             [](const TriangleMesh& m) { return m.faces; })
      .def("__repr__", [](const TriangleMesh& m) {
        return "Mesh(" + std::to_string(m.vertices.size()) + " vertices, " +
               std::to_string(m.faces.size()) + " faces)";
      });

  mod.def(
      "load_mesh", [](const std::string& path) { return load_mesh(path); }, py::arg("path"));

  mod.def(
      "closure_residual",
      [](const TriangleMesh& mesh) { return closure_residual(face_geometry(mesh)); },
      py::arg("mesh"));

  mod.def("srnf_measure", &srnf_measure, py::arg("mesh"), py::arg("consolidate") = false);

  mod.def(
      "srnf_distance",
      [](const TriangleMesh& a, const TriangleMesh& b, double epsilon, int max_iterations,
         bool consolidate) {
        SolverConfig config;
        config.epsilon = epsilon;
        config.max_iterations = max_iterations;
        return srnf_distance(a, b, config, consolidate);
      },
      py::arg("mesh1"), py::arg("mesh2"), py::arg("epsilon") = 1e-10,
      py::arg("max_iterations") = 10000, py::arg("consolidate") = true);

  py::class_<Correspondence>(mod, "Correspondence")
      .def_readonly("assignment", &Correspondence::assignment)
      .def_readonly("mass_fractions", &Correspondence::mass_fractions)
      .def_readonly("colors", &Correspondence::colors);

  mod.def("fuzzy_correspondence", &fuzzy_correspondence, py::arg("report"), py::arg("mesh1"),
          py::arg("mesh2"));

  mod.def(
      "classical_mds",
      [](const Eigen::MatrixXd& distances, int dim) {
        MdsResult r = classical_mds(distances, dim);
        return py::make_tuple(r.coords, r.eigenvalues, r.clamped_negative);
      },
      py::arg("distances"), py::arg("dim") = 3);
}
