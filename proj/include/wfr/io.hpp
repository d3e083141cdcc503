#pragma once

#include <iosfwd>
#include <string>

#include "wfr/coupling.hpp"
#include "wfr/distance_matrix.hpp"
#include "wfr/mds.hpp"
#include "wfr/measure.hpp"
#include "wfr/mesh.hpp"
#include "wfr/sinkhorn.hpp"
#include "wfr/solver.hpp"

namespace wfr {

// Measures travel as CSV (header `weight,x,y,z`, one atom per row) or JSON
// ({"weights": [...], "supports": [[x,y,z], ...]}), chosen by file extension.
// Support vectors are renormalized on load. All numeric output is written
// with 17 significant digits so values round-trip exactly.

DiscreteMeasure read_measure(const std::string& path);
DiscreteMeasure read_measure_csv(std::istream& in, const std::string& display_name);
DiscreteMeasure read_measure_json(std::istream& in, const std::string& display_name);
void write_measure_csv(std::ostream& out, const DiscreteMeasure& measure);
void write_measure_json(std::ostream& out, const DiscreteMeasure& measure);
void write_measure(const std::string& path, const DiscreteMeasure& measure);

// Both allocation matrices, row-major, as two labeled blocks:
//   A
//   <m+1 rows of n+1 comma-separated entries>
//   B
//   <same shape>
void write_coupling_csv(std::ostream& out, const SemiCoupling& coupling);

void write_plan_csv(std::ostream& out, const TransportPlan& plan);

// One row per face of the first mesh:
// face_index_S1,assigned_face_S2_or_-1,mass_fraction,r,g,b
void write_correspondence_csv(std::ostream& out, const Correspondence& correspondence);

// Solve summary as JSON; the history array is included only when recorded.
std::string report_to_json(const SolveReport& report);

// Labeled symmetric matrix: header `name,<name_1>,...`, one labeled row each.
void write_distance_matrix_csv(std::ostream& out, const DistanceMatrixResult& result);

// Embedding rows: name,c1,c2,...
void write_mds_csv(std::ostream& out, const std::vector<std::string>& names,
                   const Eigen::MatrixXd& coords);

}  // namespace wfr
