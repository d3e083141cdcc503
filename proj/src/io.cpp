#include "wfr/io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace wfr {

namespace {

std::string num17(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string lower_ext(const std::string& path) {
  const auto dot = path.rfind('.');
  if (dot == std::string::npos) return "";
  std::string ext = path.substr(dot + 1);
  for (auto& ch : ext) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return ext;
}

std::string strip(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(strip(field));
  return fields;
}

double parse_double(const std::string& token, const std::string& name, long line_no) {
  size_t consumed = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &consumed);
  } catch (const std::exception&) {
    throw format_error(name, line_no, "bad number '" + token + "'");
  }
  if (consumed != token.size()) throw format_error(name, line_no, "bad number '" + token + "'");
  return v;
}

void write_matrix_rows(std::ostream& out, const Eigen::MatrixXd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << num17(m(i, j));
    }
    out << '\n';
  }
}

}  // namespace

DiscreteMeasure read_measure_csv(std::istream& in, const std::string& display_name) {
  std::string line;
  long line_no = 0;
  if (!std::getline(in, line)) throw format_error(display_name, 1, "empty file");
  ++line_no;
  const auto header = split_csv(line);
  if (header != std::vector<std::string>{"weight", "x", "y", "z"})
    throw format_error(display_name, line_no, "expected header 'weight,x,y,z'");

  std::vector<double> weights;
  std::vector<UnitVector> supports;
  while (std::getline(in, line)) {
    ++line_no;
    if (strip(line).empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() != 4)
      throw format_error(display_name, line_no, "expected 4 comma-separated values");
    weights.push_back(parse_double(fields[0], display_name, line_no));
    const double x = parse_double(fields[1], display_name, line_no);
    const double y = parse_double(fields[2], display_name, line_no);
    const double z = parse_double(fields[3], display_name, line_no);
    try {
      supports.emplace_back(x, y, z);
    } catch (const invalid_input& e) {
      throw format_error(display_name, line_no, e.what());
    }
  }
  return DiscreteMeasure(std::move(weights), std::move(supports));
}

DiscreteMeasure read_measure_json(std::istream& in, const std::string& display_name) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw format_error(display_name, 0, e.what());
  }
  if (!doc.is_object() || !doc.contains("weights") || !doc.contains("supports"))
    throw format_error(display_name, 0, "expected an object with 'weights' and 'supports'");
  std::vector<double> weights;
  std::vector<UnitVector> supports;
  try {
    weights = doc["weights"].get<std::vector<double>>();
    for (const auto& entry : doc["supports"]) {
      const auto triple = entry.get<std::vector<double>>();
      if (triple.size() != 3)
        throw format_error(display_name, 0, "supports must be [x,y,z] triples");
      supports.emplace_back(triple[0], triple[1], triple[2]);
    }
  } catch (const nlohmann::json::exception& e) {
    throw format_error(display_name, 0, e.what());
  }
  return DiscreteMeasure(std::move(weights), std::move(supports));
}

DiscreteMeasure read_measure(const std::string& path) {
  const std::string ext = lower_ext(path);
  std::ifstream in(path);
  if (!in) throw invalid_input("cannot open " + path);
  if (ext == "csv") return read_measure_csv(in, path);
  if (ext == "json") return read_measure_json(in, path);
  throw invalid_input("unsupported measure format ." + ext + " for " + path);
}

void write_measure_csv(std::ostream& out, const DiscreteMeasure& measure) {
  out << "weight,x,y,z\n";
  for (int i = 0; i < measure.size(); ++i) {
    const UnitVector& u = measure.support(i);
    out << num17(measure.weight(i)) << ',' << num17(u.x()) << ',' << num17(u.y()) << ','
        << num17(u.z()) << '\n';
  }
}

void write_measure_json(std::ostream& out, const DiscreteMeasure& measure) {
  nlohmann::json doc;
  doc["weights"] = measure.weights();
  auto& supports = doc["supports"];
  supports = nlohmann::json::array();
  for (const auto& u : measure.supports()) supports.push_back({u.x(), u.y(), u.z()});
  out << doc.dump(2) << '\n';
}

void write_measure(const std::string& path, const DiscreteMeasure& measure) {
  const std::string ext = lower_ext(path);
  std::ofstream out(path);
  if (!out) throw invalid_input("cannot write " + path);
  if (ext == "csv")
    write_measure_csv(out, measure);
  else if (ext == "json")
    write_measure_json(out, measure);
  else
    throw invalid_input("unsupported measure format ." + ext + " for " + path);
}

void write_coupling_csv(std::ostream& out, const SemiCoupling& coupling) {
  out << "A\n";
  write_matrix_rows(out, coupling.source);
  out << "B\n";
  write_matrix_rows(out, coupling.target);
}

void write_plan_csv(std::ostream& out, const TransportPlan& plan) {
  write_matrix_rows(out, plan.gamma);
}

void write_correspondence_csv(std::ostream& out, const Correspondence& correspondence) {
  out << "face_index_S1,assigned_face_S2_or_-1,mass_fraction,r,g,b\n";
  for (size_t i = 0; i < correspondence.assignment.size(); ++i) {
    const auto& rgb = correspondence.colors[i];
    out << i << ',' << correspondence.assignment[i] << ','
        << num17(correspondence.mass_fractions[i]) << ',' << num17(rgb[0]) << ','
        << num17(rgb[1]) << ',' << num17(rgb[2]) << '\n';
  }
}

std::string report_to_json(const SolveReport& report) {
  nlohmann::json doc;
  doc["distance"] = report.distance;
  doc["f_star"] = report.f_star;
  doc["iterations"] = report.iterations;
  doc["converged"] = report.converged;
  if (!report.history.empty()) doc["history"] = report.history;
  return doc.dump(2);
}

void write_distance_matrix_csv(std::ostream& out, const DistanceMatrixResult& result) {
  out << "name";
  for (const auto& name : result.names) out << ',' << name;
  out << '\n';
  for (Eigen::Index i = 0; i < result.distances.rows(); ++i) {
    out << result.names[static_cast<size_t>(i)];
    for (Eigen::Index j = 0; j < result.distances.cols(); ++j)
      out << ',' << num17(result.distances(i, j));
    out << '\n';
  }
}

void write_mds_csv(std::ostream& out, const std::vector<std::string>& names,
                   const Eigen::MatrixXd& coords) {
  out << "name";
  for (Eigen::Index k = 0; k < coords.cols(); ++k) out << ",c" << (k + 1);
  out << '\n';
  for (Eigen::Index i = 0; i < coords.rows(); ++i) {
    out << names[static_cast<size_t>(i)];
    for (Eigen::Index k = 0; k < coords.cols(); ++k) out << ',' << num17(coords(i, k));
    out << '\n';
  }
}

}  // namespace wfr
