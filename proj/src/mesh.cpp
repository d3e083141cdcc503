#include "wfr/mesh.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace wfr {

namespace {

// Strips comments and trailing whitespace; returns false until a line with
// content arrives.
bool next_content_line(std::istream& in, std::string& line, long& line_no, char comment) {
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find(comment);
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r\n") != std::string::npos) return true;
  }
  return false;
}

int parse_index(const std::string& token, int vertex_count, const std::string& name, long line_no,
                bool one_based) {
  // OBJ face tokens may carry /texture/normal attributes.
  const std::string head = token.substr(0, token.find('/'));
  size_t consumed = 0;
  int idx = 0;
  try {
    idx = std::stoi(head, &consumed);
  } catch (const std::exception&) {
    throw format_error(name, line_no, "bad vertex index '" + token + "'");
  }
  if (consumed != head.size()) throw format_error(name, line_no, "bad vertex index '" + token + "'");
  if (one_based) idx -= 1;
  if (idx < 0 || idx >= vertex_count)
    throw format_error(name, line_no, "vertex index out of range: " + token);
  return idx;
}

void push_fan(TriangleMesh& mesh, const std::vector<int>& loop) {
  for (size_t t = 1; t + 1 < loop.size(); ++t)
    mesh.faces.push_back({loop[0], loop[t], loop[t + 1]});
}

TriangleMesh parse_off(std::istream& in, const std::string& name) {
  std::string line;
  long line_no = 0;
  if (!next_content_line(in, line, line_no, '#'))
    throw format_error(name, line_no, "empty file");
  std::istringstream header(line);
  std::string magic;
  header >> magic;
  if (magic != "OFF") throw format_error(name, line_no, "missing OFF header");

  long v_count = -1, f_count = -1, e_count = 0;
  // Counts may share the header line or follow on their own line.
  if (!(header >> v_count >> f_count)) {
    if (!next_content_line(in, line, line_no, '#'))
      throw format_error(name, line_no, "missing vertex and face counts");
    std::istringstream counts(line);
    if (!(counts >> v_count >> f_count)) throw format_error(name, line_no, "bad counts line");
    counts >> e_count;
  } else {
    header >> e_count;
  }
  if (v_count < 0 || f_count < 0) throw format_error(name, line_no, "negative counts");

  TriangleMesh mesh;
  mesh.vertices.reserve(static_cast<size_t>(v_count));
  for (long k = 0; k < v_count; ++k) {
    if (!next_content_line(in, line, line_no, '#'))
      throw format_error(name, line_no, "unexpected end of file in vertex list");
    std::istringstream row(line);
    double x, y, z;
    if (!(row >> x >> y >> z)) throw format_error(name, line_no, "bad vertex line");
    mesh.vertices.emplace_back(x, y, z);
  }
  for (long k = 0; k < f_count; ++k) {
    if (!next_content_line(in, line, line_no, '#'))
      throw format_error(name, line_no, "unexpected end of file in face list");
    std::istringstream row(line);
    long arity = 0;
    if (!(row >> arity) || arity < 3) throw format_error(name, line_no, "bad face line");
    std::vector<int> loop;
    loop.reserve(static_cast<size_t>(arity));
    for (long t = 0; t < arity; ++t) {
      std::string token;
      if (!(row >> token)) throw format_error(name, line_no, "face line ends early");
      loop.push_back(
          parse_index(token, static_cast<int>(mesh.vertices.size()), name, line_no, false));
    }
    push_fan(mesh, loop);
  }
  return mesh;
}

TriangleMesh parse_obj(std::istream& in, const std::string& name) {
  TriangleMesh mesh;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream row(line);
    std::string tag;
    if (!(row >> tag) || tag[0] == '#') continue;
    if (tag == "v") {
      double x, y, z;
      if (!(row >> x >> y >> z)) throw format_error(name, line_no, "bad vertex line");
      mesh.vertices.emplace_back(x, y, z);
    } else if (tag == "f") {
      std::vector<int> loop;
      std::string token;
      while (row >> token)
        loop.push_back(
            parse_index(token, static_cast<int>(mesh.vertices.size()), name, line_no, true));
      if (loop.size() < 3) throw format_error(name, line_no, "face needs at least 3 vertices");
      push_fan(mesh, loop);
    }
    // Anything else (vn, vt, usemtl, groups, ...) is irrelevant here.
  }
  return mesh;
}

Eigen::Vector3d face_cross(const TriangleMesh& mesh, const std::array<int, 3>& f) {
  const Eigen::Vector3d& v0 = mesh.vertices[static_cast<size_t>(f[0])];
  const Eigen::Vector3d& v1 = mesh.vertices[static_cast<size_t>(f[1])];
  const Eigen::Vector3d& v2 = mesh.vertices[static_cast<size_t>(f[2])];
  return (v1 - v0).cross(v2 - v0);
}

}  // namespace

int filter_degenerate_faces(TriangleMesh& mesh) {
  if (mesh.faces.empty()) return 0;
  std::vector<double> areas;
  areas.reserve(mesh.faces.size());
  double mean = 0.0;
  for (const auto& f : mesh.faces) {
    areas.push_back(0.5 * face_cross(mesh, f).norm());
    mean += areas.back();
  }
  mean /= static_cast<double>(mesh.faces.size());
  std::vector<std::array<int, 3>> kept;
  kept.reserve(mesh.faces.size());
  for (size_t k = 0; k < mesh.faces.size(); ++k)
    if (areas[k] > 1e-12 * mean) kept.push_back(mesh.faces[k]);
  const int dropped = static_cast<int>(mesh.faces.size() - kept.size());
  mesh.faces = std::move(kept);
  return dropped;
}

TriangleMesh load_mesh(std::istream& in, MeshFormat format, const std::string& display_name,
                       int* dropped) {
  TriangleMesh mesh =
      format == MeshFormat::off ? parse_off(in, display_name) : parse_obj(in, display_name);
  for (const auto& v : mesh.vertices)
    if (!v.allFinite()) throw format_error(display_name, 0, "non-finite vertex coordinates");
  const int n_dropped = filter_degenerate_faces(mesh);
  if (dropped) *dropped = n_dropped;
  return mesh;
}

TriangleMesh load_mesh(const std::string& path, int* dropped) {
  const auto dot = path.rfind('.');
  if (dot == std::string::npos) throw invalid_input("cannot tell the mesh format of " + path);
  std::string ext = path.substr(dot + 1);
  for (auto& ch : ext) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  MeshFormat format;
  if (ext == "off")
    format = MeshFormat::off;
  else if (ext == "obj")
    format = MeshFormat::obj;
  else
    throw invalid_input("unsupported mesh format ." + ext + " for " + path);
  std::ifstream in(path);
  if (!in) throw invalid_input("cannot open " + path);
  return load_mesh(in, format, path, dropped);
}

FaceGeometry face_geometry(const TriangleMesh& mesh) {
  FaceGeometry g;
  g.areas.reserve(mesh.faces.size());
  g.normals.reserve(mesh.faces.size());
  for (const auto& f : mesh.faces) {
    const Eigen::Vector3d cross = face_cross(mesh, f);
    const double norm = cross.norm();
    if (!(norm > 0.0)) throw invalid_input("degenerate face, filter the mesh first");
    g.areas.push_back(0.5 * norm);
    g.normals.emplace_back(cross / norm);
  }
  return g;
}

double closure_residual(const FaceGeometry& geometry) {
  Eigen::Vector3d sum = Eigen::Vector3d::Zero();
  double total = 0.0;
  for (size_t k = 0; k < geometry.areas.size(); ++k) {
    sum += geometry.areas[k] * geometry.normals[k].vec();
    total += geometry.areas[k];
  }
  if (total <= 0.0) throw invalid_input("mesh has no faces");
  return sum.norm() / total;
}

DiscreteMeasure srnf_measure(const TriangleMesh& mesh, bool consolidate) {
  if (mesh.faces.empty()) throw invalid_input("mesh has no faces");
  FaceGeometry g = face_geometry(mesh);
  DiscreteMeasure measure(std::move(g.areas), std::move(g.normals));
  return consolidate ? measure.consolidated() : measure;
}

SolveReport srnf_distance(const TriangleMesh& mesh1, const TriangleMesh& mesh2,
                          const SolverConfig& config, bool consolidate) {
  return solve(srnf_measure(mesh1, consolidate), srnf_measure(mesh2, consolidate), Kernel{},
               config);
}

std::vector<std::array<double, 3>> face_colors(const TriangleMesh& mesh) {
  const FaceGeometry g = face_geometry(mesh);
  std::vector<std::array<double, 3>> colors;
  colors.reserve(g.normals.size());
  for (const auto& n : g.normals)
    colors.push_back({(n.x() + 1.0) / 2.0, (n.y() + 1.0) / 2.0, (n.z() + 1.0) / 2.0});
  return colors;
}

Correspondence fuzzy_correspondence(const SolveReport& report, const TriangleMesh& mesh1,
                                    const TriangleMesh& mesh2) {
  const int f1 = static_cast<int>(mesh1.faces.size());
  const int f2 = static_cast<int>(mesh2.faces.size());
  if (report.coupling.source.rows() != f1 + 1 || report.coupling.source.cols() != f2 + 1)
    throw invalid_input(
        "coupling does not match the face counts, solve the raw measures without consolidation");

  const auto target_colors = face_colors(mesh2);
  Correspondence corr;
  corr.assignment.assign(static_cast<size_t>(f1), -1);
  corr.mass_fractions.assign(static_cast<size_t>(f1), 0.0);
  corr.colors.assign(static_cast<size_t>(f1), {0.5, 0.5, 0.5});  // destroyed faces stay gray

  for (int i = 1; i <= f1; ++i) {
    double best = 0.0;
    int best_j = 0;
    for (int j = 1; j <= f2; ++j) {
      if (report.coupling.source(i, j) > best) {
        best = report.coupling.source(i, j);
        best_j = j;
      }
    }
    if (best_j == 0) continue;  // the whole row sits in the destruction slot
    const double row_mass = report.coupling.source.row(i).sum();
    corr.assignment[static_cast<size_t>(i - 1)] = best_j - 1;
    corr.mass_fractions[static_cast<size_t>(i - 1)] = row_mass > 0.0 ? best / row_mass : 0.0;
    corr.colors[static_cast<size_t>(i - 1)] = target_colors[static_cast<size_t>(best_j - 1)];
  }
  return corr;
}

}  // namespace wfr
