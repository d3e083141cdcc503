#pragma once

// Shared test helpers: deterministic randomness, feasible coupling
// generators, and closed triangle-mesh fixtures with known area measures.

#include <unistd.h>

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "wfr/coupling.hpp"
#include "wfr/measure.hpp"
#include "wfr/mesh.hpp"

namespace testutil {

inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// in [lo, hi)
inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

inline wfr::UnitVector random_direction(std::mt19937_64& rng) {
  while (true) {
    const double x = uniform(rng, -1.0, 1.0);
    const double y = uniform(rng, -1.0, 1.0);
    const double z = uniform(rng, -1.0, 1.0);
    const double n2 = x * x + y * y + z * z;
    if (n2 > 1e-6 && n2 <= 1.0) return wfr::UnitVector(x, y, z);
  }
}

inline wfr::DiscreteMeasure random_test_measure(std::mt19937_64& rng, int n,
                                                double mass_scale = 1.0) {
  std::vector<double> w;
  std::vector<wfr::UnitVector> s;
  for (int i = 0; i < n; ++i) {
    w.push_back(mass_scale * (1.0 - uniform01(rng)));
    s.push_back(random_direction(rng));
  }
  return wfr::DiscreteMeasure(std::move(w), std::move(s));
}

inline wfr::CostMatrix random_omega(std::mt19937_64& rng, int m, int n) {
  Eigen::MatrixXd entries(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) entries(i, j) = uniform(rng, -1.0, 1.0);
  return wfr::CostMatrix{std::move(entries)};
}

// Feasible semi-coupling with mass spread over every row slot (and column
// slot), including creation/destruction.
inline wfr::SemiCoupling random_semi_coupling(std::mt19937_64& rng, const wfr::DiscreteMeasure& mu,
                                              const wfr::DiscreteMeasure& nu) {
  const int m = mu.size();
  const int n = nu.size();
  wfr::SemiCoupling c;
  c.source = Eigen::MatrixXd::Zero(m + 1, n + 1);
  c.target = Eigen::MatrixXd::Zero(m + 1, n + 1);
  for (int i = 1; i <= m; ++i) {
    double total = 0.0;
    for (int j = 0; j <= n; ++j) {
      c.source(i, j) = -std::log(1.0 - uniform01(rng));
      total += c.source(i, j);
    }
    c.source.row(i) *= mu.weight(i - 1) / total;
  }
  for (int j = 1; j <= n; ++j) {
    double total = 0.0;
    for (int i = 0; i <= m; ++i) {
      c.target(i, j) = -std::log(1.0 - uniform01(rng));
      total += c.target(i, j);
    }
    c.target.col(j) *= nu.weight(j - 1) / total;
  }
  return c;
}

// ----- mesh fixtures ---------------------------------------------------

// Appends a quad as two triangles keeping the given winding.
inline void add_quad(wfr::TriangleMesh& mesh, const Eigen::Vector3d& p0, const Eigen::Vector3d& p1,
                     const Eigen::Vector3d& p2, const Eigen::Vector3d& p3) {
  const int base = static_cast<int>(mesh.vertices.size());
  mesh.vertices.push_back(p0);
  mesh.vertices.push_back(p1);
  mesh.vertices.push_back(p2);
  mesh.vertices.push_back(p3);
  mesh.faces.push_back({base, base + 1, base + 2});
  mesh.faces.push_back({base, base + 2, base + 3});
}

// Axis-aligned box [0,ax] x [0,ay] x [0,az] shifted by t, outward normals.
inline wfr::TriangleMesh make_box(double ax, double ay, double az,
                                  const Eigen::Vector3d& t = Eigen::Vector3d::Zero()) {
  using V = Eigen::Vector3d;
  wfr::TriangleMesh mesh;
  const V o = t;
  const V x = V(ax, 0, 0), y = V(0, ay, 0), z = V(0, 0, az);
  add_quad(mesh, o, o + y, o + x + y, o + x);                  // bottom, -z
  add_quad(mesh, o + z, o + x + z, o + x + y + z, o + y + z);  // top, +z
  add_quad(mesh, o, o + x, o + x + z, o + z);                  // front, -y
  add_quad(mesh, o + y, o + y + z, o + x + y + z, o + x + y);  // back, +y
  add_quad(mesh, o, o + z, o + y + z, o + y);                  // left, -x
  add_quad(mesh, o + x, o + x + y, o + x + y + z, o + x + z);  // right, +x
  return mesh;
}

inline wfr::TriangleMesh make_cube(double scale = 1.0,
                                   const Eigen::Vector3d& t = Eigen::Vector3d::Zero()) {
  return make_box(scale, scale, scale, t);
}

// Midpoint 1-to-4 refinement; coplanar, so the area measure is unchanged.
inline wfr::TriangleMesh subdivide(const wfr::TriangleMesh& mesh) {
  wfr::TriangleMesh out;
  for (const auto& f : mesh.faces) {
    const Eigen::Vector3d v0 = mesh.vertices[static_cast<size_t>(f[0])];
    const Eigen::Vector3d v1 = mesh.vertices[static_cast<size_t>(f[1])];
    const Eigen::Vector3d v2 = mesh.vertices[static_cast<size_t>(f[2])];
    const Eigen::Vector3d m01 = 0.5 * (v0 + v1), m12 = 0.5 * (v1 + v2), m02 = 0.5 * (v0 + v2);
    const int base = static_cast<int>(out.vertices.size());
    for (const auto& v : {v0, v1, v2, m01, m12, m02}) out.vertices.push_back(v);
    out.faces.push_back({base + 0, base + 3, base + 5});
    out.faces.push_back({base + 3, base + 1, base + 4});
    out.faces.push_back({base + 5, base + 4, base + 2});
    out.faces.push_back({base + 3, base + 4, base + 5});
  }
  return out;
}

// Unit cube whose top face is a 4-triangle fan around an interior vertex that
// was slid inside the face plane: a different triangulation, same area
// measure as the plain cube.
inline wfr::TriangleMesh make_cube_moved_vertex() {
  using V = Eigen::Vector3d;
  wfr::TriangleMesh mesh;
  add_quad(mesh, V(0, 0, 0), V(0, 1, 0), V(1, 1, 0), V(1, 0, 0));  // bottom
  add_quad(mesh, V(0, 0, 0), V(1, 0, 0), V(1, 0, 1), V(0, 0, 1));  // -y
  add_quad(mesh, V(0, 1, 0), V(0, 1, 1), V(1, 1, 1), V(1, 1, 0));  // +y
  add_quad(mesh, V(0, 0, 0), V(0, 0, 1), V(0, 1, 1), V(0, 1, 0));  // -x
  add_quad(mesh, V(1, 0, 0), V(1, 1, 0), V(1, 1, 1), V(1, 0, 1));  // +x
  const V c(0.6, 0.55, 1.0);
  const std::array<V, 4> ring = {V(0, 0, 1), V(1, 0, 1), V(1, 1, 1), V(0, 1, 1)};
  for (size_t k = 0; k < 4; ++k) {
    const int base = static_cast<int>(mesh.vertices.size());
    mesh.vertices.push_back(ring[k]);
    mesh.vertices.push_back(ring[(k + 1) % 4]);
    mesh.vertices.push_back(c);
    mesh.faces.push_back({base, base + 1, base + 2});
  }
  return mesh;
}

// L-shaped prism: [0,2]^2 x [0,1] minus the [1,2] x [1,2] corner column.
// Its area measure equals that of the sqrt(3) x sqrt(3) x 2/sqrt(3) box.
inline wfr::TriangleMesh make_l_prism() {
  using V = Eigen::Vector3d;
  wfr::TriangleMesh mesh;
  const std::array<std::array<double, 2>, 3> squares = {{{0, 0}, {1, 0}, {0, 1}}};
  for (const auto& s : squares) {
    const double u = s[0], v = s[1];
    add_quad(mesh, V(u, v, 1), V(u + 1, v, 1), V(u + 1, v + 1, 1), V(u, v + 1, 1));  // top +z
    add_quad(mesh, V(u, v, 0), V(u, v + 1, 0), V(u + 1, v + 1, 0), V(u + 1, v, 0));  // bottom -z
  }
  add_quad(mesh, V(0, 0, 0), V(0, 0, 1), V(0, 2, 1), V(0, 2, 0));  // x = 0 wall, -x
  add_quad(mesh, V(0, 0, 0), V(2, 0, 0), V(2, 0, 1), V(0, 0, 1));  // y = 0 wall, -y
  add_quad(mesh, V(2, 0, 0), V(2, 1, 0), V(2, 1, 1), V(2, 0, 1));  // x = 2 wall, +x
  add_quad(mesh, V(1, 1, 0), V(1, 2, 0), V(1, 2, 1), V(1, 1, 1));  // notch wall, +x
  add_quad(mesh, V(2, 1, 0), V(1, 1, 0), V(1, 1, 1), V(2, 1, 1));  // notch wall, +y
  add_quad(mesh, V(1, 2, 0), V(0, 2, 0), V(0, 2, 1), V(1, 2, 1));  // y = 2 wall, +y
  return mesh;
}

inline wfr::TriangleMesh make_pyramid(double half_base = 1.0, double height = 1.3) {
  using V = Eigen::Vector3d;
  wfr::TriangleMesh mesh;
  const double h = half_base;
  add_quad(mesh, V(-h, -h, 0), V(-h, h, 0), V(h, h, 0), V(h, -h, 0));  // base, -z
  const V apex(0, 0, height);
  const std::array<V, 4> ring = {V(h, -h, 0), V(h, h, 0), V(-h, h, 0), V(-h, -h, 0)};
  for (size_t k = 0; k < 4; ++k) {
    const int base = static_cast<int>(mesh.vertices.size());
    mesh.vertices.push_back(ring[k]);
    mesh.vertices.push_back(ring[(k + 1) % 4]);
    mesh.vertices.push_back(apex);
    mesh.faces.push_back({base, base + 1, base + 2});
  }
  return mesh;
}

inline wfr::TriangleMesh make_octahedron(double scale = 1.0) {
  using V = Eigen::Vector3d;
  wfr::TriangleMesh mesh;
  for (int sx : {1, -1})
    for (int sy : {1, -1})
      for (int sz : {1, -1}) {
        const V ex(scale * sx, 0, 0), ey(0, scale * sy, 0), ez(0, 0, scale * sz);
        const int base = static_cast<int>(mesh.vertices.size());
        if (sx * sy * sz > 0) {
          mesh.vertices.push_back(ex);
          mesh.vertices.push_back(ey);
        } else {
          mesh.vertices.push_back(ey);
          mesh.vertices.push_back(ex);
        }
        mesh.vertices.push_back(ez);
        mesh.faces.push_back({base, base + 1, base + 2});
      }
  return mesh;
}

inline wfr::TriangleMesh make_tetrahedron(double scale = 1.0) {
  using V = Eigen::Vector3d;
  wfr::TriangleMesh mesh;
  mesh.vertices = {scale * V(1, 1, 1), scale * V(1, -1, -1), scale * V(-1, 1, -1),
                   scale * V(-1, -1, 1)};
  mesh.faces = {{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2}};
  return mesh;
}

// ----- scratch files ----------------------------------------------------

class TempDir {
 public:
  TempDir() {
    base_ = std::filesystem::temp_directory_path() /
            ("wfr_test_" + std::to_string(counter_++) + "_" + std::to_string(::getpid()));
    std::filesystem::create_directories(base_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(base_, ec);
  }
  std::string path(const std::string& name) const { return (base_ / name).string(); }
  std::string write(const std::string& name, const std::string& content) const {
    const std::string p = path(name);
    std::ofstream out(p);
    out << content;
    return p;
  }

 private:
  std::filesystem::path base_;
  static inline int counter_ = 0;
};

inline std::string off_text(const wfr::TriangleMesh& mesh) {
  std::string text = "OFF\n";
  text += std::to_string(mesh.vertices.size()) + " " + std::to_string(mesh.faces.size()) + " 0\n";
  char buf[128];
  for (const auto& v : mesh.vertices) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", v.x(), v.y(), v.z());
    text += buf;
  }
  for (const auto& f : mesh.faces) {
    std::snprintf(buf, sizeof buf, "3 %d %d %d\n", f[0], f[1], f[2]);
    text += buf;
  }
  return text;
}

inline std::string obj_text(const wfr::TriangleMesh& mesh) {
  std::string text;
  char buf[128];
  for (const auto& v : mesh.vertices) {
    std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", v.x(), v.y(), v.z());
    text += buf;
  }
  for (const auto& f : mesh.faces) {
    std::snprintf(buf, sizeof buf, "f %d %d %d\n", f[0] + 1, f[1] + 1, f[2] + 1);
    text += buf;
  }
  return text;
}

}  // namespace testutil
