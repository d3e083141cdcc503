#pragma once

#include <Eigen/Dense>
#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "wfr/measure.hpp"
#include "wfr/solver.hpp"

namespace wfr {

struct TriangleMesh {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<std::array<int, 3>> faces;  // CCW indices into vertices
};

enum class MeshFormat { off, obj };

// Reads OFF or OBJ (chosen by file extension), fan-triangulating polygonal
// faces and dropping degenerate faces whose area is at most 1e-12 times the
// mean face area. The drop count is reported through `dropped` when given.
TriangleMesh load_mesh(const std::string& path, int* dropped = nullptr);
TriangleMesh load_mesh(std::istream& in, MeshFormat format, const std::string& display_name,
                       int* dropped = nullptr);

// Removes degenerate faces in place, returns how many were dropped.
int filter_degenerate_faces(TriangleMesh& mesh);

struct FaceGeometry {
  std::vector<double> areas;
  std::vector<UnitVector> normals;
};

// Area and outward unit normal of every face from the cross product of its
// edge vectors.
FaceGeometry face_geometry(const TriangleMesh& mesh);

// Norm of the area-weighted normal sum over the total area; zero for closed
// surfaces, so a large value flags holes or inconsistent orientation.
double closure_residual(const FaceGeometry& geometry);

// The area measure of the mesh: one atom per face, placed at the face normal
// and weighted by the face area. This is what the square root normal field
// transform induces on piecewise linear surfaces, and it is invariant under
// translation and reparametrization.
DiscreteMeasure srnf_measure(const TriangleMesh& mesh, bool consolidate = false);

// Shape pseudo-distance: the transport distance between the two area
// measures. Consolidation merges faces with equal normals first; leave it off
// when the coupling itself is needed per face (see fuzzy_correspondence).
SolveReport srnf_distance(const TriangleMesh& mesh1, const TriangleMesh& mesh2,
                          const SolverConfig& config = {}, bool consolidate = true);

struct Correspondence {
  // For each face of the first mesh: index of the second-mesh face receiving
  // the largest share of its area, or -1 when everything was destroyed.
  std::vector<int> assignment;
  std::vector<double> mass_fractions;  // that share, as a fraction of the face area
  std::vector<std::array<double, 3>> colors;  // inherited from the assigned face
};

// Normal-based face colors, rgb = (normal + 1) / 2.
std::vector<std::array<double, 3>> face_colors(const TriangleMesh& mesh);

// Reads the argmax of each source row out of a solve run on the raw
// (unconsolidated) area measures. The coupling dimensions must match the face
// counts exactly.
Correspondence fuzzy_correspondence(const SolveReport& report, const TriangleMesh& mesh1,
                                    const TriangleMesh& mesh2);

}  // namespace wfr
