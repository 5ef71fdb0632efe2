#pragma once

#include <iosfwd>
#include <vector>

#include "torsionlab/fem/solve.hpp"

namespace torsionlab::analysis {

struct PathEnd {
  enum class Kind { side, vertex, interior };
  Kind kind = Kind::interior;
  int side = -1;    // for Kind::side
  double s = 0.0;   // for Kind::side
  int vertex = -1;  // domain corner index for Kind::vertex
  Vec2 point;
};

struct NodalPath {
  std::vector<Vec2> points;
  std::vector<int> elements;  // element crossed between points k and k+1
  PathEnd start;
  PathEnd end;
  bool closed = false;
};

/// Zero set of direction . grad u, marched through the vertex triangles of the mesh.
/// When a boundary side is parallel to `direction` the field is divided by the distance
/// to that side's line, so the side itself (where the derivative vanishes identically)
/// drops out. Paths that touch a side start there.
std::vector<NodalPath> trace_nodal_line(const fem::TorsionSolution &solution, const Vec2 &direction);

/// Angle in degrees between the least-squares tangent of the five path points nearest
/// the side and the side normal. Throws AnalysisError for paths shorter than 5 points
/// or paths not ending on `side`.
double nodal_tangent_angle_at_boundary(const NodalPath &path, const geometry::Mesh &mesh, int side);

/// Largest distance from the path to the line through p and q.
double max_deviation_from_line(const NodalPath &path, const Vec2 &p, const Vec2 &q);

/// CSV "path_id,k,x,y".
void write_paths_csv(std::ostream &os, const std::vector<NodalPath> &paths);

}  // namespace torsionlab::analysis
