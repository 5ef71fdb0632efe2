#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "torsionlab/geometry/domain.hpp"
#include "torsionlab/vec2.hpp"

namespace torsionlab::geometry {

/// Six-node triangle: vertices v0, v1, v2 then midnodes m01, m12, m20.
/// Local edge e runs from vertex e to vertex (e+1)%3 through midnode 3+e.
using Element = std::array<int, 6>;

struct BoundaryEdge {
  int element = 0;
  int local_edge = 0;
  int side = 0;
  double s0 = 0.0;
  double s1 = 0.0;
};

/// Ordered chain of boundary edges; the domain lies to the left of the direction of travel.
struct BoundarySide {
  std::vector<int> edges;  // indices into Mesh::boundary_edges, increasing s
  bool closed = false;
  double length = 0.0;
};

struct Mesh {
  DomainSpec spec;
  double h = 0.0;
  std::vector<Vec2> nodes;
  std::vector<Element> elements;
  std::vector<BoundaryEdge> boundary_edges;
  std::vector<BoundarySide> sides;
  std::vector<bool> on_boundary;
  std::vector<bool> is_vertex;

  /// (start, mid, end) node ids of a boundary edge in chain direction.
  std::array<int, 3> edge_nodes(const BoundaryEdge &e) const;
  /// Point on a boundary edge at local parameter xi in [0, 1].
  Vec2 edge_point(const BoundaryEdge &e, double xi) const;
};

/// Extra controls for the tensor-grid families.
struct MeshOptions {
  /// Ratio between the x-spacing and the cross-gap spacing on narrow domains and rectangles.
  double x_stretch = 1.0;
};

/// Throws DomainError for an invalid spec, MeshError for an unusable h and
/// UnderResolvedError when a narrow gap gets fewer than 4 fibers.
Mesh build_mesh(const DomainSpec &spec, double h, const MeshOptions &options = {});

/// Triangle mesh with n subdivisions per side (n*n elements).
Mesh triangle_mesh(const TriangleSpec &spec, int n);

/// Smallest power of two n with sqrt(2 * area) / n <= h.
int triangle_subdivisions(const TriangleSpec &spec, double h);

struct SideProjection {
  double s = 0.0;
  double distance = 0.0;
  Vec2 point;
  Vec2 tangent;  // unit, in the direction of increasing s
};

/// Closest point of a boundary side to p.
SideProjection project_to_side(const Mesh &mesh, int side, const Vec2 &p);

/// Length of a quadratic boundary edge.
double edge_length(const Vec2 &p0, const Vec2 &pm, const Vec2 &p1);

/// Header "N_nodes N_elems N_bedges", then node, element and boundary lines.
void write_mesh(std::ostream &os, const Mesh &mesh);

}  // namespace torsionlab::geometry
