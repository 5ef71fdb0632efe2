#pragma once

#include <array>

#include "torsionlab/geometry/mesh.hpp"
#include "torsionlab/vec2.hpp"

namespace torsionlab::fem {

/// Quadratic Lagrange basis on the reference triangle (0,0), (1,0), (0,1),
/// ordered v0, v1, v2, m01, m12, m20.
std::array<double, 6> shape(double xi, double eta);
std::array<Vec2, 6> shape_gradient(double xi, double eta);

struct QuadraturePoint {
  double xi, eta, weight;  // weights sum to 1/2
};

/// Seven-point rule, exact for degree 5.
const std::array<QuadraturePoint, 7> &triangle_quadrature();

/// Isoparametric map of one element evaluated at a reference point.
struct MappedPoint {
  Vec2 x;
  double det = 0.0;
  /// Physical gradients of the six basis functions.
  std::array<Vec2, 6> grad;
};

using ElementNodes = std::array<Vec2, 6>;

ElementNodes element_nodes(const geometry::Mesh &mesh, int element);
MappedPoint map_point(const ElementNodes &nodes, double xi, double eta);
Vec2 map_position(const ElementNodes &nodes, double xi, double eta);

/// Quadratic shape functions on [0, 1] for (start, mid, end).
std::array<double, 3> edge_shape(double xi);

}  // namespace torsionlab::fem
