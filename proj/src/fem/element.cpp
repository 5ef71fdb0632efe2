#include "torsionlab/fem/element.hpp"

#include <cmath>

namespace torsionlab::fem {

std::array<double, 6> shape(double xi, double eta) {
  const double l0 = 1.0 - xi - eta, l1 = xi, l2 = eta;
  return {l0 * (2.0 * l0 - 1.0), l1 * (2.0 * l1 - 1.0), l2 * (2.0 * l2 - 1.0),
          4.0 * l0 * l1,         4.0 * l1 * l2,         4.0 * l2 * l0};
}

std::array<Vec2, 6> shape_gradient(double xi, double eta) {
  const double l0 = 1.0 - xi - eta;
  return {Vec2{1.0 - 4.0 * l0, 1.0 - 4.0 * l0},
          Vec2{4.0 * xi - 1.0, 0.0},
          Vec2{0.0, 4.0 * eta - 1.0},
          Vec2{4.0 * (l0 - xi), -4.0 * xi},
          Vec2{4.0 * eta, 4.0 * xi},
          Vec2{-4.0 * eta, 4.0 * (l0 - eta)}};
}

const std::array<QuadraturePoint, 7> &triangle_quadrature() {
  static const std::array<QuadraturePoint, 7> rule = [] {
    const double s15 = std::sqrt(15.0);
    const double a1 = (6.0 - s15) / 21.0, b1 = (9.0 + 2.0 * s15) / 21.0;
    const double a2 = (6.0 + s15) / 21.0, b2 = (9.0 - 2.0 * s15) / 21.0;
    const double w0 = 9.0 / 80.0;
    const double w1 = (155.0 - s15) / 2400.0, w2 = (155.0 + s15) / 2400.0;
    return std::array<QuadraturePoint, 7>{{{1.0 / 3.0, 1.0 / 3.0, w0},
                                           {a1, a1, w1},
                                           {b1, a1, w1},
                                           {a1, b1, w1},
                                           {a2, a2, w2},
                                           {b2, a2, w2},
                                           {a2, b2, w2}}};
  }();
  return rule;
}

ElementNodes element_nodes(const geometry::Mesh &mesh, int element) {
  ElementNodes out;
  const auto &e = mesh.elements[element];
  for (int k = 0; k < 6; ++k) out[k] = mesh.nodes[e[k]];
  return out;
}

Vec2 map_position(const ElementNodes &nodes, double xi, double eta) {
  const auto n = shape(xi, eta);
  Vec2 x;
  for (int k = 0; k < 6; ++k) x += n[k] * nodes[k];
  return x;
}

MappedPoint map_point(const ElementNodes &nodes, double xi, double eta) {
  const auto dn = shape_gradient(xi, eta);
  const auto n = shape(xi, eta);
  MappedPoint mp;
  // J = [dx/dxi dx/deta; dy/dxi dy/deta]
  double j00 = 0, j01 = 0, j10 = 0, j11 = 0;
  for (int k = 0; k < 6; ++k) {
    mp.x += n[k] * nodes[k];
    j00 += nodes[k].x * dn[k].x;
    j01 += nodes[k].x * dn[k].y;
    j10 += nodes[k].y * dn[k].x;
    j11 += nodes[k].y * dn[k].y;
  }
  mp.det = j00 * j11 - j01 * j10;
  const double inv = 1.0 / mp.det;
  for (int k = 0; k < 6; ++k) {
    // grad = J^{-T} dn
    mp.grad[k] = {inv * (j11 * dn[k].x - j10 * dn[k].y), inv * (-j01 * dn[k].x + j00 * dn[k].y)};
  }
  return mp;
}

std::array<double, 3> edge_shape(double xi) {
  return {(1.0 - xi) * (1.0 - 2.0 * xi), 4.0 * xi * (1.0 - xi), xi * (2.0 * xi - 1.0)};
}

}  // namespace torsionlab::fem
