#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "torsionlab/errors.hpp"
#include "torsionlab/geometry/domain.hpp"
#include "torsionlab/geometry/landmarks.hpp"
#include "torsionlab/geometry/mesh.hpp"
#include "torsionlab/fem/element.hpp"

using namespace torsionlab;
using namespace torsionlab::geometry;
using doctest::Approx;

namespace {

const double r3 = std::sqrt(3.0) / 3.0;

NarrowSpec parabola_pair(double eps) { return {-1.0, 1.0, PolyBoundaryFn({-1, 0, 1}), PolyBoundaryFn({1, 0, -1}), eps}; }

// Sum of element areas by quadrature of the isoparametric map.
double mesh_area(const Mesh &m) {
  double total = 0.0;
  for (std::size_t e = 0; e < m.elements.size(); ++e) {
    const auto nodes = fem::element_nodes(m, static_cast<int>(e));
    for (const auto &q : fem::triangle_quadrature()) total += q.weight * fem::map_point(nodes, q.xi, q.eta).det;
  }
  return total;
}

}  // namespace

TEST_CASE("polynomial arithmetic and derivatives") {
  const Polynomial p({1.0, -2.0, 3.0});  // 1 - 2x + 3x^2
  CHECK(p(2.0) == Approx(9.0));
  CHECK(p.derivative()(2.0) == Approx(10.0));
  CHECK(p.derivative_at(5.0, 2) == Approx(6.0));
  CHECK(p.derivative_at(5.0, 3) == 0.0);
  const Polynomial q({0.0, 1.0});
  CHECK((p * q)(2.0) == Approx(18.0));
  CHECK((p - p)(3.0) == 0.0);
  CHECK((p + q * 2.0)(1.0) == Approx(4.0));
}

TEST_CASE("boundary functions reject degree above eight") {
  CHECK_NOTHROW(PolyBoundaryFn(std::vector<double>(9, 1.0)));
  CHECK_THROWS_AS(PolyBoundaryFn(std::vector<double>(10, 1.0)), DomainError);
  CHECK_THROWS_AS(PolyBoundaryFn(std::vector<double>{}), DomainError);
  // trailing zeros do not count toward the degree
  std::vector<double> padded(12, 0.0);
  padded[0] = 1.0;
  CHECK_NOTHROW(PolyBoundaryFn(padded));
  CHECK((-PolyBoundaryFn({1, 2}))(1.0) == Approx(-3.0));
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(validate(TriangleSpec{{0, 0}, {1, 1}, {2, 2}}), DomainError);
  CHECK_THROWS_AS(validate(RectangleSpec{1.5}), DomainError);
  CHECK_THROWS_AS(validate(EllipseSpec{1.0, 0.0}), DomainError);
  CHECK_THROWS_AS(validate(AnnulusSpec{1.0, 0.5, 0.6}), DomainError);
  CHECK_THROWS_AS(validate(NarrowSpec{-1, 1, PolyBoundaryFn({-1, 0, 1}), PolyBoundaryFn({1, 0, -1}), -0.1}),
                  DomainError);
  // f2 not vanishing at the ends
  CHECK_THROWS_AS(validate(NarrowSpec{-1, 1, PolyBoundaryFn({-1, 0, 1}), PolyBoundaryFn({1}), 0.1}), DomainError);
  // f1 must be convex
  CHECK_THROWS_AS(validate(NarrowSpec{-1, 1, PolyBoundaryFn({0, 0, 0, 0, 1, 0, -1}), PolyBoundaryFn({1, 0, -1}), 0.1}),
                  DomainError);
  CHECK_NOTHROW(validate(parabola_pair(0.1)));
  CHECK_NOTHROW(validate(AnnulusSpec{1.0, 0.3, 0.2}));
}

TEST_CASE("areas, diameters and side counts") {
  CHECK(area(TriangleSpec{{0, 0}, {4, 0}, {1, 2}}) == Approx(4.0));
  CHECK(area(parabola_pair(0.1)) == Approx(0.1 * 8.0 / 3.0));
  CHECK(area(RectangleSpec{0.2}) == Approx(0.4));
  CHECK(area(EllipseSpec{1.0, 0.5}) == Approx(std::numbers::pi * 0.5));
  CHECK(area(AnnulusSpec{1.0, 0.3, 0.2}) == Approx(std::numbers::pi * 0.91));
  CHECK(diameter(EllipseSpec{1.0, 0.5}) == Approx(2.0));
  CHECK(diameter(TriangleSpec{{0, 0}, {4, 0}, {1, 2}}) == Approx(4.0));
  CHECK(side_count(TriangleSpec{}) == 3);
  CHECK(side_count(RectangleSpec{}) == 4);
  CHECK(side_count(AnnulusSpec{}) == 2);
  CHECK(type_name(EllipseSpec{}) == "ellipse");
}

TEST_CASE("spec JSON round trip") {
  const DomainSpec specs[] = {TriangleSpec{{0, 0}, {4, 0}, {1, 2}}, parabola_pair(0.05), RectangleSpec{0.2},
                              EllipseSpec{1.0, 0.1}, AnnulusSpec{1.0, 0.3, 0.2}};
  for (const auto &s : specs) CHECK(to_json(spec_from_json(to_json(s))) == to_json(s));
  CHECK_THROWS_AS(spec_from_json({{"type", "hexagon"}}), DomainError);
  CHECK_THROWS_AS(spec_from_json({{"type", "ellipse"}, {"a_semi", 1.0}}), DomainError);
  CHECK_THROWS_AS(spec_from_json({{"type", "triangle"}, {"A", {0, 0}}, {"B", {1, 0}}, {"C", {2, 0}}}), DomainError);
}

TEST_CASE("graph curvature is positive when bending toward the interior") {
  const PolyBoundaryFn lower({-0.5, 0, 0.5}), upper({1, 0, -1});
  CHECK(curvature_graph(lower, 0.0, 0.05, -1) == Approx(0.05));
  CHECK(curvature_graph(upper, 0.0, 0.05, +1) == Approx(0.10));
  // a straight line has none
  CHECK(curvature_graph(PolyBoundaryFn({0, 1}), 0.3, 1.0, 1) == 0.0);
}

TEST_CASE("unit right triangle at h = 0.5 has four elements") {
  const TriangleSpec t{{0, 0}, {1, 0}, {0, 1}};
  CHECK(triangle_subdivisions(t, 0.5) == 2);
  const auto m = build_mesh(t, 0.5);
  CHECK(m.elements.size() == 4);
  CHECK(m.nodes.size() == 15);
  CHECK(m.h == Approx(0.5));
}

TEST_CASE("meshes are valid for every domain family") {
  struct Case {
    DomainSpec spec;
    double h;
    double perimeter_tol;
  };
  const double pi = std::numbers::pi;
  const Case cases[] = {
      {TriangleSpec{{0, 0}, {4, 0}, {1, 2}}, 0.2, 1e-12},
      {parabola_pair(0.2), 0.05, 1e-5},
      {RectangleSpec{0.2}, 0.05, 1e-12},
      {EllipseSpec{1.0, 1.0}, 0.1, 1e-5},
      {EllipseSpec{1.0, 0.3}, 0.1, 1e-4},
      {AnnulusSpec{1.0, 0.3, 0.2}, 0.1, 1e-5},
  };
  for (const auto &c : cases) {
    CAPTURE(type_name(c.spec));
    const auto m = build_mesh(c.spec, c.h);
    REQUIRE(static_cast<int>(m.sides.size()) == side_count(c.spec));
    // isoparametric elements reproduce the area closely
    CHECK(mesh_area(m) == Approx(area(c.spec)).epsilon(1e-5));
    for (std::size_t e = 0; e < m.elements.size(); ++e) {
      const auto nodes = fem::element_nodes(m, static_cast<int>(e));
      for (const auto &q : fem::triangle_quadrature()) CHECK(fem::map_point(nodes, q.xi, q.eta).det > 0.0);
    }
    // chains are connected and s is continuous
    for (const auto &side : m.sides) {
      double s = 0.0;
      for (std::size_t k = 0; k < side.edges.size(); ++k) {
        const auto &e = m.boundary_edges[side.edges[k]];
        CHECK(e.s0 == Approx(s));
        CHECK(e.s1 > e.s0);
        s = e.s1;
        if (k + 1 < side.edges.size())
          CHECK(m.edge_nodes(e)[2] == m.edge_nodes(m.boundary_edges[side.edges[k + 1]])[0]);
      }
      CHECK(s == Approx(side.length));
    }
    for (const auto &e : m.boundary_edges) {
      const auto ids = m.edge_nodes(e);
      for (int id : ids) CHECK(m.on_boundary[id]);
    }
  }
  // exact perimeters where known
  const auto disk = build_mesh(EllipseSpec{1.0, 1.0}, 0.1);
  CHECK(disk.sides[0].length == Approx(2 * pi).epsilon(1e-5));
  CHECK(disk.sides[0].closed);
  const auto ann = build_mesh(AnnulusSpec{1.0, 0.3, 0.2}, 0.1);
  CHECK(ann.sides[0].length == Approx(2 * pi).epsilon(1e-5));
  CHECK(ann.sides[1].length == Approx(0.6 * pi).epsilon(1e-5));
  const auto rect = build_mesh(RectangleSpec{0.2}, 0.05);
  CHECK(rect.sides[0].length == Approx(1.0));
  CHECK(rect.sides[3].length == Approx(0.4));
  CHECK_FALSE(rect.sides[0].closed);
}

TEST_CASE("mesh errors") {
  CHECK_THROWS_AS(build_mesh(EllipseSpec{1.0, 1.0}, 0.0), MeshError);
  CHECK_THROWS_AS(build_mesh(EllipseSpec{1.0, 1.0}, 5.0), MeshError);
  CHECK_THROWS_AS(build_mesh(parabola_pair(0.01), 0.01), UnderResolvedError);
  CHECK_THROWS_AS(build_mesh(TriangleSpec{{0, 0}, {1, 1}, {2, 2}}, 0.1), DomainError);
}

TEST_CASE("side tags follow the documented order") {
  const auto m = build_mesh(TriangleSpec{{0, 0}, {4, 0}, {1, 2}}, 0.5);
  auto first_point = [&](int side) { return m.nodes[m.edge_nodes(m.boundary_edges[m.sides[side].edges.front()])[0]]; };
  CHECK(first_point(0).x == Approx(0.0));
  CHECK(first_point(1).x == Approx(4.0));
  CHECK(first_point(2).y == Approx(2.0));
  const auto r = build_mesh(RectangleSpec{0.2}, 0.05);
  const auto p = project_to_side(r, 3, {-0.1, 0.05});
  CHECK(p.point.x == Approx(0.0));
  CHECK(p.point.y == Approx(0.05));
  CHECK(p.distance == Approx(0.1));
}

TEST_CASE("projection onto a curved side") {
  const auto m = build_mesh(EllipseSpec{1.0, 1.0}, 0.05);
  const auto p = project_to_side(m, 0, {0.0, 0.5});
  CHECK(std::abs(p.point.x) < 1e-5);
  CHECK(p.point.y == Approx(1.0).epsilon(1e-6));
  CHECK(p.distance == Approx(0.5).epsilon(1e-6));
  CHECK(std::abs(dot(p.tangent, {0.0, 1.0})) < 1e-5);
}

TEST_CASE("triangle landmarks") {
  const auto lm = triangle_landmarks({0, 0}, {4, 0}, {1, 2});
  CHECK(lm.longest_side_id == 0);
  CHECK(lm.midpoint.x == Approx(2.0));
  CHECK(lm.altitude_foot.x == Approx(1.0));
  CHECK(lm.altitude_foot.y == Approx(0.0));
  CHECK(lm.opposite_vertex.y == Approx(2.0));
  // longest side elsewhere
  const auto lm2 = triangle_landmarks({0, 0}, {1, 0}, {0, 3});
  CHECK(lm2.longest_side_id == 1);
  // ties go to the lowest index
  CHECK(triangle_landmarks({-r3, 0}, {r3, 0}, {0, 1}).longest_side_id == 0);
  CHECK_THROWS_AS(triangle_landmarks({0, 0}, {1, 0}, {2, 0}), DomainError);
}
