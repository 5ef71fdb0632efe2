#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "torsionlab/geometry/polynomial.hpp"
#include "torsionlab/vec2.hpp"

namespace torsionlab::geometry {

struct TriangleSpec {
  Vec2 A, B, C;
};

/// Region a < x < b, eps*f1(x) < y < eps*f2(x).
struct NarrowSpec {
  double a = -1.0;
  double b = 1.0;
  PolyBoundaryFn f1;
  PolyBoundaryFn f2;
  double eps = 0.1;
};

/// [0,1] x [-eps, eps].
struct RectangleSpec {
  double eps = 0.2;
};

struct EllipseSpec {
  double a_semi = 1.0;
  double b_semi = 1.0;
};

/// Outer disk of radius rho1 at the origin minus the disk of radius rho2 at (offset, 0).
struct AnnulusSpec {
  double rho1 = 1.0;
  double rho2 = 0.3;
  double offset = 0.0;
};

using DomainSpec = std::variant<TriangleSpec, NarrowSpec, RectangleSpec, EllipseSpec, AnnulusSpec>;

/// Throws DomainError when the spec violates its family's constraints.
void validate(const DomainSpec &spec);

std::string type_name(const DomainSpec &spec);
double diameter(const DomainSpec &spec);
/// Exact area, by quadrature of the boundary polynomials for narrow domains.
double area(const DomainSpec &spec);
/// Number of tagged boundary sides a mesh of this spec carries.
int side_count(const DomainSpec &spec);

nlohmann::json to_json(const DomainSpec &spec);
/// Parses and validates; throws DomainError on malformed input.
DomainSpec spec_from_json(const nlohmann::json &j);

/// Signed curvature of y = eps*f(x); orientation +1 for an upper boundary
/// (domain below), -1 for a lower one. Positive when bending toward the interior.
double curvature_graph(const PolyBoundaryFn &f, double x, double eps, int orientation);

}  // namespace torsionlab::geometry
