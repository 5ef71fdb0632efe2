#pragma once

#include <map>
#include <utility>

#include "torsionlab/geometry/polynomial.hpp"
#include "torsionlab/vec2.hpp"

namespace torsionlab::exact {

using geometry::PolyBoundaryFn;

/// Value, gradient and Hessian of a closed-form solution at one point.
struct PointValue {
  double value = 0.0;
  Vec2 gradient;
  double uxx = 0.0;
  double uxy = 0.0;
  double uyy = 0.0;
};

/// Radial profile u(r) with its first two derivatives.
struct RadialValue {
  double value = 0.0;
  double radial_derivative = 0.0;
  double second_derivative = 0.0;
};

/// Torsion function of the equilateral triangle with vertices (+-sqrt(3)/3, 0), (0, 1).
PointValue eval_equilateral_torsion(double x, double y);

/// Partial sum over the first n_terms odd modes of the series for [0,1] x [-eps, eps].
double eval_rectangle_torsion(double eps, double x, double y, int n_terms = 400);

/// |grad u| at the midpoint (0, 0) of the short side, partial sum over n_terms odd modes.
double rectangle_short_side_gradient(double eps, int n_terms = 400);

PointValue eval_ellipse_torsion(double a_semi, double b_semi, double x, double y);

/// Concentric annulus rho2 <= r <= rho1. Throws DomainError for r outside that range.
RadialValue eval_concentric_annulus_torsion(double rho1, double rho2, double r);

struct NarrowCoefficients {
  double a1 = 0.0, a2 = 0.0, a3 = 0.0, a4 = 0.0;
  double lambda1 = 0.0;
  double lambda2_lower = 0.0;
  double lambda2_upper = 0.0;
};

enum class Side { lower, upper };

NarrowCoefficients narrow_coefficients(const PolyBoundaryFn &f1, const PolyBoundaryFn &f2, double x);

/// eps^2 * lambda1 + eps^4 * lambda2 for the chosen side.
double narrow_predicted_gradient_sq(const PolyBoundaryFn &f1, const PolyBoundaryFn &f2, double eps,
                                    double x, Side side);

/// Leading eps^4 coefficient of (upper - lower) squared boundary gradient at the
/// thickest cross-section z0.
struct GapLeadingTerm {
  double z0 = 0.0;
  double coefficient = 0.0;
};

/// Throws DomainError when f2 - f1 has no unique interior maximiser on (a, b).
GapLeadingTerm gap_leading_term(const PolyBoundaryFn &f1, const PolyBoundaryFn &f2, double a, double b);

/// Bivariate polynomial keyed by exponent pairs (i, j) for x^i y^j.
class Poly2 {
 public:
  Poly2() = default;
  static Poly2 constant(double c);
  static Poly2 x();
  static Poly2 y();

  double operator()(double x, double y) const;
  Poly2 dx() const;
  Poly2 dy() const;
  Poly2 laplacian() const { return dx().dx() + dy().dy(); }
  double coefficient(int i, int j) const;

  Poly2 &operator+=(const Poly2 &o);
  Poly2 &operator*=(double s);
  friend Poly2 operator+(Poly2 a, const Poly2 &b) { return a += b; }
  friend Poly2 operator-(Poly2 a, const Poly2 &b) { return a += b * -1.0; }
  friend Poly2 operator*(Poly2 a, double s) { return a *= s; }
  friend Poly2 operator*(double s, Poly2 a) { return a *= s; }
  friend Poly2 operator*(const Poly2 &a, const Poly2 &b);

 private:
  std::map<std::pair<int, int>, double> terms_;
};

/// Comparison function for the half-triangle problem -Lap w = 3x/2.
Poly2 barrier_polynomial();

struct BarrierValue {
  double value = 0.0;
  /// (-Lap g) - (3x/2 + 3xy^2/2 + 9 sqrt(3) x^2 y / 2).
  double laplacian_residual = 0.0;
  double g_xy_origin = 0.0;
};

BarrierValue barrier_g(double x, double y);

enum class Family { stretch, tilt };

/// Right-hand side of the first-order shape-derivative problem.
double v1_rhs(Family family, double x, double y);

}  // namespace torsionlab::exact
