#include <doctest.h>

#include <cmath>

#include "oracle_values.hpp"
#include "torsionlab/errors.hpp"
#include "torsionlab/exact.hpp"

using namespace torsionlab;
using namespace torsionlab::exact;
using geometry::PolyBoundaryFn;
using doctest::Approx;

namespace {

const double r3 = std::sqrt(3.0) / 3.0;
const PolyBoundaryFn sym_lower({-1, 0, 1}), sym_upper({1, 0, -1});
const PolyBoundaryFn tie_lower({-0.5, 0, 0.5});
const PolyBoundaryFn asym_upper({1, 0.3, -1, -0.3});

}  // namespace

TEST_CASE("equilateral torsion function") {
  CHECK(eval_equilateral_torsion(0.0, 0.0).gradient.y == Approx(oracle::kEquilateralFluxOrigin));
  CHECK(eval_equilateral_torsion(0.3, 0.0).gradient.y == Approx(oracle::kEquilateralFlux03));
  CHECK(eval_equilateral_torsion(0.0, 1.0 / 3.0).value == Approx(oracle::kEquilateralCentre));
  for (double s : {0.0, 0.25, 0.7, 1.0}) {
    CHECK(eval_equilateral_torsion(-r3 + 2 * r3 * s, 0.0).value == Approx(0.0).epsilon(1e-15));
    CHECK(std::abs(eval_equilateral_torsion(r3 * (1 - s), s).value) < 1e-15);
  }
  const auto v = eval_equilateral_torsion(0.1, 0.4);
  CHECK(-(v.uxx + v.uyy) == Approx(1.0).epsilon(1e-14));
}

TEST_CASE("ellipse closed form") {
  const auto end = eval_ellipse_torsion(1.0, 0.1, 1.0, 0.0);
  CHECK(norm(end.gradient) == Approx(oracle::kEllipseEndpoint01).epsilon(1e-14));
  CHECK(norm(eval_ellipse_torsion(1.0, 0.1, 0.0, 0.1).gradient) == Approx(oracle::kEllipseFlat01).epsilon(1e-14));
  CHECK(norm(eval_ellipse_torsion(1.0, 0.05, 1.0, 0.0).gradient) == Approx(oracle::kEllipseEndpoint005).epsilon(1e-14));
  // disk: flux 1/2 everywhere on the unit circle
  for (double th : {0.0, 0.4, 2.0, 4.5}) {
    const auto d = eval_ellipse_torsion(1.0, 1.0, std::cos(th), std::sin(th));
    CHECK(norm(d.gradient) == Approx(0.5));
    CHECK(std::abs(d.value) < 1e-15);
  }
  // halving eps shrinks the endpoint gradient by about four
  const double ratio = norm(eval_ellipse_torsion(1.0, 0.1, 1.0, 0.0).gradient) /
                       norm(eval_ellipse_torsion(1.0, 0.05, 1.0, 0.0).gradient);
  CHECK(ratio == Approx(4.0).epsilon(0.02));
}

TEST_CASE("concentric annulus closed form") {
  const auto inner = eval_concentric_annulus_torsion(1.0, 0.3, 0.3);
  CHECK(inner.radial_derivative == Approx(oracle::kAnnulusInnerFlux).epsilon(1e-14));
  CHECK(-eval_concentric_annulus_torsion(1.0, 0.3, 1.0).radial_derivative ==
        Approx(oracle::kAnnulusOuterFlux).epsilon(1e-14));
  CHECK(std::abs(inner.value) < 1e-15);
  CHECK_THROWS_AS(eval_concentric_annulus_torsion(1.0, 0.3, 0.2), DomainError);
  CHECK_THROWS_AS(eval_concentric_annulus_torsion(1.0, 0.3, 1.1), DomainError);
  // flux balance: inner and outer boundary fluxes add up to the area
  const double pi = std::acos(-1.0);
  const double balance = 2 * pi * 0.3 * oracle::kAnnulusInnerFlux + 2 * pi * oracle::kAnnulusOuterFlux;
  CHECK(balance == Approx(pi * 0.91));
}

TEST_CASE("rectangle series against the cross-gap expansion") {
  CHECK(rectangle_short_side_gradient(0.2) == Approx(oracle::kRectangleShortSide02).epsilon(1e-6));
  CHECK(rectangle_short_side_gradient(0.1) == Approx(oracle::kRectangleShortSide01).epsilon(1e-6));
  CHECK(rectangle_short_side_gradient(0.05) == Approx(oracle::kRectangleShortSide005).epsilon(1e-6));
  CHECK(eval_rectangle_torsion(0.2, 0.5, 0.0) == Approx(oracle::kRectangleCentre02).epsilon(1e-8));
  CHECK(eval_rectangle_torsion(0.2, 0.3, 0.1) == Approx(oracle::kRectangleValue02).epsilon(1e-8));
  // the short-side gradient is linear in eps, not quadratic
  CHECK(rectangle_short_side_gradient(0.1) / rectangle_short_side_gradient(0.05) == Approx(2.0).epsilon(0.01));
}

TEST_CASE("narrow expansion coefficients") {
  const auto sym = narrow_coefficients(sym_lower, sym_upper, 0.0);
  CHECK(sym.lambda1 == Approx(oracle::kSymLambda1));
  CHECK(sym.lambda2_lower == Approx(oracle::kSymLambda2Lower));
  CHECK(sym.lambda2_upper == Approx(oracle::kSymLambda2Upper));

  const auto tie = narrow_coefficients(tie_lower, sym_upper, 0.0);
  CHECK(tie.lambda2_lower == Approx(oracle::kTieLambda2Lower));
  CHECK(tie.lambda2_upper == Approx(oracle::kTieLambda2Upper));

  const auto asym = narrow_coefficients(sym_lower, asym_upper, oracle::kAsymZ0);
  CHECK(asym.lambda1 == Approx(oracle::kAsymLambda1).epsilon(1e-12));
  CHECK(asym.lambda2_lower == Approx(oracle::kAsymLambda2Lower).epsilon(1e-12));
  CHECK(asym.lambda2_upper == Approx(oracle::kAsymLambda2Upper).epsilon(1e-12));
  // away from the thickest section too
  const auto off = narrow_coefficients(sym_lower, asym_upper, 0.3);
  CHECK(off.lambda2_lower == Approx(oracle::kAsymLambda2LowerAt03).epsilon(1e-12));
  CHECK(off.lambda2_upper == Approx(oracle::kAsymLambda2UpperAt03).epsilon(1e-12));

  const double eps = 0.05;
  CHECK(narrow_predicted_gradient_sq(sym_lower, sym_upper, eps, 0.0, Side::lower) ==
        Approx(eps * eps - 4 * std::pow(eps, 4)));
}

TEST_CASE("gap leading term") {
  const auto sym = gap_leading_term(sym_lower, sym_upper, -1, 1);
  CHECK(sym.z0 == Approx(0.0));
  CHECK(std::abs(sym.coefficient) < 1e-14);
  const auto tie = gap_leading_term(tie_lower, sym_upper, -1, 1);
  CHECK(tie.coefficient == Approx(oracle::kTieGap));
  // mirrored pair flips the sign
  CHECK(gap_leading_term(-sym_upper, -tie_lower, -1, 1).coefficient == Approx(-oracle::kTieGap));
  const auto asym = gap_leading_term(sym_lower, asym_upper, -1, 1);
  CHECK(asym.z0 == Approx(oracle::kAsymZ0).epsilon(1e-12));
  CHECK(asym.coefficient == Approx(oracle::kAsymGap).epsilon(1e-10));
  // the coefficient equals the eps^4 difference of the two sides
  const auto c = narrow_coefficients(sym_lower, asym_upper, asym.z0);
  CHECK(asym.coefficient == Approx(c.lambda2_upper - c.lambda2_lower).epsilon(1e-10));
}

TEST_CASE("gap leading term needs a unique maximiser") {
  // f2 - f1 = 2 (1 - x^2)(x^2 + 0.1) has maxima at two points
  const PolyBoundaryFn flat_top({0.1, 0, 0.9, 0, -1});
  CHECK_THROWS_AS(gap_leading_term(-flat_top, flat_top, -1, 1), DomainError);
  CHECK_THROWS_AS(gap_leading_term(PolyBoundaryFn({0}), PolyBoundaryFn({1}), -1, 1), DomainError);
}

TEST_CASE("barrier for the half-triangle problem") {
  const auto g0 = barrier_g(0.0, 0.0);
  CHECK(g0.g_xy_origin == Approx(oracle::kBarrierXY));
  for (double x : {0.05, 0.2, 0.4})
    for (double y : {0.1, 0.5, 0.8}) CHECK(std::abs(barrier_g(x, y).laplacian_residual) < 1e-12);
  // vanishes on the two legs through the origin
  CHECK(barrier_g(0.0, 0.6).value == 0.0);
  CHECK(barrier_g(0.3, 0.0).value == 0.0);
  // and is non-negative on the hypotenuse
  for (double s = 0.0; s <= 1.0; s += 0.125) CHECK(barrier_g(r3 * (1 - s), s).value >= -1e-15);
}

TEST_CASE("Poly2 calculus") {
  const Poly2 x = Poly2::x(), y = Poly2::y();
  const Poly2 p = x * x * y + 3.0 * y * y;
  CHECK(p(2, 3) == Approx(39.0));
  CHECK(p.dx()(2, 3) == Approx(12.0));
  CHECK(p.laplacian()(2, 3) == Approx(6.0 + 6.0));
  CHECK(p.coefficient(2, 1) == 1.0);
  CHECK(p.coefficient(1, 1) == 0.0);
}

TEST_CASE("first-order shape problem data") {
  CHECK(v1_rhs(Family::tilt, 0.2, 0.7) == Approx(0.6));
  CHECK(v1_rhs(Family::stretch, 0.0, 0.0) == 0.0);
}
