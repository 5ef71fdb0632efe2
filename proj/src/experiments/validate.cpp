#include "torsionlab/experiments/validate.hpp"

#include <cmath>
#include <numbers>

#include "torsionlab/exact.hpp"

namespace torsionlab::experiments {

namespace {

using std::numbers::pi;

// Max of |(-Lap u) - 1| for a closed form with analytic Hessian over a sample grid.
template <class Eval>
double hessian_defect(Eval eval, double xmax, double ymax, bool (*inside)(double, double, double, double)) {
  double worst = 0.0;
  for (int i = -10; i <= 10; ++i)
    for (int j = -10; j <= 10; ++j) {
      const double x = xmax * i / 10.0, y = ymax * j / 10.0;
      if (!inside(x, y, xmax, ymax)) continue;
      const auto v = eval(x, y);
      worst = std::max(worst, std::abs(-(v.uxx + v.uyy) - 1.0));
    }
  return worst;
}

bool in_ellipse(double x, double y, double a, double b) { return x * x / (a * a) + y * y / (b * b) <= 1.0; }

}  // namespace

Report validate_oracles() {
  Report r;
  r.experiment = "validate";
  constexpr double kSymbolic = 1e-12;
  constexpr double kSeries = 1e-4;

  const double ellipse = hessian_defect(
      [](double x, double y) { return exact::eval_ellipse_torsion(1.0, 0.5, x, y); }, 1.0, 0.5, in_ellipse);
  const double disk = hessian_defect(
      [](double x, double y) { return exact::eval_ellipse_torsion(1.0, 1.0, x, y); }, 1.0, 1.0, in_ellipse);
  double ellipse_boundary = 0.0;
  for (int k = 0; k < 32; ++k) {
    const double th = 2.0 * pi * k / 32;
    ellipse_boundary = std::max(ellipse_boundary,
                                std::abs(exact::eval_ellipse_torsion(1.0, 0.5, std::cos(th), 0.5 * std::sin(th)).value));
  }

  // -(u'' + u'/r) = 1, zero on both rings
  double annulus = 0.0;
  for (int k = 0; k <= 20; ++k) {
    const double rr = 0.3 + 0.7 * k / 20.0;
    const auto v = exact::eval_concentric_annulus_torsion(1.0, 0.3, rr);
    annulus = std::max(annulus, std::abs(-(v.second_derivative + v.radial_derivative / rr) - 1.0));
  }
  const double annulus_boundary = std::max(std::abs(exact::eval_concentric_annulus_torsion(1.0, 0.3, 1.0).value),
                                           std::abs(exact::eval_concentric_annulus_torsion(1.0, 0.3, 0.3).value));

  const double r3 = std::sqrt(3.0) / 3.0;
  double equilateral = 0.0, equilateral_boundary = 0.0;
  for (int i = 1; i < 10; ++i)
    for (int j = 1; j < 10; ++j) {
      const double y = j / 10.0, x = r3 * (1.0 - y) * (2.0 * i / 10.0 - 1.0);
      const auto v = exact::eval_equilateral_torsion(x, y);
      equilateral = std::max(equilateral, std::abs(-(v.uxx + v.uyy) - 1.0));
    }
  for (int i = 0; i <= 10; ++i) {
    const double s = i / 10.0;
    equilateral_boundary = std::max({equilateral_boundary,
                                     std::abs(exact::eval_equilateral_torsion(-r3 + 2.0 * r3 * s, 0.0).value),
                                     std::abs(exact::eval_equilateral_torsion(r3 * (1.0 - s), s).value),
                                     std::abs(exact::eval_equilateral_torsion(-r3 * (1.0 - s), s).value)});
  }

  // five-point Laplacian of the series
  const double eps = 0.2, d = 1e-3;
  double rectangle = 0.0, rectangle_boundary = 0.0;
  auto u = [&](double x, double y) { return exact::eval_rectangle_torsion(eps, x, y); };
  for (int i = 1; i < 10; ++i)
    for (int j = -4; j <= 4; ++j) {
      const double x = i / 10.0, y = eps * j / 5.0;
      const double lap = (u(x + d, y) + u(x - d, y) + u(x, y + d) + u(x, y - d) - 4.0 * u(x, y)) / (d * d);
      rectangle = std::max(rectangle, std::abs(-lap - 1.0));
    }
  for (int i = 0; i <= 10; ++i) {
    const double x = i / 10.0, y = eps * (2.0 * i / 10.0 - 1.0);
    rectangle_boundary = std::max({rectangle_boundary, std::abs(u(x, eps)), std::abs(u(x, -eps)),
                                   std::abs(u(0.0, y)), std::abs(u(1.0, y))});
  }

  const geometry::PolyBoundaryFn lower({-1.0, 0.0, 1.0}), upper({1.0, 0.0, -1.0});
  const auto sym = exact::narrow_coefficients(lower, upper, 0.0);
  const auto tie = exact::gap_leading_term(geometry::PolyBoundaryFn({-0.5, 0.0, 0.5}), upper, -1.0, 1.0);
  const auto sym_gap = exact::gap_leading_term(lower, upper, -1.0, 1.0);

  double barrier = 0.0;
  for (int i = 0; i <= 10; ++i)
    for (int j = 0; j <= 10; ++j) {
      const double y = j / 10.0, x = r3 * (1.0 - y) * i / 10.0;
      barrier = std::max(barrier, std::abs(exact::barrier_g(x, y).laplacian_residual));
    }
  const double g_xy = exact::barrier_g(0.0, 0.0).g_xy_origin;

  r.data = {{"ellipse_pde_defect", ellipse},
            {"ellipse_boundary_defect", ellipse_boundary},
            {"disk_pde_defect", disk},
            {"annulus_pde_defect", annulus},
            {"annulus_boundary_defect", annulus_boundary},
            {"equilateral_pde_defect", equilateral},
            {"equilateral_boundary_defect", equilateral_boundary},
            {"rectangle_fd_defect", rectangle},
            {"rectangle_boundary_defect", rectangle_boundary},
            {"symmetric_pair_lambda1", sym.lambda1},
            {"symmetric_pair_lambda2_lower", sym.lambda2_lower},
            {"symmetric_pair_lambda2_upper", sym.lambda2_upper},
            {"symmetric_pair_gap", sym_gap.coefficient},
            {"tie_break_pair_z0", tie.z0},
            {"tie_break_pair_gap", tie.coefficient},
            {"barrier_laplacian_defect", barrier},
            {"barrier_xy_origin", g_xy},
            {"tolerances", {{"symbolic", kSymbolic}, {"series", kSeries}}}};
  r.claims.push_back({"ellipse_pde", ellipse <= kSymbolic && ellipse_boundary <= kSymbolic});
  r.claims.push_back({"disk_pde", disk <= kSymbolic});
  r.claims.push_back({"annulus_pde", annulus <= kSymbolic && annulus_boundary <= kSymbolic});
  r.claims.push_back({"equilateral_pde", equilateral <= kSymbolic && equilateral_boundary <= kSymbolic});
  r.claims.push_back({"rectangle_series_pde", rectangle <= kSeries && rectangle_boundary <= kSeries});
  r.claims.push_back({"symmetric_pair_coefficients",
                      std::abs(sym.lambda1 - 1.0) <= kSymbolic && std::abs(sym.lambda2_lower + 4.0) <= kSymbolic &&
                          std::abs(sym.lambda2_upper + 4.0) <= kSymbolic && std::abs(sym_gap.coefficient) <= kSymbolic});
  r.claims.push_back({"tie_break_pair_gap", std::abs(tie.coefficient + 9.0 / 32.0) <= kSymbolic});
  r.claims.push_back({"barrier_pde", barrier <= kSymbolic && std::abs(g_xy - 5.0 / 16.0) <= kSymbolic});
  return r;
}

}  // namespace torsionlab::experiments
