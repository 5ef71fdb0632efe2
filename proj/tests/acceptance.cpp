// Runs the twelve acceptance checks and prints one PASS/FAIL line for each.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <string>

#include "torsionlab/exact.hpp"
#include "torsionlab/experiments/annulus.hpp"
#include "torsionlab/experiments/endpoints.hpp"
#include "torsionlab/experiments/narrow.hpp"
#include "torsionlab/experiments/triangles.hpp"
#include "torsionlab/experiments/validate.hpp"
#include "torsionlab/fem/flux.hpp"

using namespace torsionlab;
using namespace torsionlab::experiments;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char *f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

bool claim(const Report &r, const std::string &name) {
  for (const auto &c : r.claims)
    if (c.name == name) return c.holds;
  return false;
}

const geometry::PolyBoundaryFn sym_lower({-1, 0, 1}), sym_upper({1, 0, -1});
const geometry::PolyBoundaryFn asym_upper({1, 0.3, -1, -0.3});
const geometry::PolyBoundaryFn tie_lower({-0.5, 0, 0.5});
const std::vector<double> eps_sweep{0.2, 0.1, 0.05};

Outcome oracle_identities() {
  const auto r = validate_oracles();
  const auto &d = r.data;
  const double symbolic = std::max({d["ellipse_pde_defect"].get<double>(), d["disk_pde_defect"].get<double>(),
                                    d["annulus_pde_defect"].get<double>()});
  const double series = d["rectangle_fd_defect"];
  return {symbolic <= 1e-12 && series <= 1e-4, fmt("closed forms %.1e, series %.1e", symbolic, series)};
}

Outcome fem_vs_oracles() {
  const double r3 = std::sqrt(3.0) / 3.0;
  const auto omega0 = solve_domain(geometry::TriangleSpec{{-r3, 0}, {r3, 0}, {0, 1}}, 0.01);
  double nodal = 0.0;
  for (std::size_t i = 0; i < omega0.mesh->nodes.size(); ++i) {
    const Vec2 &p = omega0.mesh->nodes[i];
    nodal = std::max(nodal, std::abs(omega0.nodal_values[i] - exact::eval_equilateral_torsion(p.x, p.y).value));
  }
  const auto disk = fem::boundary_flux(solve_domain(geometry::EllipseSpec{1.0, 1.0}, 0.02));
  double disk_err = 0.0;
  for (int k = 0; k < 360; ++k) {
    const double th = 2.0 * std::acos(-1.0) * k / 360;
    disk_err = std::max(disk_err, std::abs(disk.at(0, {std::cos(th), std::sin(th)}) - 0.5));
  }
  const auto rect = fem::boundary_flux(solve_domain(geometry::RectangleSpec{0.2}, 0.01));
  const double rect_err = std::abs(rect.at(3, {0.0, 0.0}) - exact::rectangle_short_side_gradient(0.2));
  return {nodal <= 1e-5 && disk_err <= 1e-3 && rect_err <= 1e-3,
          fmt("nodal %.1e, disk flux %.1e, rectangle flux %.1e", nodal, disk_err, rect_err)};
}

NarrowSweepReport &symmetric_sweep() {
  static NarrowSweepReport rep = narrow_sweep(sym_lower, sym_upper, eps_sweep);
  return rep;
}

Outcome narrow_expansion() {
  const auto &rep = symmetric_sweep();
  double worst = 0.0;
  for (const auto &row : rep.rows)
    if (row.eps == 0.05) worst = std::max(worst, std::abs(row.order4_coefficient + 4.0) / 4.0);
  const double slope = std::min(rep.slope_lower, rep.slope_upper);
  return {worst <= 0.05 && slope >= 5.5,
          fmt("eps^4 coefficient off by %.2f%%, remainder slope %.2f", 100 * worst, slope)};
}

Outcome narrow_convergence() {
  const auto asym = narrow_sweep(sym_lower, asym_upper, eps_sweep);
  bool decreasing = true;
  for (std::size_t i = 1; i < asym.fail_offset.size(); ++i)
    decreasing = decreasing && asym.fail_offset[i] < asym.fail_offset[i - 1];
  const double last = asym.fail_offset.back();
  const double sym_last = std::abs(symmetric_sweep().fail_x.back());
  return {decreasing && last <= 0.05 && sym_last <= 0.05,
          fmt("|x_fail - z0| = %.2e, %.2e, %.2e; symmetric |x_fail| %.1e", asym.fail_offset[0],
              asym.fail_offset[1], asym.fail_offset[2], sym_last)};
}

Outcome tie_break() {
  const auto c = narrow_side_comparison(tie_lower, sym_upper, 0.05);
  const auto m = narrow_side_comparison(-sym_upper, -tie_lower, 0.05);
  const bool pass = c.winner == "lower" && c.margin > 0 && c.margin >= 3.0 * c.refinement_variation &&
                    m.winner == "upper";
  return {pass, fmt("margin %.2e vs variation %.1e, mirrored winner %s", c.margin, c.refinement_variation,
                    m.winner.c_str())};
}

Outcome endpoints() {
  const auto rep = endpoint_exclusion_check(eps_sweep);
  const auto r = rep.report();
  return {claim(r, "ratio_exponent_1_within_0_1") && claim(r, "fail_point_not_at_endpoints") &&
              claim(r, "fem_matches_exact_within_2pct"),
          fmt("ratio exponent %.3f", rep.ratio_exponent)};
}

SuiteReport &suite() {
  static SuiteReport rep = random_triangle_suite(20, 7, 0.01);
  return rep;
}

Outcome triangle_location() {
  const auto &rep = suite();
  int unique = 0, located = 0;
  for (const auto &t : rep.triangles) {
    bool one = true;
    for (std::size_t k = 0; k < t.critical_points_per_side.size(); ++k)
      one = one && t.critical_points_per_side[k] == 1 && t.maxima_per_side[k] == 1;
    unique += one;
    located += t.location_ok();
  }
  return {unique == 20 && located == 20, fmt("unique %d/20, located %d/20", unique, located)};
}

Outcome family(exact::Family f) {
  const auto rep = triangle_family(f, {0.04, 0.08}, 0.008);
  const auto r = rep.report();
  return {claim(r, "ratio_within_bounds") && claim(r, "difference_exceeds_bound"),
          fmt("x/t = %.4f, %.4f; difference/t^2 = %.4f, %.4f", rep.rows[0].ratio, rep.rows[1].ratio,
              rep.rows[0].difference_over_t2, rep.rows[1].difference_over_t2)};
}

Outcome mixed_derivative() {
  const auto rep = w2_bound_experiment(0.005);
  const auto r = rep.report();
  const bool pass = claim(r, "c0_in_bounds") && claim(r, "c0_stable_across_radii") &&
                    claim(r, "barrier_dominates") && claim(r, "c1_near_minus_three_quarters");
  return {pass, fmt("c0 = %.5f, c1 = %.4f, min(g - w2) = %.1e", rep.c0_fit, rep.fits[1].c1, rep.min_barrier_gap)};
}

Outcome annulus() {
  const auto rep = annulus_experiment({1.0, 0.3, 0.2}, 129, 0.02);
  return {rep.report().all_claims_hold(),
          fmt("arc distance %.1e, inner %.4f > outer %.4f, %d violations, concentric spread %.1e",
              rep.fail_arc_distance, rep.inner_max, rep.outer_max, rep.monotonicity_violations,
              rep.concentric_spread)};
}

Outcome nodal_lines() {
  int pass = 0;
  double worst_angle = 0.0;
  for (const auto &t : suite().triangles) {
    pass += t.nodal_ok();
    worst_angle = std::max(worst_angle, t.tangent_angle_deg);
  }
  return {pass == 20, fmt("%d/20, largest boundary angle %.2f deg", pass, worst_angle)};
}

}  // namespace

int main() {
  struct Criterion {
    const char *name;
    std::function<Outcome()> run;
    double budget_s;
  };
  const Criterion criteria[] = {
      {"oracle PDE identities", oracle_identities, 1.0},
      {"FEM against closed forms", fem_vs_oracles, 30.0},
      {"narrow expansion and remainder order", narrow_expansion, 120.0},
      {"narrow fail-point convergence", narrow_convergence, 120.0},
      {"curvature tie-break", tie_break, 120.0},
      {"endpoint exclusion", endpoints, 120.0},
      {"triangle location and uniqueness", triangle_location, 180.0},
      {"stretched family", [] { return family(exact::Family::stretch); }, 120.0},
      {"tilted family", [] { return family(exact::Family::tilt); }, 120.0},
      {"mixed-derivative bounds", mixed_derivative, 120.0},
      {"annulus", annulus, 120.0},
      {"nodal-line structure", nodal_lines, 180.0},
  };
  int failures = 0, index = 0;
  for (const auto &c : criteria) {
    ++index;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception &e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget_s) {
      o.pass = false;
      o.detail += fmt(" (over the %.0f s budget)", c.budget_s);
    }
    failures += !o.pass;
    std::printf("%s %2d %-38s %6.1fs  %s\n", o.pass ? "PASS" : "FAIL", index, c.name, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
