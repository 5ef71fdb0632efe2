#include "torsionlab/experiments/annulus.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "torsionlab/analysis/profile.hpp"
#include "torsionlab/errors.hpp"
#include "torsionlab/exact.hpp"
#include "torsionlab/fem/flux.hpp"

namespace torsionlab::experiments {

namespace {

constexpr int kInner = 1;

std::vector<AnnulusSample> inner_samples(const fem::BoundaryFlux &flux, const geometry::AnnulusSpec &spec,
                                         int n_angles) {
  std::vector<AnnulusSample> out;
  for (int k = 0; k < n_angles; ++k) {
    AnnulusSample s;
    s.phi = std::numbers::pi * k / (n_angles - 1);
    s.point = {spec.offset - spec.rho2 * std::cos(2.0 * s.phi), -spec.rho2 * std::sin(2.0 * s.phi)};
    s.grad = flux.at(kInner, s.point);
    out.push_back(s);
  }
  return out;
}

struct Solved {
  analysis::BoundaryProfile profile;
  analysis::FailPointReport fail;
  double residual = 0.0;
};

}  // namespace

AnnulusReport annulus_experiment(const geometry::AnnulusSpec &spec, int n_angles, double h, int jobs) {
  if (n_angles < 64) throw DomainError("annulus profile needs at least 64 angles");
  geometry::validate(spec);
  AnnulusReport rep;
  rep.spec = spec;
  rep.h = h;

  const geometry::AnnulusSpec concentric{spec.rho1, spec.rho2, 0.0};
  const auto solved = parallel_map<Solved>(2, jobs, [&](int k) {
    const auto sol = solve_domain(k == 0 ? spec : concentric, h);
    Solved s{analysis::boundary_profile(sol), {}, sol.residual};
    s.fail = analysis::fail_point(s.profile);
    return s;
  });
  const auto &main = solved[0];
  rep.solver_residual = std::max(main.residual, solved[1].residual);

  // concentric control
  const auto control = inner_samples(solved[1].profile.flux, concentric, n_angles);
  double lo = control[0].grad, hi = lo, sum = 0.0, sq = 0.0;
  for (const auto &s : control) {
    lo = std::min(lo, s.grad);
    hi = std::max(hi, s.grad);
    sum += s.grad;
  }
  rep.concentric_mean = sum / n_angles;
  for (const auto &s : control) sq += (s.grad - rep.concentric_mean) * (s.grad - rep.concentric_mean);
  rep.concentric_std = std::sqrt(sq / n_angles);
  rep.concentric_spread = hi - lo;
  rep.concentric_exact = exact::eval_concentric_annulus_torsion(spec.rho1, spec.rho2, spec.rho2).radial_derivative;
  rep.noise_floor = 3.0 * rep.concentric_std;

  rep.inner = inner_samples(main.profile.flux, spec, n_angles);
  std::size_t arg = 0;
  for (std::size_t k = 0; k < rep.inner.size(); ++k)
    if (rep.inner[k].grad > rep.inner[arg].grad) arg = k;
  rep.argmax_phi = rep.inner[arg].phi;
  // Expected shape: non-increasing on [0, pi/2], non-decreasing on [pi/2, pi].
  for (std::size_t k = 1; k < rep.inner.size(); ++k) {
    const double step = rep.inner[k].grad - rep.inner[k - 1].grad;
    const bool first_half = rep.inner[k].phi <= 0.5 * std::numbers::pi + 1e-12;
    if ((first_half && step > rep.noise_floor) || (!first_half && -step > rep.noise_floor))
      ++rep.monotonicity_violations;
  }

  rep.global_fail = main.fail.global.point;
  rep.global_side = main.fail.global.side;
  rep.inner_max = std::sqrt(main.fail.per_side[kInner].grad_sq);
  rep.outer_max = std::sqrt(main.fail.per_side[0].grad_sq);
  const Vec2 q0{spec.offset - spec.rho2, 0.0};
  const double angle = std::atan2(rep.global_fail.y - q0.y, rep.global_fail.x - spec.offset) -
                       std::atan2(q0.y, q0.x - spec.offset);
  rep.fail_arc_distance = rep.global_side == kInner
                              ? spec.rho2 * std::abs(std::remainder(angle, 2.0 * std::numbers::pi))
                              : std::numeric_limits<double>::infinity();
  return rep;
}

Report AnnulusReport::report() const {
  Report r;
  r.experiment = "annulus";
  nlohmann::json phi = nlohmann::json::array(), grad = nlohmann::json::array();
  std::ostringstream csv;
  csv.precision(17);
  csv << "phi,x,y,grad\n";
  for (const auto &s : inner) {
    phi.push_back(s.phi);
    grad.push_back(s.grad);
    csv << s.phi << ',' << s.point.x << ',' << s.point.y << ',' << s.grad << '\n';
  }
  r.tables[""] = csv.str();
  r.data = {{"rho1", spec.rho1},
            {"rho2", spec.rho2},
            {"offset", spec.offset},
            {"h", h},
            {"inner_phi", phi},
            {"inner_grad", grad},
            {"argmax_phi", argmax_phi},
            {"global_fail", {global_fail.x, global_fail.y}},
            {"global_side", global_side},
            {"fail_arc_distance", fail_arc_distance},
            {"inner_max", inner_max},
            {"outer_max", outer_max},
            {"monotonicity_violations", monotonicity_violations},
            {"noise_floor", noise_floor},
            {"concentric_spread", concentric_spread},
            {"concentric_std", concentric_std},
            {"concentric_mean", concentric_mean},
            {"concentric_exact", concentric_exact},
            {"solver_residual", solver_residual},
            {"tolerances", {{"arc", 1e-2}, {"concentric", 1e-3}, {"noise_factor", 3.0}}}};
  r.claims.push_back({"fail_point_at_nearest_inner_point", fail_arc_distance <= 1e-2});
  r.claims.push_back({"inner_max_exceeds_outer_max", inner_max > outer_max});
  r.claims.push_back({"no_monotonicity_violations", monotonicity_violations == 0});
  r.claims.push_back({"concentric_flux_constant", concentric_spread <= 1e-3});
  r.claims.push_back({"concentric_flux_matches_closed_form",
                      std::abs(concentric_mean - concentric_exact) <= 1e-3});
  return r;
}

}  // namespace torsionlab::experiments
