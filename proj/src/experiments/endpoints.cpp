#include "torsionlab/experiments/endpoints.hpp"

#include <cmath>
#include <sstream>

#include "torsionlab/analysis/profile.hpp"
#include "torsionlab/errors.hpp"
#include "torsionlab/exact.hpp"
#include "torsionlab/fem/flux.hpp"

namespace torsionlab::experiments {

EndpointReport endpoint_exclusion_check(const std::vector<double> &eps_list, double h, int jobs) {
  if (eps_list.size() < 3) throw DomainError("endpoint check needs at least three eps values");
  EndpointReport rep;
  rep.rows = parallel_map<EndpointRow>(static_cast<int>(eps_list.size()), jobs, [&](int i) {
    EndpointRow row;
    row.eps = eps_list[i];
    row.h = h;
    row.exact_endpoint = norm(exact::eval_ellipse_torsion(1.0, row.eps, 1.0, 0.0).gradient);
    row.exact_flat = norm(exact::eval_ellipse_torsion(1.0, row.eps, 0.0, row.eps).gradient);

    const auto sol = solve_domain(geometry::EllipseSpec{1.0, row.eps}, row.h);
    const auto profile = analysis::boundary_profile(sol);
    row.fem_endpoint = 0.5 * (profile.flux.at(0, {1.0, 0.0}) + profile.flux.at(0, {-1.0, 0.0}));
    row.fem_flat = 0.5 * (profile.flux.at(0, {0.0, row.eps}) + profile.flux.at(0, {0.0, -row.eps}));
    row.endpoint_rel_error = std::abs(row.fem_endpoint - row.exact_endpoint) / row.exact_endpoint;
    row.flat_rel_error = std::abs(row.fem_flat - row.exact_flat) / row.exact_flat;
    row.fem_ratio = row.fem_endpoint / row.fem_flat;
    row.fail_point = analysis::fail_point(profile).global.point;
    row.fail_distance_to_endpoints =
        std::min(distance(row.fail_point, {1.0, 0.0}), distance(row.fail_point, {-1.0, 0.0}));
    row.solver_residual = sol.residual;
    row.rectangle_short_side = exact::rectangle_short_side_gradient(row.eps);
    return row;
  });
  std::vector<double> eps, fem_ratio, exact_ratio;
  for (const auto &row : rep.rows) {
    eps.push_back(row.eps);
    fem_ratio.push_back(row.fem_ratio);
    exact_ratio.push_back(row.exact_endpoint / row.exact_flat);
  }
  rep.ratio_exponent = log_log_slope(eps, fem_ratio);
  rep.exact_ratio_exponent = log_log_slope(eps, exact_ratio);
  return rep;
}

Report EndpointReport::report() const {
  Report r;
  r.experiment = "endpoints";
  constexpr double kRelTol = 0.02;
  bool cross_check = true, never_at_endpoint = true;
  nlohmann::json rows_json = nlohmann::json::array();
  std::ostringstream csv;
  csv.precision(17);
  csv << "eps,h,exact_endpoint,exact_flat,fem_endpoint,fem_flat,fem_ratio,fail_x,fail_y,"
         "rectangle_short_side\n";
  for (const auto &row : rows) {
    cross_check = cross_check && row.endpoint_rel_error < kRelTol && row.flat_rel_error < kRelTol;
    // anything within a tenth of the semi-axis counts as the endpoint
    never_at_endpoint = never_at_endpoint && row.fail_distance_to_endpoints > 0.1;
    rows_json.push_back({{"eps", row.eps},
                         {"h", row.h},
                         {"exact_endpoint", row.exact_endpoint},
                         {"exact_flat", row.exact_flat},
                         {"fem_endpoint", row.fem_endpoint},
                         {"fem_flat", row.fem_flat},
                         {"endpoint_rel_error", row.endpoint_rel_error},
                         {"flat_rel_error", row.flat_rel_error},
                         {"fem_ratio", row.fem_ratio},
                         {"fail_point", {row.fail_point.x, row.fail_point.y}},
                         {"fail_distance_to_endpoints", row.fail_distance_to_endpoints},
                         {"solver_residual", row.solver_residual},
                         {"rectangle_short_side", row.rectangle_short_side}});
    csv << row.eps << ',' << row.h << ',' << row.exact_endpoint << ',' << row.exact_flat << ','
        << row.fem_endpoint << ',' << row.fem_flat << ',' << row.fem_ratio << ',' << row.fail_point.x << ','
        << row.fail_point.y << ',' << row.rectangle_short_side << '\n';
  }
  r.tables[""] = csv.str();
  r.data = {{"rows", rows_json},
            {"ratio_exponent", ratio_exponent},
            {"exact_ratio_exponent", exact_ratio_exponent},
            {"tolerances", {{"relative_error", kRelTol}, {"exponent", 0.1}}}};
  r.claims.push_back({"fem_matches_exact_within_2pct", cross_check});
  r.claims.push_back({"ratio_exponent_1_within_0_1", std::abs(ratio_exponent - 1.0) <= 0.1});
  r.claims.push_back({"fail_point_not_at_endpoints", never_at_endpoint});
  return r;
}

}  // namespace torsionlab::experiments
