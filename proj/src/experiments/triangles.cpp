#include "torsionlab/experiments/triangles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>

#include "torsionlab/analysis/mixed_fit.hpp"
#include "torsionlab/analysis/nodal_line.hpp"
#include "torsionlab/analysis/profile.hpp"
#include "torsionlab/errors.hpp"
#include "torsionlab/fem/flux.hpp"
#include "torsionlab/geometry/landmarks.hpp"

namespace torsionlab::experiments {

namespace {

const double kR = std::sqrt(3.0) / 3.0;

const char *family_name(exact::Family f) { return f == exact::Family::stretch ? "stretch" : "tilt"; }

double angle_deg(const Vec2 &at, const Vec2 &p, const Vec2 &q) {
  const Vec2 u = p - at, v = q - at;
  return std::atan2(std::abs(cross(u, v)), dot(u, v)) * 180.0 / std::numbers::pi;
}

}  // namespace

geometry::TriangleSpec perturbed_triangle(exact::Family family, double t) {
  if (family == exact::Family::stretch) return {{-kR, 0.0}, {kR + t, 0.0}, {0.0, 1.0}};
  return {{-kR, 0.0}, {kR, 0.0}, {t, 1.0}};
}

std::pair<Vec2, Vec2> family_landmarks(exact::Family family, double t) {
  if (family == exact::Family::stretch) return {{0.5 * t, 0.0}, {0.0, 0.0}};
  return {{0.0, 0.0}, {t, 0.0}};
}

PerturbationReport triangle_family(exact::Family family, std::vector<double> t_list, double h, int jobs) {
  if (t_list.size() < 2) throw DomainError("triangle family needs at least two t values");
  std::ranges::sort(t_list);
  for (double t : t_list)
    if (!(t > 0.0 && t <= 0.15)) throw DomainError("t must lie in (0, 0.15]");

  PerturbationReport rep;
  rep.family = family;
  rep.h = h;
  rep.rows = parallel_map<FamilyRow>(static_cast<int>(t_list.size()), jobs, [&](int i) {
    FamilyRow row;
    row.t = t_list[i];
    const auto sol = solve_domain(perturbed_triangle(family, row.t), h);
    const auto profile = analysis::boundary_profile(sol);
    const auto crit = analysis::locate_critical_points(profile, 0);
    const analysis::CriticalPoint *best = nullptr;
    for (const auto &c : crit) {
      if (c.kind != analysis::CriticalKind::max) continue;
      ++row.base_maxima;
      if (!best || c.grad_sq > best->grad_sq) best = &c;
    }
    if (!best) throw AnalysisError("no critical point of the gradient on the base");
    row.x_fail = best->point.x;
    row.ratio = row.x_fail / row.t;
    const auto [M, F] = family_landmarks(family, row.t);
    row.uy_at_M = profile.flux.at(0, M);
    row.uy_at_F = profile.flux.at(0, F);
    row.difference = row.uy_at_M - row.uy_at_F;
    row.difference_over_t2 = row.difference / (row.t * row.t);
    row.solver_residual = sol.residual;
    return row;
  });

  // ratio = phi1(0) + slope * t
  const double n = static_cast<double>(rep.rows.size());
  double st = 0, sr = 0, stt = 0, str = 0;
  for (const auto &row : rep.rows) {
    st += row.t;
    sr += row.ratio;
    stt += row.t * row.t;
    str += row.t * row.ratio;
  }
  const double slope = (n * str - st * sr) / (n * stt - st * st);
  rep.phi1_0 = (sr - slope * st) / n;
  // stretch: phi1(0) = 1/2 + (2/3) v1_xy; tilt: phi1(0) = (2/3) v1_xy
  rep.v1_xy_origin = family == exact::Family::stretch ? 1.5 * (rep.phi1_0 - 0.5) : 1.5 * rep.phi1_0;
  return rep;
}

Report PerturbationReport::report() const {
  Report r;
  r.experiment = "triangle-family";
  const bool stretch = family == exact::Family::stretch;
  const double lo = stretch ? 7.0 / 24.0 : 0.0;
  const double hi = stretch ? 0.5 : 5.0 / 12.0;
  const double diff_coeff = stretch ? 1.0 / 32.0 : 1.0 / 8.0;

  bool ratio_ok = true, diff_ok = true, unique = true;
  nlohmann::json rows_json = nlohmann::json::array();
  std::ostringstream csv;
  csv.precision(17);
  csv << "t,x_fail,ratio,uy_at_M,uy_at_F,difference,difference_over_t2\n";
  for (const auto &row : rows) {
    ratio_ok = ratio_ok && row.ratio > lo && row.ratio < hi;
    diff_ok = diff_ok && row.difference > diff_coeff * row.t * row.t;
    unique = unique && row.base_maxima == 1;
    rows_json.push_back({{"t", row.t},
                         {"x_fail", row.x_fail},
                         {"ratio", row.ratio},
                         {"uy_at_M", row.uy_at_M},
                         {"uy_at_F", row.uy_at_F},
                         {"difference", row.difference},
                         {"difference_over_t2", row.difference_over_t2},
                         {"base_maxima", row.base_maxima},
                         {"solver_residual", row.solver_residual}});
    csv << row.t << ',' << row.x_fail << ',' << row.ratio << ',' << row.uy_at_M << ',' << row.uy_at_F << ','
        << row.difference << ',' << row.difference_over_t2 << '\n';
  }
  r.tables[""] = csv.str();
  const double linearity = std::abs(rows[0].ratio - rows[1].ratio);
  r.data = {{"family", family_name(family)},
            {"h", h},
            {"rows", rows_json},
            {"phi1_0", phi1_0},
            {"v1_xy_origin", v1_xy_origin},
            {"linearity_gap", linearity},
            {"tolerances",
             {{"ratio_lower", lo}, {"ratio_upper", hi}, {"difference_over_t2_min", diff_coeff},
              {"linearity", 0.05}}}};
  r.claims.push_back({"ratio_within_bounds", ratio_ok});
  r.claims.push_back({"difference_exceeds_bound", diff_ok});
  r.claims.push_back({"unique_base_maximum", unique});
  r.claims.push_back({"ratios_linear_within_0_05", linearity <= 0.05});
  return r;
}

W2Report w2_bound_experiment(double h, std::vector<double> r_fits) {
  if (r_fits.empty()) throw DomainError("w2 experiment needs at least one fit radius");
  W2Report rep;
  rep.h = h;
  const geometry::TriangleSpec half{{0.0, 0.0}, {kR, 0.0}, {0.0, 1.0}};
  auto mesh = std::make_shared<const geometry::Mesh>(geometry::build_mesh(half, h));
  const auto sol = fem::solve_poisson(mesh, [](const Vec2 &p) { return 1.5 * p.x; }, "f=3x/2");
  rep.solver_residual = sol.residual;
  for (double r : r_fits) {
    const auto fit = analysis::mixed_derivative_origin(sol, r);
    rep.fits.push_back({r, fit.c0, fit.c1, fit.nodes});
  }
  rep.c0_fit = rep.fits[rep.fits.size() / 2].c0;
  rep.v1_xy_stretch = -rep.c0_fit;
  rep.min_barrier_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < mesh->nodes.size(); ++i) {
    const Vec2 &p = mesh->nodes[i];
    rep.min_barrier_gap = std::min(rep.min_barrier_gap, exact::barrier_g(p.x, p.y).value - sol.nodal_values[i]);
  }
  return rep;
}

Report W2Report::report() const {
  Report r;
  r.experiment = "w2-bound";
  constexpr double kUpper = 5.0 / 16.0;
  bool stable = true, c1_ok = true;
  nlohmann::json fits_json = nlohmann::json::array();
  std::ostringstream csv;
  csv.precision(17);
  csv << "r_fit,c0,c1,nodes\n";
  for (const auto &f : fits) {
    stable = stable && std::abs(f.c0 - c0_fit) <= 0.02;
    c1_ok = c1_ok && std::abs(f.c1 + 0.75) <= 0.05;
    fits_json.push_back({{"r_fit", f.r_fit}, {"c0", f.c0}, {"c1", f.c1}, {"nodes", f.nodes}});
    csv << f.r_fit << ',' << f.c0 << ',' << f.c1 << ',' << f.nodes << '\n';
  }
  r.tables[""] = csv.str();
  r.data = {{"h", h},
            {"fits", fits_json},
            {"c0_fit", c0_fit},
            {"v1_xy_stretch", v1_xy_stretch},
            {"min_barrier_gap", min_barrier_gap},
            {"solver_residual", solver_residual},
            {"tolerances", {{"stability", 0.02}, {"c1", 0.05}, {"barrier", 1e-8}}}};
  r.claims.push_back({"c0_in_bounds", c0_fit > 0.0 && c0_fit < kUpper});
  r.claims.push_back({"c0_stable_across_radii", stable});
  r.claims.push_back({"c1_near_minus_three_quarters", c1_ok});
  r.claims.push_back({"barrier_dominates", min_barrier_gap >= -1e-8});
  r.claims.push_back({"v1_xy_stretch_in_bounds", v1_xy_stretch > -kUpper && v1_xy_stretch < 0.0});
  return r;
}

std::vector<std::pair<std::string, geometry::TriangleSpec>> suite_triangles(int n, std::uint64_t seed) {
  if (n < 1) throw DomainError("suite needs at least one triangle");
  std::vector<std::pair<std::string, geometry::TriangleSpec>> out;
  out.push_back({"equilateral", {{0.0, 0.0}, {1.0, 0.0}, {0.5, std::sqrt(3.0) / 2.0}}});
  out.push_back({"isosceles", {{0.0, 0.0}, {1.0, 0.0}, {0.5, 0.6}}});
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  while (static_cast<int>(out.size()) < n) {
    const Vec2 A{0.0, 0.0}, B{1.0, 0.0}, C{unit(rng), unit(rng)};
    const double ac = norm(C - A), bc = norm(C - B);
    // Base strictly longest, so the longest side is unambiguous at mesh accuracy.
    if (std::max(ac, bc) > 0.95) continue;
    if (std::abs(C.x - 0.5) < 0.15) continue;
    const double angles[3] = {angle_deg(A, B, C), angle_deg(B, C, A), angle_deg(C, A, B)};
    if (*std::ranges::min_element(angles) < 20.0 || *std::ranges::max_element(angles) > 140.0) continue;
    out.push_back({"random", {A, B, C}});
  }
  out.resize(n);
  return out;
}

bool SuiteTriangle::location_ok() const {
  bool ok = on_longest_side && between_F_and_M;
  for (std::size_t k = 0; k < critical_points_per_side.size(); ++k)
    ok = ok && critical_points_per_side[k] == 1 && maxima_per_side[k] == 1;
  if (label == "equilateral") ok = ok && sides_at_global_max == 3;
  return ok;
}

bool SuiteTriangle::nodal_ok() const {
  const bool symmetric = label != "random";
  const bool deviation_ok = symmetric ? deviation_from_median < 2.0 * h : deviation_from_median > 5.0 * h;
  return nodal_paths == 1 && path_side_to_apex && tangent_angle_deg < 5.0 && path_start_offset <= 2.0 * h &&
         deviation_ok;
}

SuiteReport random_triangle_suite(int n, std::uint64_t seed, double h, int jobs) {
  SuiteReport rep;
  rep.n = n;
  rep.seed = seed;
  rep.h = h;
  const auto specs = suite_triangles(n, seed);
  rep.triangles = parallel_map<SuiteTriangle>(n, jobs, [&](int i) {
    SuiteTriangle tri;
    tri.label = specs[i].first;
    tri.spec = specs[i].second;
    tri.h = h;
    const auto sol = solve_domain(tri.spec, h);
    tri.solver_residual = sol.residual;
    const auto profile = analysis::boundary_profile(sol);
    const auto lm = geometry::triangle_landmarks(tri.spec.A, tri.spec.B, tri.spec.C);
    for (int side = 0; side < 3; ++side) {
      const auto crit = analysis::locate_critical_points(profile, side);
      tri.critical_points_per_side.push_back(static_cast<int>(crit.size()));
      tri.maxima_per_side.push_back(static_cast<int>(
          std::ranges::count_if(crit, [](const auto &c) { return c.kind == analysis::CriticalKind::max; })));
    }
    const auto fp = analysis::fail_point(profile, lm, 1.5 * h);
    tri.global_side = fp.global.side;
    tri.fail = fp.global.point;
    tri.on_longest_side = fp.landmarks_check->is_on_longest_side;
    tri.between_F_and_M = fp.landmarks_check->between_F_and_M;
    for (const auto &c : fp.per_side)
      if (c.grad_sq >= fp.global.grad_sq * (1.0 - 1e-4)) ++tri.sides_at_global_max;

    const int base = lm.longest_side_id;
    const auto &m = *sol.mesh;
    const Vec2 corners[3] = {tri.spec.A, tri.spec.B, tri.spec.C};
    const Vec2 dir = normalized(corners[(base + 1) % 3] - corners[base]);
    const auto paths = analysis::trace_nodal_line(sol, dir);
    tri.nodal_paths = static_cast<int>(paths.size());
    if (paths.size() == 1) {
      const auto &path = paths.front();
      tri.path_side_to_apex = path.start.kind == analysis::PathEnd::Kind::side && path.start.side == base &&
                              path.end.kind == analysis::PathEnd::Kind::vertex &&
                              path.end.vertex == (base + 2) % 3;
      if (path.start.kind == analysis::PathEnd::Kind::side && path.start.side == base) {
        tri.tangent_angle_deg = analysis::nodal_tangent_angle_at_boundary(path, m, base);
        tri.path_start_offset = std::abs(path.start.s - fp.per_side[base].s);
      }
      tri.deviation_from_median = analysis::max_deviation_from_line(path, lm.midpoint, lm.opposite_vertex);
    }
    return tri;
  });
  return rep;
}

Report SuiteReport::report() const {
  Report r;
  r.experiment = "suite";
  int location_pass = 0, nodal_pass = 0, unique_pass = 0;
  nlohmann::json tri_json = nlohmann::json::array();
  std::ostringstream csv;
  csv.precision(17);
  csv << "index,label,ax,ay,bx,by,cx,cy,global_side,fail_x,fail_y,location_ok,nodal_ok,tangent_angle_deg,"
         "deviation_from_median\n";
  for (std::size_t i = 0; i < triangles.size(); ++i) {
    const auto &t = triangles[i];
    const bool unique = std::ranges::all_of(t.critical_points_per_side, [](int c) { return c == 1; }) &&
                        std::ranges::all_of(t.maxima_per_side, [](int c) { return c == 1; });
    unique_pass += unique;
    location_pass += t.location_ok();
    nodal_pass += t.nodal_ok();
    tri_json.push_back({{"label", t.label},
                        {"vertices", {{t.spec.A.x, t.spec.A.y}, {t.spec.B.x, t.spec.B.y}, {t.spec.C.x, t.spec.C.y}}},
                        {"critical_points_per_side", t.critical_points_per_side},
                        {"maxima_per_side", t.maxima_per_side},
                        {"global_side", t.global_side},
                        {"fail_point", {t.fail.x, t.fail.y}},
                        {"on_longest_side", t.on_longest_side},
                        {"between_F_and_M", t.between_F_and_M},
                        {"sides_at_global_max", t.sides_at_global_max},
                        {"nodal_paths", t.nodal_paths},
                        {"path_side_to_apex", t.path_side_to_apex},
                        {"tangent_angle_deg", t.tangent_angle_deg},
                        {"path_start_offset", t.path_start_offset},
                        {"deviation_from_median", t.deviation_from_median},
                        {"solver_residual", t.solver_residual},
                        {"location_ok", t.location_ok()},
                        {"nodal_ok", t.nodal_ok()}});
    csv << i << ',' << t.label << ',' << t.spec.A.x << ',' << t.spec.A.y << ',' << t.spec.B.x << ','
        << t.spec.B.y << ',' << t.spec.C.x << ',' << t.spec.C.y << ',' << t.global_side << ',' << t.fail.x
        << ',' << t.fail.y << ',' << t.location_ok() << ',' << t.nodal_ok() << ',' << t.tangent_angle_deg
        << ',' << t.deviation_from_median << '\n';
  }
  r.tables[""] = csv.str();
  const int total = static_cast<int>(triangles.size());
  r.data = {{"n", n},
            {"seed", seed},
            {"h", h},
            {"triangles", tri_json},
            {"unique_pass", unique_pass},
            {"location_pass", location_pass},
            {"nodal_pass", nodal_pass},
            {"tolerances",
             {{"fm_slack", 1.5 * h}, {"tangent_angle_deg", 5.0}, {"path_start", 2.0 * h},
              {"symmetric_deviation_max", 2.0 * h}, {"scalene_deviation_min", 5.0 * h}}}};
  r.claims.push_back({"one_critical_point_per_side", unique_pass == total});
  r.claims.push_back({"fail_point_location", location_pass == total});
  r.claims.push_back({"nodal_line_structure", nodal_pass == total});
  return r;
}

}  // namespace torsionlab::experiments
