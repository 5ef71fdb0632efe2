#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <boost/math/tools/minima.hpp>

#include "torsionlab/analysis/profile.hpp"
#include "torsionlab/errors.hpp"

namespace torsionlab::analysis {

namespace {

constexpr int kGuard = 2;
constexpr int kFitHalfWidth = 3;
constexpr double kNoiseFactor = 10.0;

/// Sample access with wrap-around for closed sides; s is unwrapped to stay monotone.
struct SideView {
  const SideProfile &sp;
  int n() const { return static_cast<int>(sp.samples.size()); }
  double s(int k) const {
    const int w = ((k % n()) + n()) % n();
    const double shift = sp.closed ? std::floor(static_cast<double>(k) / n()) * sp.length : 0.0;
    return sp.samples[w].s + shift;
  }
  double g(int k) const { return sp.samples[((k % n()) + n()) % n()].grad_sq; }
};

struct Fit {
  double a2 = 0.0;
  double rms = 0.0;
  double half_width = 0.0;
};

Fit fit_parabola(const SideView &v, int centre, double s_star) {
  int lo = centre - kFitHalfWidth, hi = centre + kFitHalfWidth;
  if (!v.sp.closed) {
    lo = std::max(lo, 0);
    hi = std::min(hi, v.n() - 1);
  }
  const int m = hi - lo + 1;
  Eigen::MatrixXd a(m, 3);
  Eigen::VectorXd b(m);
  double half = 0.0;
  for (int k = lo; k <= hi; ++k) {
    const double ds = v.s(k) - s_star;
    half = std::max(half, std::abs(ds));
    a(k - lo, 0) = 1.0;
    a(k - lo, 1) = ds;
    a(k - lo, 2) = ds * ds;
    b[k - lo] = v.g(k);
  }
  const Eigen::Vector3d c = a.colPivHouseholderQr().solve(b);
  Fit f;
  f.a2 = c[2];
  f.rms = std::sqrt((a * c - b).squaredNorm() / m);
  f.half_width = half;
  return f;
}

}  // namespace

std::vector<CriticalPoint> locate_critical_points(const BoundaryProfile &profile, int side_id) {
  const auto &sp = profile.sides.at(side_id);
  const SideView v{sp};
  const int n = v.n();
  if (n < 8) throw AnalysisError("side " + std::to_string(side_id) + " has fewer than 8 samples");

  double gmax = 0.0;
  for (const auto &p : sp.samples) gmax = std::max(gmax, p.grad_sq);
  const double zero = 1e-14 * gmax;

  const int first = sp.closed ? 0 : kGuard;
  const int last = sp.closed ? n : n - 1 - kGuard;  // derivative indices [first, last)
  auto sign_at = [&](int k) {
    const double d = v.g(k + 1) - v.g(k);
    return d > zero ? 1 : (d < -zero ? -1 : 0);
  };

  // Sample index k is a candidate when the derivative sign differs on its two sides,
  // skipping over flat runs.
  std::vector<std::pair<int, int>> candidates;  // (centre sample, +1 max / -1 min)
  int prev_sign = 0, prev_k = first;
  for (int k = first; k < last; ++k) {
    const int sg = sign_at(k);
    if (sg == 0) continue;
    if (prev_sign != 0 && sg != prev_sign) candidates.emplace_back((prev_k + 1 + k) / 2, prev_sign);
    prev_sign = sg;
    prev_k = k;
  }
  if (sp.closed && prev_sign != 0) {
    // Close the loop: compare the last non-zero sign with the first one.
    for (int k = first; k < last; ++k) {
      const int sg = sign_at(k);
      if (sg == 0) continue;
      if (sg != prev_sign) candidates.emplace_back((prev_k + 1 + k + n) / 2, prev_sign);
      break;
    }
  }

  std::vector<CriticalPoint> out;
  for (const auto &[centre, kind_sign] : candidates) {
    const double lo = v.s(centre - 1), hi = v.s(centre + 1);
    auto wrap = [&](double s) {
      if (!sp.closed) return s;
      s = std::fmod(s, sp.length);
      return s < 0.0 ? s + sp.length : s;
    };
    auto objective = [&](double s) {
      const double g = profile.flux.at_s(side_id, wrap(s));
      return -static_cast<double>(kind_sign) * g * g;
    };
    const auto [s_star, obj] = boost::math::tools::brent_find_minima(objective, lo, hi, 40);

    CriticalPoint cp;
    cp.side = side_id;
    cp.s = wrap(s_star);
    cp.point = profile.flux.point_at(side_id, cp.s);
    cp.grad_sq = -static_cast<double>(kind_sign) * obj;

    const Fit fit = fit_parabola(v, centre, s_star);
    cp.amplitude = std::abs(fit.a2) * fit.half_width * fit.half_width;
    cp.noise_floor = kNoiseFactor * std::max(fit.rms, 1e-9 * gmax);
    const bool shape_agrees = (kind_sign > 0) == (fit.a2 < 0.0);
    if (shape_agrees && cp.amplitude > cp.noise_floor)
      cp.kind = kind_sign > 0 ? CriticalKind::max : CriticalKind::min;
    out.push_back(cp);
  }
  std::ranges::sort(out, {}, &CriticalPoint::s);
  return out;
}

FailPointReport fail_point(const BoundaryProfile &profile,
                           const std::optional<geometry::TriangleLandmarks> &landmarks,
                           std::optional<double> slack) {
  FailPointReport report;
  for (const auto &sp : profile.sides) {
    std::optional<CriticalPoint> best;
    if (static_cast<int>(sp.samples.size()) >= 8) {
      for (const auto &cp : locate_critical_points(profile, sp.side))
        if (cp.kind == CriticalKind::max && (!best || cp.grad_sq > best->grad_sq)) best = cp;
    }
    // A raw sample beating every refined maximum (monotone side, corner) wins instead.
    const auto raw = std::ranges::max_element(sp.samples, {}, &ProfileSample::grad_sq);
    if (raw != sp.samples.end() && (!best || raw->grad_sq > best->grad_sq * (1.0 + 1e-9))) {
      CriticalPoint cp;
      cp.side = sp.side;
      cp.s = raw->s;
      cp.point = raw->point;
      cp.grad_sq = raw->grad_sq;
      best = cp;
    }
    if (best) report.per_side.push_back(*best);
  }
  if (report.per_side.empty()) throw AnalysisError("profile has no samples");

  // Lowest side id wins ties.
  report.global = report.per_side.front();
  for (const auto &cp : report.per_side)
    if (cp.grad_sq > report.global.grad_sq * (1.0 + 1e-9)) report.global = cp;

  if (landmarks) {
    LandmarksCheck lc;
    lc.slack = slack.value_or(1.5 * profile.h);
    double longest = 0.0;
    for (const auto &side : profile.sides) longest = std::max(longest, side.length);
    lc.is_on_longest_side = profile.sides.at(report.global.side).length >= longest * (1.0 - 1e-9);
    const Vec2 p = report.global.point, f = landmarks->altitude_foot, m = landmarks->midpoint;
    lc.distance_to_F = distance(p, f);
    lc.distance_to_M = distance(p, m);
    // Position along the F-M segment, widened by the slack on both ends.
    const Vec2 d = m - f;
    const double len = norm(d);
    if (len <= lc.slack) {
      lc.between_F_and_M = std::min(lc.distance_to_F, lc.distance_to_M) <= lc.slack;
    } else {
      const double t = dot(p - f, d) / len;
      const double off = std::abs(cross(d, p - f)) / len;
      lc.between_F_and_M = t >= -lc.slack && t <= len + lc.slack && off <= lc.slack;
    }
    report.landmarks_check = lc;
  }
  return report;
}

FailPointReport fail_point(const fem::TorsionSolution &solution,
                           const std::optional<geometry::TriangleLandmarks> &landmarks,
                           std::optional<double> slack) {
  return fail_point(boundary_profile(solution), landmarks, slack);
}

}  // namespace torsionlab::analysis
