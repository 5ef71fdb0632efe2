#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "torsionlab/fem/flux.hpp"
#include "torsionlab/geometry/landmarks.hpp"

namespace torsionlab::analysis {

struct ProfileSample {
  double s = 0.0;
  Vec2 point;
  double dudn = 0.0;
  double grad_sq = 0.0;
};

struct SideProfile {
  int side = 0;
  bool closed = false;
  double length = 0.0;
  std::vector<ProfileSample> samples;  // strictly increasing s
};

struct BoundaryProfile {
  fem::BoundaryFlux flux;
  std::vector<SideProfile> sides;
  double h = 0.0;
};

/// One sample per boundary node, midnodes included, from the consistent flux.
BoundaryProfile boundary_profile(const fem::TorsionSolution &solution);

enum class CriticalKind { max, min, flat };

struct CriticalPoint {
  int side = 0;
  double s = 0.0;
  Vec2 point;
  double grad_sq = 0.0;
  CriticalKind kind = CriticalKind::flat;
  /// Parabola amplitude over the fit window and the noise floor it was compared with.
  double amplitude = 0.0;
  double noise_floor = 0.0;
};

/// Sign changes of the discrete derivative of grad_sq along one side, each refined
/// by Brent's method on the interpolated flux. Open sides skip two samples at each
/// end. Throws AnalysisError for fewer than 8 samples.
std::vector<CriticalPoint> locate_critical_points(const BoundaryProfile &profile, int side_id);

struct LandmarksCheck {
  bool is_on_longest_side = false;
  bool between_F_and_M = false;
  double distance_to_F = 0.0;
  double distance_to_M = 0.0;
  double slack = 0.0;
};

struct FailPointReport {
  CriticalPoint global;
  /// Largest maximum on each side (the largest raw sample when a side has none).
  std::vector<CriticalPoint> per_side;
  std::optional<LandmarksCheck> landmarks_check;
};

/// `slack` widens the F-M segment; defaults to 1.5 h.
FailPointReport fail_point(const BoundaryProfile &profile,
                           const std::optional<geometry::TriangleLandmarks> &landmarks = std::nullopt,
                           std::optional<double> slack = std::nullopt);

FailPointReport fail_point(const fem::TorsionSolution &solution,
                           const std::optional<geometry::TriangleLandmarks> &landmarks = std::nullopt,
                           std::optional<double> slack = std::nullopt);

/// CSV "side,s,x,y,dudn,gradsq".
void write_profile_csv(std::ostream &os, const BoundaryProfile &profile);

const char *to_string(CriticalKind kind);

}  // namespace torsionlab::analysis
