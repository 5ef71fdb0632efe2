#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "torsionlab/exact.hpp"
#include "torsionlab/experiments/common.hpp"
#include "torsionlab/geometry/domain.hpp"

namespace torsionlab::experiments {

struct FamilyRow {
  double t = 0.0;
  double x_fail = 0.0;  // critical point of |grad u|^2 on the base
  double ratio = 0.0;   // x_fail / t
  double uy_at_M = 0.0;
  double uy_at_F = 0.0;
  double difference = 0.0;  // uy_at_M - uy_at_F
  double difference_over_t2 = 0.0;
  int base_maxima = 0;
  double solver_residual = 0.0;
};

struct PerturbationReport {
  exact::Family family = exact::Family::stretch;
  double h = 0.0;
  std::vector<FamilyRow> rows;  // sorted by t
  double phi1_0 = 0.0;          // intercept of ratio against t
  double v1_xy_origin = 0.0;

  Report report() const;
};

/// stretch: (-r, 0), (r + t, 0), (0, 1); tilt: (-r, 0), (r, 0), (t, 1), r = sqrt(3)/3.
geometry::TriangleSpec perturbed_triangle(exact::Family family, double t);

/// Landmarks on the base: M, F = (t/2, 0), (0, 0) for stretch and (0, 0), (t, 0) for tilt.
std::pair<Vec2, Vec2> family_landmarks(exact::Family family, double t);

PerturbationReport triangle_family(exact::Family family, std::vector<double> t_list, double h, int jobs = 0);

struct W2Fit {
  double r_fit = 0.0;
  double c0 = 0.0;
  double c1 = 0.0;
  int nodes = 0;
};

struct W2Report {
  double h = 0.0;
  std::vector<W2Fit> fits;
  double c0_fit = 0.0;  // at the middle radius
  double min_barrier_gap = 0.0;  // min over nodes of g - w2
  double v1_xy_stretch = 0.0;
  double solver_residual = 0.0;

  Report report() const;
};

/// -Lap w2 = 3x/2 on the half triangle (0,0), (sqrt(3)/3, 0), (0, 1).
W2Report w2_bound_experiment(double h, std::vector<double> r_fits = {0.1, 0.15, 0.2});

struct SuiteTriangle {
  std::string label;  // "equilateral", "isosceles" or "random"
  geometry::TriangleSpec spec;
  std::vector<int> critical_points_per_side;
  std::vector<int> maxima_per_side;
  int global_side = 0;
  Vec2 fail;
  bool on_longest_side = false;
  bool between_F_and_M = false;
  int sides_at_global_max = 0;  // sides whose largest maximum ties the global one
  int nodal_paths = 0;
  bool path_side_to_apex = false;
  double tangent_angle_deg = 0.0;
  double path_start_offset = 0.0;  // |path start - fail| along the base
  double deviation_from_median = 0.0;
  double h = 0.0;
  double solver_residual = 0.0;

  bool location_ok() const;
  bool nodal_ok() const;
};

struct SuiteReport {
  int n = 0;
  std::uint64_t seed = 0;
  double h = 0.0;
  std::vector<SuiteTriangle> triangles;

  Report report() const;
};

/// Diameter-one triangles with the longest side on [0,1] x {0}: the equilateral and an
/// isosceles triangle first, then seeded random scalene ones with angles in [20, 140]
/// degrees and the apex at least 0.15 away from the base's perpendicular bisector.
std::vector<std::pair<std::string, geometry::TriangleSpec>> suite_triangles(int n, std::uint64_t seed);

SuiteReport random_triangle_suite(int n, std::uint64_t seed, double h, int jobs = 0);

}  // namespace torsionlab::experiments
