#pragma once

#include <vector>

#include "torsionlab/experiments/common.hpp"

namespace torsionlab::experiments {

struct EndpointRow {
  double eps = 0.0;
  double h = 0.0;
  double exact_endpoint = 0.0;  // |grad u| at (1, 0)
  double exact_flat = 0.0;      // |grad u| at (0, eps)
  double fem_endpoint = 0.0;
  double fem_flat = 0.0;
  double endpoint_rel_error = 0.0;
  double flat_rel_error = 0.0;
  double fem_ratio = 0.0;  // fem_endpoint / fem_flat
  Vec2 fail_point;
  double fail_distance_to_endpoints = 0.0;
  double solver_residual = 0.0;
  /// Short-side midpoint gradient of [0,1] x [-eps, eps], for comparison.
  double rectangle_short_side = 0.0;
};

struct EndpointReport {
  std::vector<EndpointRow> rows;
  double ratio_exponent = 0.0;  // log-log slope of fem_ratio against eps
  double exact_ratio_exponent = 0.0;

  Report report() const;
};

/// Ellipse with semi-axes 1 and eps; the polar mesh scales with eps across the ellipse.
EndpointReport endpoint_exclusion_check(const std::vector<double> &eps_list, double h = 0.02,
                                        int jobs = 0);

}  // namespace torsionlab::experiments
