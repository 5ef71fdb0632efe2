#pragma once

#include <vector>

#include "torsionlab/experiments/common.hpp"
#include "torsionlab/geometry/domain.hpp"

namespace torsionlab::experiments {

struct AnnulusSample {
  double phi = 0.0;
  Vec2 point;  // q_phi = (offset - rho2 cos 2phi, -rho2 sin 2phi)
  double grad = 0.0;
};

struct AnnulusReport {
  geometry::AnnulusSpec spec;
  double h = 0.0;
  std::vector<AnnulusSample> inner;  // phi in [0, pi]
  double argmax_phi = 0.0;
  Vec2 global_fail;
  int global_side = 0;
  double fail_arc_distance = 0.0;  // arc length from q_0 along the inner ring
  double inner_max = 0.0;
  double outer_max = 0.0;
  int monotonicity_violations = 0;
  double noise_floor = 0.0;
  /// Concentric control at the same h and rho.
  double concentric_spread = 0.0;  // max - min of the inner flux
  double concentric_std = 0.0;
  double concentric_mean = 0.0;
  double concentric_exact = 0.0;
  double solver_residual = 0.0;

  Report report() const;
};

/// n_angles >= 64 samples of phi in [0, pi], both ends included.
AnnulusReport annulus_experiment(const geometry::AnnulusSpec &spec, int n_angles, double h, int jobs = 0);

}  // namespace torsionlab::experiments
