#pragma once

#include "torsionlab/fem/solve.hpp"

namespace torsionlab::analysis {

/// Least-squares fit of u ~ xy (c0 + c1 y + c2 x + c3 y^2 + c4 xy + c5 x^2) on the
/// nodes within r_fit of the origin.
struct MixedFit {
  double c0 = 0.0;  // u_xy at the origin
  double c1 = 0.0;  // y coefficient
  double c2 = 0.0;  // x coefficient
  int nodes = 0;
  double rms = 0.0;
  double r_fit = 0.0;
};

/// Throws AnalysisError with fewer than 30 nodes in the fit disk.
MixedFit mixed_derivative_origin(const fem::TorsionSolution &solution, double r_fit = 0.15);

}  // namespace torsionlab::analysis
