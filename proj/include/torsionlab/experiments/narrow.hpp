#pragma once

#include <optional>
#include <string>
#include <vector>

#include "torsionlab/exact.hpp"
#include "torsionlab/experiments/common.hpp"
#include "torsionlab/geometry/polynomial.hpp"

namespace torsionlab::experiments {

using geometry::PolyBoundaryFn;

struct NarrowOptions {
  double a = -1.0;
  double b = 1.0;
  /// Mesh fibers across the thickest cross-section; h = eps * max(f2 - f1) / fibers.
  int fibers = 40;
  double x_stretch = 1.0;
  /// Repeat every solve with twice the mesh size.
  bool refinement_check = true;
  int jobs = 0;
};

struct NarrowSweepRow {
  double eps = 0.0;
  exact::Side side = exact::Side::lower;
  double h = 0.0;
  double fem_gradsq_at_z0 = 0.0;
  double predicted_order2 = 0.0;
  double predicted_order4 = 0.0;
  double remainder = 0.0;  // fem - predicted_order4
  double remainder_over_eps6 = 0.0;
  /// (fem - predicted_order2) / eps^4, to compare with the eps^4 coefficient.
  double order4_coefficient = 0.0;
  /// Same quantity on the 2h mesh (NaN without the refinement check).
  double fem_gradsq_coarse = 0.0;
  /// |fem(h) - fem(2h)| / (eps^4 |lambda2|).
  double refinement_change = 0.0;
};

struct NarrowSweepReport {
  PolyBoundaryFn f1, f2;
  double a = -1.0, b = 1.0;
  double z0 = 0.0;
  NarrowOptions options;
  std::vector<double> eps_list;
  std::vector<NarrowSweepRow> rows;  // eps-major, lower then upper
  double slope_lower = 0.0;
  double slope_upper = 0.0;
  std::vector<double> fail_x;
  std::vector<int> fail_side;
  std::vector<double> fail_offset;  // |fail_x - z0|
  std::vector<double> max_solver_residual;

  Report report() const;
};

/// eps_list must be strictly decreasing with at least three values.
NarrowSweepReport narrow_sweep(const PolyBoundaryFn &f1, const PolyBoundaryFn &f2,
                               const std::vector<double> &eps_list, const NarrowOptions &options = {});

struct SideComparison {
  PolyBoundaryFn f1, f2;
  double eps = 0.0;
  double z0 = 0.0;
  double h = 0.0;
  double grad_lower = 0.0;
  double grad_upper = 0.0;
  /// grad_lower - grad_upper at h and at 2h.
  double margin = 0.0;
  double margin_coarse = 0.0;
  double refinement_variation = 0.0;
  /// (|grad_upper|^2 - |grad_lower|^2) / eps^4 from the FEM solution.
  double gap_fem_over_eps4 = 0.0;
  double gap_predicted = 0.0;
  /// Same coefficient with a1'' = (f1'' + f2'')/2 in place of f1'' + f2''.
  double gap_predicted_alt = 0.0;
  /// "lower", "upper" or "tie".
  std::string winner;
  std::string predicted_winner;
  /// "f1''+f2''" or "a1''": the coefficient closer to the FEM gap.
  std::string matched_reading;

  Report report() const;
};

SideComparison narrow_side_comparison(const PolyBoundaryFn &f1, const PolyBoundaryFn &f2, double eps,
                                      const NarrowOptions &options = {});

}  // namespace torsionlab::experiments
