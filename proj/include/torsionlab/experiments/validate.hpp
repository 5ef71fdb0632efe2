#pragma once

#include "torsionlab/experiments/common.hpp"

namespace torsionlab::experiments {

/// Closed-form solutions against their own PDE and boundary data, plus the
/// expansion coefficients for the reference profile pairs. No FEM involved.
Report validate_oracles();

}  // namespace torsionlab::experiments
