#pragma once

#include <memory>
#include <string>

#include <Eigen/Dense>

#include "torsionlab/fem/assemble.hpp"

namespace torsionlab::fem {

struct SolveOptions {
  double tolerance = 1e-10;
  /// Iteration cap is cap_factor * sqrt(number of free nodes).
  double cap_factor = 50.0;
};

struct TorsionSolution {
  std::shared_ptr<const geometry::Mesh> mesh;
  std::string rhs_tag;
  Eigen::VectorXd nodal_values;  // all nodes
  int iterations = 0;
  double residual = 0.0;
  /// Equilibrium residual a(u, phi_i) - (f, phi_i) at every node (zero at free nodes
  /// up to the solver tolerance).
  Eigen::VectorXd node_residual;
};

/// Jacobi-preconditioned conjugate gradients. Throws ConvergenceError at the cap.
TorsionSolution solve(const LinearSystem &system, const SolveOptions &options = {});

/// Assemble and solve -Lap u = f with zero boundary data.
TorsionSolution solve_poisson(std::shared_ptr<const geometry::Mesh> mesh, const ScalarField &rhs,
                              std::string rhs_tag, const SolveOptions &options = {});

/// The torsion problem, f = 1.
TorsionSolution solve_torsion(std::shared_ptr<const geometry::Mesh> mesh, const SolveOptions &options = {});

}  // namespace torsionlab::fem
