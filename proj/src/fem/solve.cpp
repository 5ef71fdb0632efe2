#include "torsionlab/fem/solve.hpp"

#include <cmath>

#include <Eigen/IterativeLinearSolvers>

#include "torsionlab/errors.hpp"

namespace torsionlab::fem {

TorsionSolution solve(const LinearSystem &system, const SolveOptions &options) {
  const auto &mesh = *system.mesh;
  const int n = static_cast<int>(mesh.nodes.size());
  const int nf = static_cast<int>(system.free_nodes.size());

  TorsionSolution sol;
  sol.mesh = system.mesh;
  sol.rhs_tag = system.rhs_tag;
  sol.nodal_values = Eigen::VectorXd::Zero(n);
  for (std::size_t c = 0; c < system.constrained_nodes.size(); ++c)
    sol.nodal_values[system.constrained_nodes[c]] = system.dirichlet_values[static_cast<int>(c)];

  if (nf > 0) {
    Eigen::ConjugateGradient<SparseMatrix, Eigen::Lower | Eigen::Upper,
                             Eigen::DiagonalPreconditioner<double>>
        cg;
    const int cap = std::max(1, static_cast<int>(options.cap_factor * std::sqrt(static_cast<double>(nf))));
    cg.setTolerance(options.tolerance);
    cg.setMaxIterations(cap);
    cg.compute(system.stiffness);
    const Eigen::VectorXd x = cg.solve(system.load);
    sol.iterations = static_cast<int>(cg.iterations());
    sol.residual = cg.error();
    if (cg.info() != Eigen::Success || !(sol.residual <= options.tolerance))
      throw ConvergenceError("conjugate gradients did not converge within " + std::to_string(cap) +
                                 " iterations (relative residual " + std::to_string(sol.residual) + ")",
                             sol.iterations, sol.residual);
    for (int i = 0; i < nf; ++i) sol.nodal_values[system.free_nodes[i]] = x[i];
  }

  sol.node_residual = Eigen::VectorXd::Zero(n);
  const Eigen::VectorXd rc = system.constrained_rows * sol.nodal_values - system.constrained_load;
  for (std::size_t c = 0; c < system.constrained_nodes.size(); ++c)
    sol.node_residual[system.constrained_nodes[c]] = rc[static_cast<int>(c)];
  return sol;
}

TorsionSolution solve_poisson(std::shared_ptr<const geometry::Mesh> mesh, const ScalarField &rhs,
                              std::string rhs_tag, const SolveOptions &options) {
  return solve(assemble(std::move(mesh), rhs, std::move(rhs_tag)), options);
}

TorsionSolution solve_torsion(std::shared_ptr<const geometry::Mesh> mesh, const SolveOptions &options) {
  return solve_poisson(std::move(mesh), [](const Vec2 &) { return 1.0; }, "f=1", options);
}

}  // namespace torsionlab::fem
