#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "torsionlab/geometry/mesh.hpp"

namespace torsionlab::fem {

using ScalarField = std::function<double(const Vec2 &)>;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Galerkin system with Dirichlet nodes eliminated.
struct LinearSystem {
  std::shared_ptr<const geometry::Mesh> mesh;
  std::string rhs_tag;
  SparseMatrix stiffness;  // free x free
  Eigen::VectorXd load;    // free
  /// Node id -> free index, or -1 for a constrained (boundary) node.
  std::vector<int> free_index;
  std::vector<int> free_nodes;
  std::vector<int> constrained_nodes;
  /// Full stiffness rows and load entries of constrained nodes, kept for flux recovery.
  SparseMatrix constrained_rows;  // constrained x all nodes
  Eigen::VectorXd constrained_load;
  /// Prescribed values on constrained nodes (zero unless Dirichlet data was given).
  Eigen::VectorXd dirichlet_values;
};

/// Throws AssemblyError at a non-positive Jacobian. `dirichlet` defaults to zero data.
LinearSystem assemble(std::shared_ptr<const geometry::Mesh> mesh, const ScalarField &rhs,
                      std::string rhs_tag = "f=1", const ScalarField &dirichlet = {});

}  // namespace torsionlab::fem
