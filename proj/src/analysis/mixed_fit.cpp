#include "torsionlab/analysis/mixed_fit.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "torsionlab/errors.hpp"

namespace torsionlab::analysis {

MixedFit mixed_derivative_origin(const fem::TorsionSolution &solution, double r_fit) {
  const auto &m = *solution.mesh;
  std::vector<int> pick;
  for (std::size_t i = 0; i < m.nodes.size(); ++i)
    if (norm(m.nodes[i]) < r_fit) pick.push_back(static_cast<int>(i));
  if (pick.size() < 30)
    throw AnalysisError("only " + std::to_string(pick.size()) + " nodes within the fit radius");

  const int n = static_cast<int>(pick.size());
  Eigen::MatrixXd a(n, 6);
  Eigen::VectorXd b(n);
  for (int k = 0; k < n; ++k) {
    const Vec2 p = m.nodes[pick[k]];
    const double xy = p.x * p.y;
    a.row(k) << xy, xy * p.y, xy * p.x, xy * p.y * p.y, xy * p.x * p.y, xy * p.x * p.x;
    b[k] = solution.nodal_values[pick[k]];
  }
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
  MixedFit fit;
  fit.c0 = c[0];
  fit.c1 = c[1];
  fit.c2 = c[2];
  fit.nodes = n;
  fit.rms = std::sqrt((a * c - b).squaredNorm() / n);
  fit.r_fit = r_fit;
  return fit;
}

}  // namespace torsionlab::analysis
