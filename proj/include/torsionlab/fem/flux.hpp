#pragma once

#include <iosfwd>
#include <memory>
#include <vector>

#include "torsionlab/fem/solve.hpp"

namespace torsionlab::fem {

/// Inward normal derivative recovered from the equilibrium residual.
///
/// The raw nodal values carry a zero-mean oscillation (vertices against midnodes)
/// that vanishes at the two Gauss points of every edge. Pointwise queries therefore
/// use values refitted per side from those Gauss points.
struct BoundaryFlux {
  std::shared_ptr<const geometry::Mesh> mesh;
  /// Raw consistent flux per node; zero at interior nodes.
  std::vector<double> dudn;
  /// Per side, refitted values at the chain's nodes (start, mid, start, mid, ..., [end]).
  std::vector<std::vector<double>> side_values;

  /// Quadratic interpolation along a side at arc length s (clamped to the side).
  double at_s(int side, double s) const;
  /// Flux at the point of `side` nearest to p.
  double at(int side, const Vec2 &p) const;
  /// Arc length of the point of `side` nearest to p.
  double project(int side, const Vec2 &p) const;
  /// Boundary point at arc length s of a side.
  Vec2 point_at(int side, double s) const;
  /// Integral of the raw flux over the whole boundary.
  double total() const;
};

/// Solves the boundary mass system M g = r with r the equilibrium residual.
BoundaryFlux boundary_flux(const TorsionSolution &solution);

/// CSV "node_id,x,y,u".
void write_solution_csv(std::ostream &os, const TorsionSolution &solution);
/// CSV "side_id,s,x,y,dudn", one row per boundary node in chain order.
void write_flux_csv(std::ostream &os, const BoundaryFlux &flux);

}  // namespace torsionlab::fem
