#pragma once

#include <optional>
#include <vector>

#include "torsionlab/fem/solve.hpp"

namespace torsionlab::fem {

struct Location {
  int element = -1;
  double xi = 0.0;
  double eta = 0.0;
};

/// Finds the element containing a point by walking across element neighbours,
/// starting from the element found last. Falls back to a full scan when the walk
/// leaves the domain (non-convex meshes).
class PointLocator {
 public:
  explicit PointLocator(std::shared_ptr<const geometry::Mesh> mesh);

  std::optional<Location> locate(const Vec2 &p);
  const geometry::Mesh &mesh() const { return *mesh_; }

 private:
  bool inverse_map(int element, const Vec2 &p, Location &loc) const;

  std::shared_ptr<const geometry::Mesh> mesh_;
  std::vector<std::array<int, 3>> neighbours_;  // across local edge e, -1 on the boundary
  int last_ = 0;
};

struct ValueAndGradient {
  double value = 0.0;
  Vec2 gradient;
};

/// Interpolant value and gradient at a known location.
ValueAndGradient evaluate(const TorsionSolution &solution, const Location &loc);

/// Gradient of the quadratic interpolant at p. Throws OutsideDomainError.
Vec2 gradient_at(const TorsionSolution &solution, const Vec2 &p);

/// Value of the quadratic interpolant at p. Throws OutsideDomainError.
double value_at(const TorsionSolution &solution, const Vec2 &p);

/// Element-averaged gradient at every vertex node; zero vector at midnodes.
std::vector<Vec2> vertex_gradients(const TorsionSolution &solution);

}  // namespace torsionlab::fem
