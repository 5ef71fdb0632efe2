#include "torsionlab/geometry/landmarks.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "torsionlab/errors.hpp"

namespace torsionlab::geometry {

TriangleLandmarks triangle_landmarks(const Vec2 &A, const Vec2 &B, const Vec2 &C) {
  const std::array<Vec2, 3> v{A, B, C};
  std::array<double, 3> len{};
  for (int k = 0; k < 3; ++k) len[k] = distance(v[k], v[(k + 1) % 3]);
  const double scale = *std::ranges::max_element(len);
  if (!(scale > 0.0) || std::abs(cross(B - A, C - A)) <= 1e-12 * scale * scale)
    throw DomainError("triangle vertices are collinear");

  // Relative tolerance so that equal sides computed in different orders still tie.
  int k = 0;
  for (int j = 1; j < 3; ++j)
    if (len[j] > len[k] * (1.0 + 1e-12)) k = j;

  const Vec2 p = v[k], q = v[(k + 1) % 3], o = v[(k + 2) % 3];
  const Vec2 d = q - p;
  const double t = dot(o - p, d) / dot(d, d);
  return {k, 0.5 * (p + q), p + t * d, o};
}

}  // namespace torsionlab::geometry
