#pragma once

#include "torsionlab/vec2.hpp"

namespace torsionlab::geometry {

/// Side k of a triangle runs from vertex k to vertex (k+1)%3 (A->B, B->C, C->A).
struct TriangleLandmarks {
  int longest_side_id = 0;
  Vec2 midpoint;         // M
  Vec2 altitude_foot;    // F
  Vec2 opposite_vertex;
};

/// Ties on the longest side go to the lowest side index. Throws DomainError on collinear input.
TriangleLandmarks triangle_landmarks(const Vec2 &A, const Vec2 &B, const Vec2 &C);

}  // namespace torsionlab::geometry
