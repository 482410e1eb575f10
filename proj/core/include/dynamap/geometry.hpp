#pragma once

#include "dynamap/types.hpp"

namespace dynamap {

// Absolute tolerance for the orientation predicate's collinearity decision.
inline constexpr double kGeomTol = 1e-9;

// Closed-segment intersection; collinear overlap counts, zero-length segments
// degrade to points.
bool segments_intersect(Vec2 a1, Vec2 a2, Vec2 b1, Vec2 b2);

// True iff the segment a-b intersects any wall of the plan.
bool crosses_wall(const Floorplan& plan, Vec2 a, Vec2 b);

// Number of walls the segment a-b crosses (each wall counted once).
int count_wall_crossings(const Floorplan& plan, Vec2 a, Vec2 b);

}  // namespace dynamap
