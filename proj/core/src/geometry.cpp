#include "dynamap/geometry.hpp"

#include <algorithm>

namespace dynamap {

namespace {

// Sign of the cross product (q - p) x (r - p) with an absolute collinearity band.
int orientation(Vec2 p, Vec2 q, Vec2 r) {
  double v = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
  if (v > kGeomTol) return 1;
  if (v < -kGeomTol) return -1;
  return 0;
}

// For collinear p, q, r: is r inside the bounding box of segment p-q?
bool on_segment(Vec2 p, Vec2 q, Vec2 r) {
  return r.x >= std::min(p.x, q.x) - kGeomTol && r.x <= std::max(p.x, q.x) + kGeomTol &&
         r.y >= std::min(p.y, q.y) - kGeomTol && r.y <= std::max(p.y, q.y) + kGeomTol;
}

}  // namespace

bool segments_intersect(Vec2 a1, Vec2 a2, Vec2 b1, Vec2 b2) {
  int d1 = orientation(b1, b2, a1);
  int d2 = orientation(b1, b2, a2);
  int d3 = orientation(a1, a2, b1);
  int d4 = orientation(a1, a2, b2);

  if (d1 * d2 < 0 && d3 * d4 < 0) return true;

  if (d1 == 0 && on_segment(b1, b2, a1)) return true;
  if (d2 == 0 && on_segment(b1, b2, a2)) return true;
  if (d3 == 0 && on_segment(a1, a2, b1)) return true;
  if (d4 == 0 && on_segment(a1, a2, b2)) return true;
  return false;
}

bool crosses_wall(const Floorplan& plan, Vec2 a, Vec2 b) {
  for (const Segment& wall : plan.walls) {
    if (segments_intersect(a, b, wall.a, wall.b)) return true;
  }
  return false;
}

int count_wall_crossings(const Floorplan& plan, Vec2 a, Vec2 b) {
  int n = 0;
  for (const Segment& wall : plan.walls) {
    if (segments_intersect(a, b, wall.a, wall.b)) ++n;
  }
  return n;
}

}  // namespace dynamap
