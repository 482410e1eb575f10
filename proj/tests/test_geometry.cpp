#include <random>

#include "doctest.h"
#include "dynamap/geometry.hpp"

using namespace dynamap;

TEST_CASE("segments_intersect basic cases") {
  CHECK(segments_intersect({0, 0}, {2, 0}, {1, -1}, {1, 1}));        // perpendicular crossing
  CHECK_FALSE(segments_intersect({0, 0}, {1, 0}, {0, 1}, {1, 1}));   // parallel disjoint
  CHECK(segments_intersect({0, 0}, {2, 0}, {1, 0}, {3, 0}));         // collinear overlap
}

TEST_CASE("segments_intersect endpoint touch and collinear gap") {
  CHECK(segments_intersect({0, 0}, {1, 1}, {1, 1}, {2, 0}));
  CHECK_FALSE(segments_intersect({0, 0}, {1, 0}, {2, 0}, {3, 0}));
}

TEST_CASE("degenerate zero-length segments behave as points") {
  CHECK(segments_intersect({1, 0}, {1, 0}, {0, 0}, {2, 0}));   // point on segment
  CHECK_FALSE(segments_intersect({1, 1}, {1, 1}, {0, 0}, {2, 0}));
  CHECK(segments_intersect({1, 1}, {1, 1}, {1, 1}, {1, 1}));   // coincident points
  CHECK_FALSE(segments_intersect({1, 1}, {1, 1}, {2, 2}, {2, 2}));
}

TEST_CASE("segments_intersect is symmetric and endpoint-swap invariant") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> coord(-5.0, 5.0);
  for (int trial = 0; trial < 2000; ++trial) {
    Vec2 a1{coord(rng), coord(rng)}, a2{coord(rng), coord(rng)};
    Vec2 b1{coord(rng), coord(rng)}, b2{coord(rng), coord(rng)};
    bool r = segments_intersect(a1, a2, b1, b2);
    CHECK(r == segments_intersect(b1, b2, a1, a2));
    CHECK(r == segments_intersect(a2, a1, b1, b2));
    CHECK(r == segments_intersect(a1, a2, b2, b1));
    CHECK(r == segments_intersect(a2, a1, b2, b1));
  }
}

TEST_CASE("crosses_wall") {
  Floorplan empty;
  empty.bounds = {-10, -10, 10, 10};
  CHECK_FALSE(crosses_wall(empty, {-1, 0}, {1, 0}));

  Floorplan plan;
  plan.bounds = {-10, -10, 10, 10};
  plan.walls.push_back({{0, -1}, {0, 1}});
  CHECK(crosses_wall(plan, {-1, 0}, {1, 0}));
  CHECK_FALSE(crosses_wall(plan, {1, 0}, {2, 0}));
}

TEST_CASE("count_wall_crossings counts each wall once") {
  Floorplan plan;
  plan.bounds = {-10, -10, 10, 10};
  plan.walls.push_back({{0, -1}, {0, 1}});
  plan.walls.push_back({{2, -1}, {2, 1}});
  CHECK(count_wall_crossings(plan, {-1, 0}, {3, 0}) == 2);
  CHECK(count_wall_crossings(plan, {-1, 0}, {1, 0}) == 1);
  CHECK(count_wall_crossings(plan, {3, 0}, {4, 0}) == 0);
}
