#include <doctest.h>

#include "oracles.hpp"
#include "prefab/errors.hpp"
#include "prefab/grid.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace prefab;
using prefab::testing::uniform;

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

Bounds box(double w, double h) { return {Vec2(0.0, 0.0), Vec2(w, h)}; }

Wall make_wall(std::string id, Pose placed, Pose staging, double hl, double ht) {
  return {std::move(id), WallFootprint(hl, ht), placed, staging};
}

Scene world(double w, double h) {
  Scene s;
  s.name = "t";
  s.bounds = box(w, h);
  return s;
}

BlockedMask brute_force(const Grid& grid, const Scene& scene, std::size_t mover, double yaw,
                        const std::vector<bool>& standing) {
  BlockedMask mask(grid.size());
  for (NodeIndex n = 0; n < grid.size(); ++n) {
    const Rect probe{Pose(grid.position(n), yaw), scene.walls[mover].footprint};
    bool hit = false;
    for (std::size_t k = 0; k < scene.walls.size(); ++k) {
      if (k != mover && standing[k]) {
        const Rect other{scene.walls[k].placed,
                         scene.walls[k].footprint.inflated(scene.inflation_margin)};
        hit = hit || rect_overlap(probe, other);
      }
    }
    for (const auto& o : scene.obstacles) {
      hit = hit || rect_overlap(probe, Rect{o.pose, o.footprint.inflated(scene.inflation_margin)});
    }
    mask.set_blocked(n, hit);
  }
  return mask;
}

Scene random_world(std::mt19937_64& rng, double mover_hl, double mover_ht) {
  Scene s = world(20.0, 16.0);
  s.inflation_margin = uniform(rng, 0.0, 0.2);
  s.walls.push_back(make_wall("m", Pose(2.0, 2.0, 0.0), Pose(18.0, 14.0, 0.0), mover_hl, mover_ht));
  for (int k = 0; k < 4; ++k) {
    s.walls.push_back(make_wall("w" + std::to_string(k),
                                Pose(uniform(rng, 4, 16), uniform(rng, 3, 13), uniform(rng, -3, 3)),
                                Pose(18.0, 14.0, 0.0), uniform(rng, 0.3, 2.0),
                                uniform(rng, 0.1, 0.3)));
  }
  s.obstacles.push_back({"col", WallFootprint(0.5, 0.5),
                         Pose(uniform(rng, 4, 16), uniform(rng, 3, 13), uniform(rng, -3, 3))});
  return s;
}

}  // namespace

TEST_CASE("build_grid dimensions") {
  const Grid g1 = build_grid(box(10, 10), 1.0);
  CHECK(g1.cols() == 5);
  CHECK(g1.rows() == 5);
  CHECK(g1.size() == 25);
  CHECK(build_grid(box(10, 10), 0.5).size() == 100);
  CHECK(g1.position(0, 0) == Vec2(1.0, 1.0));
  CHECK(g1.pitch() == 2.0);

  const Bounds shifted{Vec2(-3.0, 2.0), Vec2(4.0, 5.0)};
  const Grid g2 = build_grid(shifted, 1.0);
  CHECK(g2.cols() == 4);
  CHECK(g2.rows() == 2);
  CHECK(g2.position(3, 1) == Vec2(4.0, 5.0));
  CHECK(build_grid(box(3.0, 3.0), 0.1).size() == 225);
}

TEST_CASE("build_grid rejects bad input") {
  CHECK_THROWS_AS(build_grid(box(10, 10), 0.0), ValidationError);
  CHECK_THROWS_AS(build_grid(box(10, 10), -1.0), ValidationError);
  CHECK_THROWS_AS(build_grid(box(10, 0), 1.0), ValidationError);
  CHECK_THROWS_AS(build_grid(box(0, 10), 1.0), ValidationError);
}

TEST_CASE("node indexing is row major") {
  const Grid g = build_grid(box(8, 6), 1.0);
  CHECK(g.index(3, 2) == 11);
  CHECK(g.col(11) == 3);
  CHECK(g.row(11) == 2);
  CHECK(g.position(NodeIndex{11}) == g.position(3, 2));
  CHECK(g.nearest(Vec2(7.9, 5.9)) == 11);
  CHECK(g.nearest(Vec2(100, -100)) == g.index(3, 0));
}

TEST_CASE("node count scaling") {
  for (double r : {0.25, 0.5, 1.0, 2.0}) {
    const auto a = build_grid(box(16, 8), r).size();
    const auto b = build_grid(box(16, 8), r / 2.0).size();
    CHECK(b == 4 * a);
  }
  CHECK(build_grid(box(10, 7), 1.5).size() == 4 * 3);
}

TEST_CASE("occupancy_mask with only the mover is all walkable") {
  Scene s = world(10, 10);
  s.walls.push_back(make_wall("m", Pose(5, 5, 0), Pose(2, 2, 0), 2.0, 0.2));
  const Grid g = build_grid(s.bounds, 0.5);
  const BlockedMask m = occupancy_mask(g, s, "m", 0.0);
  CHECK(m.size() == g.size());
  CHECK(m.blocked_count() == 0);
  CHECK_THROWS_AS(occupancy_mask(g, s, "nope", 0.0), LookupError);
}

TEST_CASE("point mover: blocked nodes are the nodes inside the obstacle") {
  Scene s = world(10, 10);
  s.walls.push_back(make_wall("m", Pose(1, 1, 0), Pose(9, 9, 0), 1e-6, 1e-6));
  s.obstacles.push_back({"block", WallFootprint(1.0, 1.0), Pose(5.2, 4.7, 0.0)});
  const Grid g = build_grid(s.bounds, 0.5);
  const BlockedMask m = occupancy_mask(g, s, "m", 0.0);
  std::size_t inside = 0;
  for (NodeIndex n = 0; n < g.size(); ++n) {
    const bool expected = s.obstacles[0].rect().contains(g.position(n));
    CHECK(m.blocked(n) == expected);
    inside += expected ? 1 : 0;
  }
  CHECK(inside == 4);
}

TEST_CASE("long mover near a wall is blocked within its half length") {
  Scene s = world(20, 10);
  // mover 4 m long along x; standing wall across x = 10
  s.walls.push_back(make_wall("m", Pose(3, 5, 0), Pose(17, 5, 0), 2.0, 0.1));
  s.walls.push_back(make_wall("w", Pose(10, 5, kHalfPi), Pose(17, 9, 0), 3.0, 0.1));
  const Grid g = build_grid(s.bounds, 0.5);
  const BlockedMask m = occupancy_mask(g, s, "m", 0.0);
  CHECK(m == brute_force(g, s, 0, 0.0, {true, true}));
  const int j = 5;  // row through y = 5.5
  for (int i = 0; i < g.cols(); ++i) {
    const double x = g.position(i, j).x();
    CHECK(m.blocked(g.index(i, j)) == (std::abs(x - 10.0) <= 2.1));
  }
}

TEST_CASE("occupancy_mask equals the brute-force evaluation") {
  std::mt19937_64 rng(11);
  for (int n = 0; n < 20; ++n) {
    const Scene s = random_world(rng, uniform(rng, 0.3, 2.0), uniform(rng, 0.05, 0.3));
    const Grid g = build_grid(s.bounds, uniform(rng, 0.3, 1.2));
    std::vector<bool> standing(s.walls.size());
    for (std::size_t k = 0; k < standing.size(); ++k) standing[k] = (rng() & 1u) != 0;
    const double yaw = uniform(rng, -3, 3);
    CHECK(occupancy_mask(g, s, 0, yaw, standing) == brute_force(g, s, 0, yaw, standing));
  }
}

TEST_CASE("mask is monotone under footprint growth") {
  std::mt19937_64 rng(12);
  for (int n = 0; n < 20; ++n) {
    Scene s = random_world(rng, 0.5, 0.1);
    const Grid g = build_grid(s.bounds, 0.5);
    const std::vector<bool> standing(s.walls.size(), true);
    const double yaw = uniform(rng, -3, 3);
    const BlockedMask small = occupancy_mask(g, s, 0, yaw, standing);
    s.walls[0].footprint = WallFootprint(uniform(rng, 0.5, 2.5), uniform(rng, 0.1, 0.5));
    const BlockedMask large = occupancy_mask(g, s, 0, yaw, standing);
    for (NodeIndex k = 0; k < g.size(); ++k) {
      if (small.blocked(k)) CHECK(large.blocked(k));
    }
    CHECK(large.blocked_count() >= small.blocked_count());
  }
}

TEST_CASE("the mover never blocks itself and removed walls do not block") {
  Scene s = world(20, 10);
  s.walls.push_back(make_wall("a", Pose(5.5, 5.5, 0), Pose(15, 8, 0), 2.0, 0.2));
  s.walls.push_back(make_wall("b", Pose(15.5, 5.5, 0), Pose(5, 8, 0), 2.0, 0.2));
  const Grid g = build_grid(s.bounds, 0.5);
  const BlockedMask ma = occupancy_mask(g, s, 0, 0.0, {true, true});
  CHECK(ma.walkable(g.nearest(Vec2(5.5, 5.5))));
  CHECK(ma.blocked(g.nearest(Vec2(15.5, 5.5))));
  const BlockedMask gone = occupancy_mask(g, s, 0, 0.0, {true, false});
  CHECK(gone.blocked_count() == 0);
  CHECK_THROWS_AS(occupancy_mask(g, s, 0, 0.0, {true}), PreconditionError);
  CHECK_THROWS_AS(occupancy_mask(g, s, 5, 0.0, {true, true}), LookupError);
}

TEST_CASE("inflation margin grows the blocked set") {
  Scene s = world(20, 10);
  s.walls.push_back(make_wall("m", Pose(3, 5, 0), Pose(17, 5, 0), 1.0, 0.1));
  s.obstacles.push_back({"col", WallFootprint(0.5, 0.5), Pose(10, 5, 0)});
  const Grid g = build_grid(s.bounds, 0.25);
  const auto plain = occupancy_mask(g, s, "m", 0.0).blocked_count();
  s.inflation_margin = 0.5;
  CHECK(occupancy_mask(g, s, "m", 0.0).blocked_count() > plain);
}

TEST_CASE("snap_to_node") {
  const Grid g = build_grid(box(6, 6), 1.0);  // 3 x 3
  BlockedMask m(g.size());
  CHECK(snap_to_node(g, m, Vec2(3.1, 3.2)) == NodeIndex{4});
  m.set_blocked(4);
  // (3.6, 3.0): neighbours (2,1) and ... nearest walkable is (2,1) at x = 5
  CHECK(snap_to_node(g, m, Vec2(3.6, 3.0)) == g.index(2, 1));
  // exact tie between all four orthogonal neighbours goes to the lowest index
  CHECK(snap_to_node(g, m, Vec2(3.0, 3.0)) == g.index(1, 0));
  for (NodeIndex n = 0; n < g.size(); ++n) m.set_blocked(n);
  CHECK_FALSE(snap_to_node(g, m, Vec2(3.0, 3.0)).has_value());
}
