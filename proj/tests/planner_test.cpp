#include <doctest.h>

#include "oracles.hpp"
#include "prefab/errors.hpp"
#include "prefab/io.hpp"
#include "prefab/planner.hpp"
#include "prefab/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

using namespace prefab;

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

Wall make_wall(std::string id, Pose placed, Pose staging, double hl = 2.0, double ht = 0.15) {
  return {std::move(id), WallFootprint(hl, ht), placed, staging};
}

Scene world(double w, double h) {
  Scene s;
  s.name = "t";
  s.bounds = {Vec2(0, 0), Vec2(w, h)};
  return s;
}

// Two walls whose staging poses are each other's placed poses.
Scene swap_scene() {
  Scene s = world(30, 20);
  s.walls.push_back(make_wall("A", Pose(10.5, 10.5, 0), Pose(20.5, 10.5, 0), 2.0, 0.6));
  s.walls.push_back(make_wall("B", Pose(20.5, 10.5, 0), Pose(10.5, 10.5, 0), 2.0, 0.6));
  return s;
}

bool neighbours(const Grid& g, NodeIndex a, NodeIndex b) {
  return a != b && std::abs(g.col(a) - g.col(b)) <= 1 && std::abs(g.row(a) - g.row(b)) <= 1;
}

void check_move_shape(const Scene& scene, const Grid& grid, const MovePlan& m,
                      const std::vector<bool>& standing) {
  REQUIRE(m.waypoints.size() == m.nodes.size() + 2);
  CHECK(m.waypoints.front() == m.start_pose.position);
  CHECK(m.waypoints.back() == m.target_pose.position);
  CHECK(m.transit_yaw == m.target_pose.yaw);
  const BlockedMask mask =
      occupancy_mask(grid, scene, scene.index_of(m.wall_id), m.transit_yaw, standing);
  for (std::size_t k = 0; k < m.nodes.size(); ++k) {
    CHECK(mask.walkable(m.nodes[k]));
    CHECK(m.waypoints[k + 1] == grid.position(m.nodes[k]));
    if (k > 0) CHECK(neighbours(grid, m.nodes[k - 1], m.nodes[k]));
  }
  double sum = 0.0;
  for (std::size_t k = 1; k < m.waypoints.size(); ++k) {
    sum += (m.waypoints[k] - m.waypoints[k - 1]).norm();
  }
  CHECK(m.path_cost == doctest::Approx(sum).epsilon(1e-12));
}

}  // namespace

TEST_CASE("enum strings round trip") {
  for (auto d : {Direction::kDisassembly, Direction::kAssembly}) {
    CHECK(direction_from_string(to_string(d)) == d);
  }
  for (auto r : {DeferralReason::kPathBlocked, DeferralReason::kStartBlocked,
                 DeferralReason::kGoalBlocked}) {
    CHECK(deferral_reason_from_string(to_string(r)) == r);
  }
  CHECK(to_string(Direction::kAssembly) == "assembly");
  CHECK(to_string(DeferralReason::kPathBlocked) == "path_blocked");
  CHECK_THROWS_AS(direction_from_string("sideways"), ValidationError);
  CHECK_THROWS_AS(deferral_reason_from_string("bored"), ValidationError);
}

TEST_CASE("astar trivial cases") {
  const Grid g = build_grid({Vec2(0, 0), Vec2(10, 10)}, 1.0);  // 5 x 5
  BlockedMask m(g.size());
  const auto same = astar(g, m, 7, 7);
  REQUIRE(same.has_value());
  CHECK(same->nodes == std::vector<NodeIndex>{7});
  CHECK(same->cost == 0.0);

  const auto corner = astar(g, m, g.index(0, 0), g.index(4, 4));
  REQUIRE(corner.has_value());
  CHECK(corner->cost == doctest::Approx(4.0 * 2.0 * std::sqrt(2.0)));
  CHECK(corner->nodes.size() == 5);
  CHECK(corner->cost == doctest::Approx(*dijkstra_cost(g, m, 0, 24)));
  CHECK(step_cost(g, 0, 1) == 2.0);
  CHECK(step_cost(g, 0, 6) == doctest::Approx(2.0 * std::sqrt(2.0)));
}

TEST_CASE("astar: enclosed goal gives no path, blocked endpoints throw") {
  const Grid g = build_grid({Vec2(0, 0), Vec2(7, 7)}, 0.5);  // 7 x 7
  BlockedMask m(g.size());
  for (int dj = -1; dj <= 1; ++dj) {
    for (int di = -1; di <= 1; ++di) {
      if (di != 0 || dj != 0) m.set_blocked(g.index(3 + di, 3 + dj));
    }
  }
  CHECK_FALSE(astar(g, m, 0, g.index(3, 3)).has_value());
  CHECK_THROWS_AS(astar(g, m, g.index(2, 2), 0), PreconditionError);
  CHECK_THROWS_AS(astar(g, m, 0, g.index(2, 3)), PreconditionError);
  CHECK_THROWS_AS(astar(g, m, 0, g.size()), PreconditionError);
  CHECK_THROWS_AS(astar(g, BlockedMask(3), 0, 1), PreconditionError);
}

TEST_CASE("astar does not cut corners") {
  const Grid g = build_grid({Vec2(0, 0), Vec2(4, 4)}, 1.0);  // 2 x 2
  BlockedMask m(g.size());
  m.set_blocked(g.index(1, 0));
  const auto p = astar(g, m, g.index(0, 0), g.index(1, 1));
  REQUIRE(p.has_value());
  CHECK(p->nodes.size() == 3);
  CHECK(p->cost == doctest::Approx(4.0));
  m.set_blocked(g.index(0, 1));
  CHECK_FALSE(astar(g, m, g.index(0, 0), g.index(1, 1)).has_value());
}

TEST_CASE("plan_single_move on a free floor") {
  Scene s = world(20, 10);
  s.walls.push_back(make_wall("w", Pose(3.2, 4.1, 0), Pose(16.7, 6.3, 0)));
  const Grid g = build_grid(s.bounds, 0.5);
  const Pose target(16.7, 6.3, kHalfPi);
  const auto out = plan_single_move(s, "w", target, g);
  REQUIRE(std::holds_alternative<MovePlan>(out));
  const MovePlan& m = std::get<MovePlan>(out);
  CHECK(m.path_cost >= (target.position - s.walls[0].placed.position).norm());
  CHECK(m.start_pose == s.walls[0].placed);
  CHECK(m.target_pose == target);
  check_move_shape(s, g, m, {true});
  CHECK_THROWS_AS(plan_single_move(s, "w", Pose(25, 5, 0), g), PreconditionError);
  CHECK_THROWS_AS(plan_single_move(s, "x", target, g), LookupError);
}

TEST_CASE("plan_single_move detours through a corridor at the oracle cost") {
  Scene s = world(20, 12);
  s.walls.push_back(make_wall("m", Pose(3, 3, kHalfPi), Pose(17, 3, kHalfPi), 0.5, 0.1));
  // baffle from the bottom edge up to y = 9, leaving a gap near the top
  s.obstacles.push_back({"baffle", WallFootprint(4.5, 0.6), Pose(10, 4.5, kHalfPi)});
  const Grid g = build_grid(s.bounds, 0.5);
  const auto out = plan_single_move(s, "m", s.walls[0].staging, g);
  REQUIRE(std::holds_alternative<MovePlan>(out));
  const MovePlan& m = std::get<MovePlan>(out);
  check_move_shape(s, g, m, {true});

  const BlockedMask mask = occupancy_mask(g, s, "m", kHalfPi);
  const auto oracle = dijkstra_cost(g, mask, m.nodes.front(), m.nodes.back());
  REQUIRE(oracle.has_value());
  double node_cost = 0.0;
  for (std::size_t k = 1; k < m.nodes.size(); ++k) node_cost += step_cost(g, m.nodes[k - 1], m.nodes[k]);
  CHECK(node_cost == doctest::Approx(*oracle).epsilon(1e-12));
  CHECK(*oracle > 14.0 + 1.0);  // longer than the straight 14 m run
  const bool over_the_top = std::any_of(m.waypoints.begin(), m.waypoints.end(),
                                        [](const Vec2& p) { return p.y() > 9.0; });
  CHECK(over_the_top);
}

TEST_CASE("plan_single_move into a covered target is NoPath") {
  Scene s = world(30, 20);
  s.walls.push_back(make_wall("a", Pose(5, 5, 0), Pose(5, 15, 0)));
  s.walls.push_back(make_wall("b", Pose(20, 10, 0), Pose(25, 15, 0), 2.0, 1.6));
  const Grid g = build_grid(s.bounds, 0.5);
  const auto out = plan_single_move(s, "a", Pose(20, 10, 0), g);
  REQUIRE(std::holds_alternative<NoPath>(out));
  CHECK(std::get<NoPath>(out).reason == DeferralReason::kGoalBlocked);
}

TEST_CASE("WallQueue rotation bookkeeping") {
  WallQueue q({0, 1, 2});
  CHECK(q.front() == 0);
  q.defer_front();
  CHECK(q.front() == 1);
  CHECK(q.rotations() == 1);
  CHECK_FALSE(q.stalled());
  q.pop_moved();
  CHECK(q.rotations() == 0);
  CHECK(q.remaining() == std::vector<std::size_t>{2, 0});
  q.defer_front();
  q.defer_front();
  CHECK(q.stalled());
  CHECK(q.size() == 2);
}

TEST_CASE("one unobstructed wall") {
  Scene s = world(20, 10);
  s.walls.push_back(make_wall("w", Pose(5.5, 5.5, 0), Pose(15.5, 5.5, 0)));
  const Grid g = build_grid(s.bounds, 0.5);
  const Plan p = plan_disassembly(s, {"w"}, g);
  CHECK(p.direction == Direction::kDisassembly);
  CHECK(p.grid_radius == 0.5);
  REQUIRE(p.moves.size() == 1);
  CHECK(p.deferral_log.empty());
  CHECK(p.wall_order() == std::vector<std::string>{"w"});
  CHECK(p.total_cost() == doctest::Approx(10.0));
  CHECK(p.waypoint_count() == p.moves[0].waypoints.size());
  check_move_shape(s, g, p.moves[0], {true});
}

TEST_CASE("blocked exit: [A, B] executes as [B, A] with one deferral") {
  const Scene s = load_scene(testing::data_path("blocked_exit.json"));
  const Grid g = build_grid(s.bounds, 0.5);
  const Plan p = plan_disassembly(s, {"A", "B"}, g);
  CHECK(p.wall_order() == std::vector<std::string>{"B", "A"});
  REQUIRE(p.deferral_log.size() == 1);
  CHECK(p.deferral_log[0] == Deferral{"A", DeferralReason::kPathBlocked});
  check_move_shape(s, g, p.moves[0], {true, true});
  check_move_shape(s, g, p.moves[1], {true, false});

  const auto search = testing::enumerate_orders(s, g);
  CHECK(search.total_orders == 2);
  CHECK(search.feasible_orders == 1);
  REQUIRE(search.witness.has_value());
  CHECK(*search.witness == std::vector<std::size_t>{1, 0});
}

TEST_CASE("mutually blocking walls deadlock") {
  const Scene s = swap_scene();
  s.validate();
  const Grid g = build_grid(s.bounds, 0.5);
  try {
    plan_disassembly(s, {"A", "B"}, g);
    FAIL("expected a deadlock");
  } catch (const DeadlockError& e) {
    CHECK(e.stuck() == std::vector<std::string>{"A", "B"});
    CHECK(e.partial_plan().moves.empty());
    CHECK(e.partial_plan().deferral_log.size() == 2);
    CHECK(std::string(e.what()).find("A, B") != std::string::npos);
  }
  const auto r = schedule_disassembly(s, {"B", "A"}, g);
  CHECK(r.deadlocked());
  CHECK(r.stuck == std::vector<std::string>{"B", "A"});
  CHECK(testing::enumerate_orders(s, g).feasible_orders == 0);
  CHECK_THROWS_WITH_AS(plan_assembly(s, g), doctest::Contains("no clash-free assembly order"),
                       DeadlockError);
}

TEST_CASE("initial order errors") {
  const Scene s = swap_scene();
  const Grid g = build_grid(s.bounds, 0.5);
  CHECK_THROWS_AS(schedule_disassembly(s, {"A", "A"}, g), ValidationError);
  CHECK_THROWS_AS(schedule_disassembly(s, {"A", "Z"}, g), LookupError);
  CHECK(schedule_disassembly(s, {}, g).plan.moves.empty());
}

TEST_CASE("assembly is the reversed disassembly") {
  const Scene s = load_scene(testing::data_path("four_walls.json"));
  const Grid g = build_grid(s.bounds, 0.5);
  const std::vector<std::string> order = {"w4", "w3", "w2", "w1"};
  const Plan dis = plan_disassembly(s, order, g);
  CHECK(dis.wall_order() == order);
  const Plan as = plan_assembly(s, order, g);
  CHECK(as.direction == Direction::kAssembly);
  CHECK(as.wall_order() == std::vector<std::string>{"w1", "w2", "w3", "w4"});
  REQUIRE(as.moves.size() == 4);
  for (std::size_t k = 0; k < 4; ++k) {
    const MovePlan& a = as.moves[k];
    const MovePlan& d = dis.moves[3 - k];
    CHECK(a.start_pose == d.target_pose);
    CHECK(a.target_pose == d.start_pose);
    CHECK(a.path_cost == d.path_cost);
    std::vector<Vec2> back(d.waypoints.rbegin(), d.waypoints.rend());
    CHECK(a.waypoints == back);
  }
  CHECK(reverse_plan(as) == dis);
  CHECK(reverse_plan(reverse_plan(dis)) == dis);
  CHECK(plan_assembly(s, g) == reverse_plan(plan_disassembly(s, scene_order(s), g)));
}

TEST_CASE("single wall assembly reverses its waypoints") {
  Scene s = world(20, 10);
  s.walls.push_back(make_wall("w", Pose(5, 5, 0), Pose(15, 7, 0)));
  const Grid g = build_grid(s.bounds, 0.5);
  const Plan dis = plan_disassembly(s, {"w"}, g);
  const Plan as = plan_assembly(s, g);
  REQUIRE(as.moves.size() == 1);
  std::vector<Vec2> back(dis.moves[0].waypoints.rbegin(), dis.moves[0].waypoints.rend());
  CHECK(as.moves[0].waypoints == back);
  CHECK(as.moves[0].waypoints.front() == s.walls[0].staging.position);
  CHECK(as.moves[0].waypoints.back() == s.walls[0].placed.position);
}

TEST_CASE("scheduler properties on random scenes") {
  std::mt19937_64 rng(555);
  for (int n = 0; n < 15; ++n) {
    const Scene s = testing::random_scene(rng, 4 + n % 3);
    const Grid g = build_grid(s.bounds, 0.5);
    const auto order = scene_order(s);
    const ScheduleResult r = schedule_disassembly(s, order, g);

    // conservation: every wall exactly once in moves or stuck
    std::multiset<std::string> seen(r.stuck.begin(), r.stuck.end());
    for (const auto& m : r.plan.moves) seen.insert(m.wall_id);
    CHECK(seen == std::multiset<std::string>(order.begin(), order.end()));
    CHECK(r.plan.deferral_log.size() < order.size() * order.size());

    std::vector<bool> standing(s.walls.size(), true);
    for (const auto& m : r.plan.moves) {
      check_move_shape(s, g, m, standing);
      standing[s.index_of(m.wall_id)] = false;
    }

    // determinism
    const ScheduleResult again = schedule_disassembly(s, order, g);
    CHECK(again.plan == r.plan);
    CHECK(again.stuck == r.stuck);
    CHECK(dump(plan_to_json(again.plan)) == dump(plan_to_json(r.plan)));
  }
}
