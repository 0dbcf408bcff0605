#include "prefab/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <set>

namespace prefab {

std::string_view to_string(Direction d) {
  return d == Direction::kDisassembly ? "disassembly" : "assembly";
}

Direction direction_from_string(std::string_view s) {
  if (s == "disassembly") return Direction::kDisassembly;
  if (s == "assembly") return Direction::kAssembly;
  throw ValidationError("unknown plan direction '" + std::string(s) + "'");
}

std::string_view to_string(DeferralReason r) {
  switch (r) {
    case DeferralReason::kPathBlocked: return "path_blocked";
    case DeferralReason::kStartBlocked: return "start_blocked";
    case DeferralReason::kGoalBlocked: return "goal_blocked";
  }
  return "path_blocked";
}

DeferralReason deferral_reason_from_string(std::string_view s) {
  if (s == "path_blocked") return DeferralReason::kPathBlocked;
  if (s == "start_blocked") return DeferralReason::kStartBlocked;
  if (s == "goal_blocked") return DeferralReason::kGoalBlocked;
  throw ValidationError("unknown deferral reason '" + std::string(s) + "'");
}

std::vector<std::string> Plan::wall_order() const {
  std::vector<std::string> ids;
  ids.reserve(moves.size());
  for (const MovePlan& m : moves) {
    ids.push_back(m.wall_id);
  }
  return ids;
}

double Plan::total_cost() const {
  double sum = 0.0;
  for (const MovePlan& m : moves) {
    sum += m.path_cost;
  }
  return sum;
}

std::size_t Plan::waypoint_count() const {
  std::size_t n = 0;
  for (const MovePlan& m : moves) {
    n += m.waypoints.size();
  }
  return n;
}

double step_cost(const Grid& grid, NodeIndex from, NodeIndex to) {
  const bool diagonal = grid.col(from) != grid.col(to) && grid.row(from) != grid.row(to);
  return diagonal ? grid.pitch() * std::numbers::sqrt2 : grid.pitch();
}

namespace {

struct OpenEntry {
  double f;
  double h;
  NodeIndex node;
};

// priority_queue is a max-heap; "greater" entries are popped last.
struct WorseEntry {
  bool operator()(const OpenEntry& a, const OpenEntry& b) const {
    if (a.f != b.f) return a.f > b.f;
    if (a.h != b.h) return a.h > b.h;
    return a.node > b.node;
  }
};

constexpr int kOffsets[8][2] = {{-1, -1}, {0, -1}, {1, -1}, {-1, 0},
                                {1, 0},   {-1, 1}, {0, 1},  {1, 1}};

}  // namespace

std::optional<NodePath> astar(const Grid& grid, const BlockedMask& mask, NodeIndex start,
                              NodeIndex goal) {
  if (mask.size() != grid.size()) {
    throw PreconditionError("astar: mask size does not match the grid");
  }
  if (start >= grid.size() || goal >= grid.size()) {
    throw PreconditionError("astar: endpoint outside the grid");
  }
  if (mask.blocked(start)) {
    throw PreconditionError("astar: start node is blocked");
  }
  if (mask.blocked(goal)) {
    throw PreconditionError("astar: goal node is blocked");
  }

  const int gi = grid.col(goal);
  const int gj = grid.row(goal);
  const double pitch = grid.pitch();
  const double diagonal = pitch * std::numbers::sqrt2;
  auto heuristic = [&](int i, int j) {
    return pitch * std::hypot(static_cast<double>(i - gi), static_cast<double>(j - gj));
  };

  std::vector<GridNode> nodes(grid.size());
  std::priority_queue<OpenEntry, std::vector<OpenEntry>, WorseEntry> open;

  GridNode& first = nodes[start];
  first.i = grid.col(start);
  first.j = grid.row(start);
  first.g = 0.0;
  first.h = heuristic(first.i, first.j);
  first.f = first.g + first.h;
  first.opened = true;
  open.push({first.f, first.h, start});

  while (!open.empty()) {
    const OpenEntry top = open.top();
    open.pop();
    GridNode& current = nodes[top.node];
    if (current.closed || top.f != current.f) {
      continue;  // stale entry
    }
    current.closed = true;

    if (top.node == goal) {
      NodePath path;
      path.cost = current.g;
      for (std::optional<NodeIndex> n = goal; n; n = nodes[*n].parent) {
        path.nodes.push_back(*n);
      }
      std::reverse(path.nodes.begin(), path.nodes.end());
      return path;
    }

    for (const auto& off : kOffsets) {
      const int ni = current.i + off[0];
      const int nj = current.j + off[1];
      if (!grid.in_range(ni, nj)) continue;
      const NodeIndex next = grid.index(ni, nj);
      if (mask.blocked(next) || nodes[next].closed) continue;
      const bool is_diagonal = off[0] != 0 && off[1] != 0;
      if (is_diagonal && (mask.blocked(grid.index(current.i + off[0], current.j)) ||
                          mask.blocked(grid.index(current.i, current.j + off[1])))) {
        continue;  // no corner cutting
      }
      const double g = current.g + (is_diagonal ? diagonal : pitch);
      GridNode& nb = nodes[next];
      if (nb.opened && g >= nb.g) continue;
      nb.i = ni;
      nb.j = nj;
      nb.g = g;
      nb.h = heuristic(ni, nj);
      nb.f = nb.g + nb.h;
      nb.parent = top.node;
      nb.opened = true;
      open.push({nb.f, nb.h, next});
    }
  }
  return std::nullopt;
}

MoveOutcome plan_move(const Scene& scene, std::size_t wall, const Pose& start, const Pose& target,
                      const Grid& grid, const std::vector<bool>& standing) {
  const BlockedMask mask = occupancy_mask(grid, scene, wall, target.yaw, standing);
  const std::optional<NodeIndex> start_node = snap_to_node(grid, mask, start.position);
  if (!start_node) {
    return NoPath{DeferralReason::kStartBlocked};
  }
  const std::optional<NodeIndex> goal_node = snap_to_node(grid, mask, target.position);
  if (!goal_node) {
    return NoPath{DeferralReason::kGoalBlocked};
  }
  std::optional<NodePath> path = astar(grid, mask, *start_node, *goal_node);
  if (!path) {
    return NoPath{DeferralReason::kPathBlocked};
  }

  MovePlan move;
  move.wall_id = scene.walls[wall].id;
  move.start_pose = start;
  move.target_pose = target;
  move.transit_yaw = target.yaw;
  move.nodes = std::move(path->nodes);
  move.waypoints.reserve(move.nodes.size() + 2);
  move.waypoints.push_back(start.position);
  for (NodeIndex n : move.nodes) {
    move.waypoints.push_back(grid.position(n));
  }
  move.waypoints.push_back(target.position);
  for (std::size_t k = 1; k < move.waypoints.size(); ++k) {
    move.path_cost += (move.waypoints[k] - move.waypoints[k - 1]).norm();
  }
  return move;
}

MoveOutcome plan_single_move(const Scene& scene, std::string_view wall_id, const Pose& target,
                             const Grid& grid) {
  const std::size_t wall = scene.index_of(wall_id);
  if (!scene.bounds.contains(target.position)) {
    throw PreconditionError("target pose lies outside the world bounds");
  }
  return plan_move(scene, wall, scene.walls[wall].placed, target, grid,
                   std::vector<bool>(scene.walls.size(), true));
}

WallQueue::WallQueue(std::vector<std::size_t> walls) : queue_(walls.begin(), walls.end()) {}

void WallQueue::pop_moved() {
  queue_.pop_front();
  rotations_ = 0;
}

void WallQueue::defer_front() {
  queue_.push_back(queue_.front());
  queue_.pop_front();
  ++rotations_;
}

ScheduleResult schedule_disassembly(const Scene& scene, const std::vector<std::string>& order,
                                    const Grid& grid) {
  std::vector<std::size_t> indices;
  std::set<std::size_t> seen;
  for (const std::string& id : order) {
    const std::size_t k = scene.index_of(id);
    if (!seen.insert(k).second) {
      throw ValidationError("wall '" + id + "' listed twice in the initial order");
    }
    indices.push_back(k);
  }

  ScheduleResult result;
  result.plan.direction = Direction::kDisassembly;
  result.plan.grid_radius = grid.radius();

  std::vector<bool> standing(scene.walls.size(), true);
  WallQueue queue(std::move(indices));
  while (!queue.empty()) {
    if (queue.stalled()) {
      for (std::size_t k : queue.remaining()) {
        result.stuck.push_back(scene.walls[k].id);
      }
      break;
    }
    const std::size_t wall = queue.front();
    const Wall& w = scene.walls[wall];
    MoveOutcome outcome = plan_move(scene, wall, w.placed, w.staging, grid, standing);
    if (auto* move = std::get_if<MovePlan>(&outcome)) {
      result.plan.moves.push_back(std::move(*move));
      standing[wall] = false;
      queue.pop_moved();
    } else {
      result.plan.deferral_log.push_back({w.id, std::get<NoPath>(outcome).reason});
      queue.defer_front();
    }
  }
  return result;
}

Plan plan_disassembly(const Scene& scene, const std::vector<std::string>& order, const Grid& grid) {
  ScheduleResult result = schedule_disassembly(scene, order, grid);
  if (result.deadlocked()) {
    std::string ids;
    for (const std::string& id : result.stuck) {
      ids += (ids.empty() ? "" : ", ") + id;
    }
    throw DeadlockError("disassembly deadlock: no remaining wall can move (" + ids + ")",
                        std::move(result));
  }
  return std::move(result.plan);
}

std::vector<std::string> scene_order(const Scene& scene) {
  std::vector<std::string> ids;
  ids.reserve(scene.walls.size());
  for (const Wall& w : scene.walls) {
    ids.push_back(w.id);
  }
  return ids;
}

Plan reverse_plan(const Plan& plan) {
  Plan out;
  out.direction =
      plan.direction == Direction::kDisassembly ? Direction::kAssembly : Direction::kDisassembly;
  out.grid_radius = plan.grid_radius;
  out.deferral_log = plan.deferral_log;
  out.moves.reserve(plan.moves.size());
  for (auto it = plan.moves.rbegin(); it != plan.moves.rend(); ++it) {
    MovePlan m = *it;
    std::swap(m.start_pose, m.target_pose);
    std::reverse(m.waypoints.begin(), m.waypoints.end());
    std::reverse(m.nodes.begin(), m.nodes.end());
    out.moves.push_back(std::move(m));
  }
  return out;
}

Plan plan_assembly(const Scene& scene, const Grid& grid) {
  return plan_assembly(scene, scene_order(scene), grid);
}

Plan plan_assembly(const Scene& scene, const std::vector<std::string>& order, const Grid& grid) {
  ScheduleResult result = schedule_disassembly(scene, order, grid);
  if (result.deadlocked()) {
    std::string ids;
    for (const std::string& id : result.stuck) {
      ids += (ids.empty() ? "" : ", ") + id;
    }
    throw DeadlockError("no clash-free assembly order found (stuck: " + ids + ")",
                        std::move(result));
  }
  return reverse_plan(result.plan);
}

}  // namespace prefab
