#include "prefab/verifier.hpp"

#include "prefab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace prefab {

std::string_view to_string(Verdict v) {
  return v == Verdict::kClean ? "clean" : "collisions_found";
}

double default_sample_step(const Scene& scene, double grid_radius) {
  double step = grid_radius;
  if (!scene.walls.empty()) {
    step = std::min(step, scene.min_half_thickness());
  }
  return step / 2.0;
}

namespace {

struct Replay {
  std::vector<bool> standing;
  std::vector<Pose> pose;
};

Replay initial_state(const Scene& scene, const Plan& plan) {
  Replay r;
  r.pose.reserve(scene.walls.size());
  for (const Wall& w : scene.walls) {
    r.pose.push_back(w.placed);
  }
  // Disassembly starts from the finished building; assembly starts with
  // only the walls the plan never touches.
  r.standing.assign(scene.walls.size(), true);
  for (const MovePlan& m : plan.moves) {
    std::size_t k = 0;
    try {
      k = scene.index_of(m.wall_id);
    } catch (const LookupError&) {
      throw ValidationError("plan references unknown wall '" + m.wall_id + "'");
    }
    if (plan.direction == Direction::kAssembly) {
      r.standing[k] = false;
    }
  }
  return r;
}

void apply_move(Replay& r, const Scene& scene, const Plan& plan, const MovePlan& m) {
  const std::size_t k = scene.index_of(m.wall_id);
  if (plan.direction == Direction::kDisassembly) {
    r.standing[k] = false;
  } else {
    r.standing[k] = true;
    r.pose[k] = m.target_pose;
  }
}

}  // namespace

VerificationReport verify_plan(const Scene& scene, const Plan& plan, double sample_step,
                               std::string plan_id) {
  if (!(sample_step > 0.0)) {
    throw PreconditionError("sample_step must be > 0");
  }
  VerificationReport report;
  report.plan_id = std::move(plan_id);
  report.sample_step = sample_step;

  Replay state = initial_state(scene, plan);
  for (std::size_t mi = 0; mi < plan.moves.size(); ++mi) {
    const MovePlan& move = plan.moves[mi];
    const std::size_t mover = scene.index_of(move.wall_id);
    const WallFootprint& footprint = scene.walls[mover].footprint;

    std::vector<Rect> obstacles;
    std::vector<std::string> ids;
    for (std::size_t k = 0; k < scene.walls.size(); ++k) {
      if (k == mover || !state.standing[k]) continue;
      obstacles.push_back({state.pose[k], scene.walls[k].footprint.inflated(scene.inflation_margin)});
      ids.push_back(scene.walls[k].id);
    }
    for (std::size_t k = 0; k < scene.obstacles.size(); ++k) {
      obstacles.push_back(scene.static_obstacle(k));
      ids.push_back(scene.obstacles[k].id);
    }

    for (std::size_t s = 0; s + 1 < move.waypoints.size(); ++s) {
      const Pose from(move.waypoints[s], move.transit_yaw);
      const Pose to(move.waypoints[s + 1], move.transit_yaw);
      for (std::size_t k = 0; k < obstacles.size(); ++k) {
        const auto hit = swept_collides<double>(footprint, from, to,
                                                std::span<const Rect>(&obstacles[k], 1),
                                                sample_step);
        if (hit) {
          report.violations.push_back({mi, s, hit->pose, ids[k]});
        }
      }
    }
    apply_move(state, scene, plan, move);
  }
  report.verdict = report.violations.empty() ? Verdict::kClean : Verdict::kCollisionsFound;
  return report;
}

std::vector<std::string> standing_after(const Scene& scene, const Plan& plan) {
  Replay state = initial_state(scene, plan);
  for (const MovePlan& m : plan.moves) {
    apply_move(state, scene, plan, m);
  }
  std::vector<std::string> ids;
  for (std::size_t k = 0; k < scene.walls.size(); ++k) {
    if (state.standing[k]) ids.push_back(scene.walls[k].id);
  }
  return ids;
}

std::optional<double> dijkstra_cost(const Grid& grid, const BlockedMask& mask, NodeIndex start,
                                    NodeIndex goal) {
  if (mask.size() != grid.size() || start >= grid.size() || goal >= grid.size()) {
    throw PreconditionError("dijkstra_cost: inconsistent grid, mask or endpoints");
  }
  if (mask.blocked(start) || mask.blocked(goal)) {
    throw PreconditionError("dijkstra_cost: endpoint is blocked");
  }
  // Plain O(V^2) label-setting search: no heap, no heuristic.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(grid.size(), inf);
  std::vector<char> done(grid.size(), 0);
  dist[start] = 0.0;
  const double straight = grid.pitch();
  const double diagonal = grid.pitch() * std::numbers::sqrt2;

  auto free_at = [&](int i, int j) { return grid.in_range(i, j) && !mask.blocked(grid.index(i, j)); };

  for (;;) {
    NodeIndex u = grid.size();
    double best = inf;
    for (NodeIndex n = 0; n < grid.size(); ++n) {
      if (!done[n] && dist[n] < best) {
        best = dist[n];
        u = n;
      }
    }
    if (u == grid.size()) return std::nullopt;
    if (u == goal) return dist[u];
    done[u] = 1;
    const int ui = grid.col(u);
    const int uj = grid.row(u);
    for (int dj = -1; dj <= 1; ++dj) {
      for (int di = -1; di <= 1; ++di) {
        if (di == 0 && dj == 0) continue;
        if (!free_at(ui + di, uj + dj)) continue;
        double w = straight;
        if (di != 0 && dj != 0) {
          if (!free_at(ui + di, uj) || !free_at(ui, uj + dj)) continue;
          w = diagonal;
        }
        const NodeIndex v = grid.index(ui + di, uj + dj);
        if (dist[u] + w < dist[v]) dist[v] = dist[u] + w;
      }
    }
  }
}

}  // namespace prefab
