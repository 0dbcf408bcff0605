#ifndef PREFAB_VERIFIER_HPP
#define PREFAB_VERIFIER_HPP

#include "prefab/grid.hpp"
#include "prefab/planner.hpp"
#include "prefab/scene.hpp"

#include <optional>
#include <string>
#include <vector>

namespace prefab {

struct Violation {
  std::size_t move_index = 0;
  std::size_t segment_index = 0;
  Pose sample_pose;
  std::string obstacle_id;
};

enum class Verdict { kClean, kCollisionsFound };

std::string_view to_string(Verdict v);

struct VerificationReport {
  std::string plan_id;
  std::vector<Violation> violations;
  double sample_step = 0.0;
  Verdict verdict = Verdict::kClean;

  bool clean() const { return verdict == Verdict::kClean; }
};

/// min(grid radius, thinnest wall half-thickness) / 2.
double default_sample_step(const Scene& scene, double grid_radius);

/// Replays the plan against the evolving obstacle set and sweeps every
/// waypoint segment with swept_collides. Disassembly removes a wall after
/// its move; assembly adds it at its target. All violations are collected,
/// one per (segment, obstacle) pair. Only geometry primitives are used.
VerificationReport verify_plan(const Scene& scene, const Plan& plan, double sample_step,
                               std::string plan_id = {});

/// Ids of the walls standing after the whole plan has been replayed.
std::vector<std::string> standing_after(const Scene& scene, const Plan& plan);

/// Uniform-cost search under the same step-cost and corner rule as astar,
/// written independently of it. nullopt when the goal is unreachable.
std::optional<double> dijkstra_cost(const Grid& grid, const BlockedMask& mask, NodeIndex start,
                                    NodeIndex goal);

}  // namespace prefab

#endif  // PREFAB_VERIFIER_HPP
