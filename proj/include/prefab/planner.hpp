#ifndef PREFAB_PLANNER_HPP
#define PREFAB_PLANNER_HPP

#include "prefab/errors.hpp"
#include "prefab/grid.hpp"
#include "prefab/scene.hpp"

#include <cstddef>
#include <deque>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace prefab {

enum class Direction { kDisassembly, kAssembly };

std::string_view to_string(Direction d);
Direction direction_from_string(std::string_view s);

/// One wall's transit from start_pose to target_pose. The waypoints are the
/// exact start position, the searched node centres, then the exact target
/// position. The wall is carried at transit_yaw for the whole move.
struct MovePlan {
  std::string wall_id;
  Pose start_pose;
  Pose target_pose;
  double transit_yaw = 0.0;
  std::vector<Vec2> waypoints;
  std::vector<NodeIndex> nodes;
  double path_cost = 0.0;

  friend bool operator==(const MovePlan&, const MovePlan&) = default;
};

enum class DeferralReason { kPathBlocked, kStartBlocked, kGoalBlocked };

std::string_view to_string(DeferralReason r);
DeferralReason deferral_reason_from_string(std::string_view s);

struct Deferral {
  std::string wall_id;
  DeferralReason reason = DeferralReason::kPathBlocked;

  friend bool operator==(const Deferral&, const Deferral&) = default;
};

struct Plan {
  Direction direction = Direction::kDisassembly;
  double grid_radius = 0.0;
  std::vector<MovePlan> moves;
  std::vector<Deferral> deferral_log;

  std::vector<std::string> wall_order() const;
  double total_cost() const;
  std::size_t waypoint_count() const;

  friend bool operator==(const Plan&, const Plan&) = default;
};

struct NodePath {
  std::vector<NodeIndex> nodes;
  double cost = 0.0;
};

/// Step cost of the 8-connected lattice: pitch straight, pitch*sqrt(2)
/// diagonal. A diagonal step needs both orthogonal neighbours walkable.
double step_cost(const Grid& grid, NodeIndex from, NodeIndex to);

/// A* over walkable nodes with the Euclidean heuristic. Ties on f go to
/// the lower h, then to the lower node index. Returns nullopt when the goal
/// is unreachable; throws PreconditionError if either endpoint is blocked.
std::optional<NodePath> astar(const Grid& grid, const BlockedMask& mask, NodeIndex start,
                              NodeIndex goal);

struct NoPath {
  DeferralReason reason = DeferralReason::kPathBlocked;
};

using MoveOutcome = std::variant<MovePlan, NoPath>;

/// Plans one move against the walls marked standing. The mask is built at
/// the target yaw, both endpoints are snapped, and A* runs between them.
MoveOutcome plan_move(const Scene& scene, std::size_t wall, const Pose& start, const Pose& target,
                      const Grid& grid, const std::vector<bool>& standing);

/// Moves a wall from its placed pose to `target` with every other wall standing.
MoveOutcome plan_single_move(const Scene& scene, std::string_view wall_id, const Pose& target,
                             const Grid& grid);

/// FIFO of walls awaiting a move, with the count of rotations since the
/// last successful move.
class WallQueue {
 public:
  explicit WallQueue(std::vector<std::size_t> walls);

  bool empty() const { return queue_.empty(); }
  std::size_t size() const { return queue_.size(); }
  std::size_t front() const { return queue_.front(); }
  std::size_t rotations() const { return rotations_; }

  void pop_moved();
  void defer_front();
  /// Every remaining wall was deferred once without any progress.
  bool stalled() const { return !queue_.empty() && rotations_ >= queue_.size(); }
  std::vector<std::size_t> remaining() const { return {queue_.begin(), queue_.end()}; }

 private:
  std::deque<std::size_t> queue_;
  std::size_t rotations_ = 0;
};

struct ScheduleResult {
  Plan plan;
  std::vector<std::string> stuck;  // empty unless the queue stalled

  bool deadlocked() const { return !stuck.empty(); }
};

class DeadlockError : public PlanningError {
 public:
  DeadlockError(const std::string& what, ScheduleResult partial)
      : PlanningError(what), partial_(std::move(partial)) {}

  const std::vector<std::string>& stuck() const { return partial_.stuck; }
  const Plan& partial_plan() const { return partial_.plan; }

 private:
  ScheduleResult partial_;
};

/// Queue-with-deferral disassembly: the front wall is planned from its
/// placed pose to its staging pose; on failure it goes to the back of the
/// queue. Moved walls leave the obstacle set. Stops when the queue is
/// empty or a full rotation makes no progress.
ScheduleResult schedule_disassembly(const Scene& scene, const std::vector<std::string>& order,
                                    const Grid& grid);

/// As schedule_disassembly, but throws DeadlockError on a stall.
Plan plan_disassembly(const Scene& scene, const std::vector<std::string>& order, const Grid& grid);

/// Scene-file order.
std::vector<std::string> scene_order(const Scene& scene);

/// Time reversal of a plan: move order and waypoints reversed, endpoints
/// swapped, direction flipped. Costs are carried over unchanged.
Plan reverse_plan(const Plan& plan);

/// Assembly is always disassembly followed by reversal.
Plan plan_assembly(const Scene& scene, const Grid& grid);
Plan plan_assembly(const Scene& scene, const std::vector<std::string>& order, const Grid& grid);

}  // namespace prefab

#endif  // PREFAB_PLANNER_HPP
