#include "prefab/grid.hpp"

#include "prefab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace prefab {

namespace {

// ceil() that ignores representation noise such as 3.0 / 0.2 = 15.000000000000002.
int lattice_extent(double length, double pitch) {
  const double cells = length / pitch;
  const double rounded = std::round(cells);
  if (std::abs(cells - rounded) <= 1e-9 * std::max(1.0, rounded)) {
    return static_cast<int>(rounded);
  }
  return static_cast<int>(std::ceil(cells));
}

}  // namespace

Grid::Grid(const Bounds& world, double radius) : origin_(world.min), radius_(radius) {
  if (!(std::isfinite(radius) && radius > 0.0)) {
    throw ValidationError("grid radius must be finite and > 0");
  }
  if (!(world.width() > 0.0 && world.height() > 0.0) || !std::isfinite(world.width()) ||
      !std::isfinite(world.height())) {
    throw ValidationError("grid bounds must have positive area");
  }
  const double cols = std::ceil(world.width() / pitch());
  const double rows = std::ceil(world.height() / pitch());
  if (cols * rows > static_cast<double>(std::numeric_limits<int>::max())) {
    throw ValidationError("grid too large for the requested radius");
  }
  cols_ = lattice_extent(world.width(), pitch());
  rows_ = lattice_extent(world.height(), pitch());
}

NodeIndex Grid::nearest(const Vec2& p) const {
  const Vec2 local = (p - origin_) / pitch();
  const int i = std::clamp(static_cast<int>(std::floor(local.x())), 0, cols_ - 1);
  const int j = std::clamp(static_cast<int>(std::floor(local.y())), 0, rows_ - 1);
  return index(i, j);
}

Grid build_grid(const Bounds& world, double radius) { return Grid(world, radius); }

std::size_t BlockedMask::blocked_count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

BlockedMask occupancy_mask(const Grid& grid, const Scene& scene, std::size_t moving_wall,
                           double transit_yaw, const std::vector<bool>& standing) {
  if (moving_wall >= scene.walls.size()) {
    throw LookupError("moving wall index out of range");
  }
  if (standing.size() != scene.walls.size()) {
    throw PreconditionError("standing set must have one entry per wall");
  }

  std::vector<Rect> obstacles;
  obstacles.reserve(scene.walls.size() + scene.obstacles.size());
  for (std::size_t k = 0; k < scene.walls.size(); ++k) {
    if (k != moving_wall && standing[k]) {
      obstacles.push_back(scene.wall_obstacle(k));
    }
  }
  for (std::size_t k = 0; k < scene.obstacles.size(); ++k) {
    obstacles.push_back(scene.static_obstacle(k));
  }

  BlockedMask mask(grid.size());
  Rect probe{Pose(0.0, 0.0, transit_yaw), scene.walls[moving_wall].footprint};
  for (NodeIndex n = 0; n < grid.size(); ++n) {
    probe.pose.position = grid.position(n);
    for (const Rect& obstacle : obstacles) {
      if (rect_overlap(probe, obstacle)) {
        mask.set_blocked(n);
        break;
      }
    }
  }
  return mask;
}

BlockedMask occupancy_mask(const Grid& grid, const Scene& scene, std::string_view moving_wall,
                           double transit_yaw) {
  return occupancy_mask(grid, scene, scene.index_of(moving_wall), transit_yaw,
                        std::vector<bool>(scene.walls.size(), true));
}

std::optional<NodeIndex> snap_to_node(const Grid& grid, const BlockedMask& mask, const Vec2& p) {
  const NodeIndex home = grid.nearest(p);
  if (mask.walkable(home)) {
    return home;
  }
  std::optional<NodeIndex> best;
  double best_dist = std::numeric_limits<double>::infinity();
  const int ci = grid.col(home);
  const int cj = grid.row(home);
  // row-major scan so that equal distances resolve to the lower index
  for (int dj = -1; dj <= 1; ++dj) {
    for (int di = -1; di <= 1; ++di) {
      if ((di == 0 && dj == 0) || !grid.in_range(ci + di, cj + dj)) {
        continue;
      }
      const NodeIndex n = grid.index(ci + di, cj + dj);
      if (mask.blocked(n)) {
        continue;
      }
      const double d = (grid.position(n) - p).squaredNorm();
      if (d < best_dist) {
        best_dist = d;
        best = n;
      }
    }
  }
  return best;
}

}  // namespace prefab
