#ifndef PREFAB_GRID_HPP
#define PREFAB_GRID_HPP

#include "prefab/scene.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace prefab {

using NodeIndex = std::size_t;

/// A* bookkeeping for one node: f = g + h once both are set.
struct GridNode {
  int i = 0;
  int j = 0;
  double g = 0.0;
  double h = 0.0;
  double f = 0.0;
  std::optional<NodeIndex> parent;
  bool opened = false;
  bool closed = false;
};

/// Uniform node lattice over the world. Node (i, j) sits at
/// origin + ((i + 0.5) * pitch, (j + 0.5) * pitch) with pitch = 2 * radius;
/// nodes are numbered row-major (j * cols + i).
class Grid {
 public:
  Grid(const Bounds& world, double radius);

  const Vec2& origin() const { return origin_; }
  double radius() const { return radius_; }
  double pitch() const { return 2.0 * radius_; }
  int cols() const { return cols_; }
  int rows() const { return rows_; }
  std::size_t size() const { return static_cast<std::size_t>(cols_) * rows_; }

  bool in_range(int i, int j) const { return i >= 0 && j >= 0 && i < cols_ && j < rows_; }
  NodeIndex index(int i, int j) const { return static_cast<NodeIndex>(j) * cols_ + i; }
  int col(NodeIndex n) const { return static_cast<int>(n % cols_); }
  int row(NodeIndex n) const { return static_cast<int>(n / cols_); }

  Vec2 position(int i, int j) const {
    return origin_ + Vec2((i + 0.5) * pitch(), (j + 0.5) * pitch());
  }
  Vec2 position(NodeIndex n) const { return position(col(n), row(n)); }

  /// The node whose cell contains p (clamped to the lattice).
  NodeIndex nearest(const Vec2& p) const;

 private:
  Vec2 origin_;
  double radius_;
  int cols_;
  int rows_;
};

/// Validating constructor: radius > 0 and non-degenerate bounds.
Grid build_grid(const Bounds& world, double radius);

/// Per-mover walkability layer; true = the mover cannot stand on the node.
class BlockedMask {
 public:
  BlockedMask() = default;
  explicit BlockedMask(std::size_t size) : bits_(size, 0) {}

  std::size_t size() const { return bits_.size(); }
  bool blocked(NodeIndex n) const { return bits_[n] != 0; }
  bool walkable(NodeIndex n) const { return bits_[n] == 0; }
  void set_blocked(NodeIndex n, bool value = true) { bits_[n] = value ? 1 : 0; }
  std::size_t blocked_count() const;

  friend bool operator==(const BlockedMask&, const BlockedMask&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// Blocks every node at which the moving wall (at `transit_yaw`) would
/// overlap a standing wall or a static obstacle. The mover never blocks
/// itself. `standing[k]` says whether wall k is still on the site.
BlockedMask occupancy_mask(const Grid& grid, const Scene& scene, std::size_t moving_wall,
                           double transit_yaw, const std::vector<bool>& standing);

/// Same, with every wall standing. Throws LookupError for unknown ids.
BlockedMask occupancy_mask(const Grid& grid, const Scene& scene, std::string_view moving_wall,
                           double transit_yaw);

/// Nearest node to p if walkable, otherwise the closest walkable node of
/// its 8 neighbours (ties to the lower index), otherwise nothing.
std::optional<NodeIndex> snap_to_node(const Grid& grid, const BlockedMask& mask, const Vec2& p);

}  // namespace prefab

#endif  // PREFAB_GRID_HPP
