#ifndef PREFAB_SCENE_HPP
#define PREFAB_SCENE_HPP

#include "prefab/geometry.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace prefab {

/// Axis-aligned world rectangle.
struct Bounds {
  Vec2 min = Vec2::Zero();
  Vec2 max = Vec2::Zero();

  double width() const { return max.x() - min.x(); }
  double height() const { return max.y() - min.y(); }
  bool contains(const Vec2& p) const {
    return p.x() >= min.x() && p.x() <= max.x() && p.y() >= min.y() && p.y() <= max.y();
  }

  friend bool operator==(const Bounds& a, const Bounds& b) {
    return a.min == b.min && a.max == b.max;
  }
};

/// A prefabricated wall panel: plan-view footprint, its installed pose and
/// the pose it occupies in the staging area around the site.
struct Wall {
  std::string id;
  WallFootprint footprint;
  Pose placed;
  Pose staging;

  Rect placed_rect() const { return {placed, footprint}; }
  Rect staging_rect() const { return {staging, footprint}; }

  friend bool operator==(const Wall&, const Wall&) = default;
};

/// Anything on site that never moves (columns, stored material, ...).
struct StaticObstacle {
  std::string id;
  WallFootprint footprint;
  Pose pose;

  Rect rect() const { return {pose, footprint}; }

  friend bool operator==(const StaticObstacle&, const StaticObstacle&) = default;
};

struct Scene {
  std::string name;
  Bounds bounds;
  double inflation_margin = 0.0;
  std::vector<Wall> walls;
  std::vector<StaticObstacle> obstacles;

  /// Throws LookupError for unknown ids.
  std::size_t index_of(std::string_view wall_id) const;
  const Wall& wall(std::string_view wall_id) const { return walls[index_of(wall_id)]; }

  /// Obstacle rectangle for a standing wall at its placed pose, including
  /// the inflation margin.
  Rect wall_obstacle(std::size_t index) const;
  Rect static_obstacle(std::size_t index) const;

  double min_half_thickness() const;

  /// Checks every scene invariant; throws ValidationError naming the
  /// offending field or wall ids.
  void validate() const;

  friend bool operator==(const Scene&, const Scene&) = default;
};

}  // namespace prefab

#endif  // PREFAB_SCENE_HPP
