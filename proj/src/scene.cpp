#include "prefab/scene.hpp"

#include "prefab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace prefab {

namespace {

std::string pose_text(const Pose& p) {
  return "(" + std::to_string(p.x()) + ", " + std::to_string(p.y()) + ")";
}

void check_footprint(const std::string& owner, const WallFootprint& f) {
  if (!(std::isfinite(f.half_length) && f.half_length > 0.0)) {
    throw ValidationError(owner + ": half_length must be finite and > 0");
  }
  if (!(std::isfinite(f.half_thickness) && f.half_thickness > 0.0)) {
    throw ValidationError(owner + ": half_thickness must be finite and > 0");
  }
}

}  // namespace

std::size_t Scene::index_of(std::string_view wall_id) const {
  for (std::size_t i = 0; i < walls.size(); ++i) {
    if (walls[i].id == wall_id) {
      return i;
    }
  }
  throw LookupError("unknown wall id '" + std::string(wall_id) + "'");
}

Rect Scene::wall_obstacle(std::size_t index) const {
  const Wall& w = walls.at(index);
  return {w.placed, w.footprint.inflated(inflation_margin)};
}

Rect Scene::static_obstacle(std::size_t index) const {
  const StaticObstacle& o = obstacles.at(index);
  return {o.pose, o.footprint.inflated(inflation_margin)};
}

double Scene::min_half_thickness() const {
  double result = std::numeric_limits<double>::infinity();
  for (const Wall& w : walls) {
    result = std::min(result, w.footprint.half_thickness);
  }
  return result;
}

void Scene::validate() const {
  if (!(std::isfinite(bounds.width()) && std::isfinite(bounds.height())) ||
      bounds.width() <= 0.0 || bounds.height() <= 0.0) {
    throw ValidationError("bounds: world bounds must have positive, finite width and height");
  }
  if (!(std::isfinite(inflation_margin) && inflation_margin >= 0.0)) {
    throw ValidationError("inflation_margin: must be finite and >= 0");
  }

  std::set<std::string> ids;
  for (const Wall& w : walls) {
    if (w.id.empty()) {
      throw ValidationError("walls: wall id must be non-empty");
    }
    if (!ids.insert(w.id).second) {
      throw ValidationError("walls: duplicate id '" + w.id + "'");
    }
    check_footprint("wall '" + w.id + "'", w.footprint);
    if (!bounds.contains(w.placed.position)) {
      throw ValidationError("wall '" + w.id + "': placed_pose " + pose_text(w.placed) +
                            " lies outside the world bounds");
    }
    if (!bounds.contains(w.staging.position)) {
      throw ValidationError("wall '" + w.id + "': staging_pose " + pose_text(w.staging) +
                            " lies outside the world bounds");
    }
  }
  for (const StaticObstacle& o : obstacles) {
    if (o.id.empty()) {
      throw ValidationError("obstacles: obstacle id must be non-empty");
    }
    if (!ids.insert(o.id).second) {
      throw ValidationError("obstacles: duplicate id '" + o.id + "'");
    }
    check_footprint("obstacle '" + o.id + "'", o.footprint);
    if (!bounds.contains(o.pose.position)) {
      throw ValidationError("obstacle '" + o.id + "': pose lies outside the world bounds");
    }
  }

  for (std::size_t a = 0; a < walls.size(); ++a) {
    for (std::size_t b = a + 1; b < walls.size(); ++b) {
      if (rect_overlap(walls[a].placed_rect(), walls[b].placed_rect())) {
        throw ValidationError("walls '" + walls[a].id + "' and '" + walls[b].id +
                              "': placed poses overlap");
      }
      if (rect_overlap(walls[a].staging_rect(), walls[b].staging_rect())) {
        throw ValidationError("walls '" + walls[a].id + "' and '" + walls[b].id +
                              "': staging poses overlap");
      }
    }
    for (const StaticObstacle& o : obstacles) {
      if (rect_overlap(walls[a].placed_rect(), o.rect())) {
        throw ValidationError("wall '" + walls[a].id + "' placed pose overlaps obstacle '" +
                              o.id + "'");
      }
      if (rect_overlap(walls[a].staging_rect(), o.rect())) {
        throw ValidationError("wall '" + walls[a].id + "' staging pose overlaps obstacle '" +
                              o.id + "'");
      }
    }
  }
}

}  // namespace prefab
