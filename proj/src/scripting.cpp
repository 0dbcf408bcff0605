#include "prefab/scripting.hpp"

#include "prefab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace prefab {

std::string_view to_string(EventKind k) {
  switch (k) {
    case EventKind::kTransport: return "transport";
    case EventKind::kTiltUp: return "tilt_up";
    case EventKind::kPlace: return "place";
    case EventKind::kInstallBrace: return "install_brace";
    case EventKind::kVerifyAngle: return "verify_angle";
    case EventKind::kRemoveBrace: return "remove_brace";
  }
  return "transport";
}

EventKind event_kind_from_string(std::string_view s) {
  for (EventKind k : {EventKind::kTransport, EventKind::kTiltUp, EventKind::kPlace,
                      EventKind::kInstallBrace, EventKind::kVerifyAngle, EventKind::kRemoveBrace}) {
    if (to_string(k) == s) return k;
  }
  throw ValidationError("unknown event kind '" + std::string(s) + "'");
}

std::size_t EventScript::count(EventKind k) const {
  return static_cast<std::size_t>(
      std::count_if(events.begin(), events.end(), [k](const Event& e) { return e.kind == k; }));
}

double wall_angle_deg(double yaw_a, double yaw_b) {
  double deg = std::abs(yaw_a - yaw_b) * 180.0 / std::numbers::pi;
  deg = std::fmod(deg, 360.0);
  return deg > 180.0 ? 360.0 - deg : deg;
}

bool walls_adjacent(const Wall& a, const Wall& b) {
  const double thickness = 2.0 * std::max(a.footprint.half_thickness, b.footprint.half_thickness);
  const Rect ra = a.placed_rect();
  const Rect rb = b.placed_rect();
  for (const Vec2& end : ra.end_points()) {
    if (point_rect_distance(end, rb) <= thickness) return true;
  }
  for (const Vec2& end : rb.end_points()) {
    if (point_rect_distance(end, ra) <= thickness) return true;
  }
  return false;
}

std::vector<CornerCheck> check_corner_angles(const Scene& scene, double tolerance_deg) {
  std::vector<CornerCheck> corners;
  for (std::size_t a = 0; a < scene.walls.size(); ++a) {
    for (std::size_t b = a + 1; b < scene.walls.size(); ++b) {
      const Wall& wa = scene.walls[a];
      const Wall& wb = scene.walls[b];
      if (!walls_adjacent(wa, wb)) continue;
      CornerCheck c;
      c.wall_a = wa.id;
      c.wall_b = wb.id;
      c.corner_id = wa.id + "/" + wb.id;
      c.angle_deg = wall_angle_deg(wa.placed.yaw, wb.placed.yaw);
      c.pass = std::abs(c.angle_deg - 90.0) <= tolerance_deg;
      corners.push_back(std::move(c));
    }
  }
  return corners;
}

EventScript generate_script(const Plan& plan, const Scene& scene, double tolerance_deg) {
  if (plan.direction != Direction::kAssembly) {
    throw PreconditionError("event scripts are generated from assembly plans only");
  }
  EventScript script;
  std::vector<std::size_t> placed;  // scene indices in placement order

  for (const MovePlan& move : plan.moves) {
    const std::size_t k = scene.index_of(move.wall_id);
    Event transport{EventKind::kTransport, {move.wall_id}, {}, {}, {}, move.waypoints};
    script.events.push_back(std::move(transport));
    script.events.push_back({EventKind::kTiltUp, {move.wall_id}, {}, {}, {}, {}});
    script.events.push_back({EventKind::kPlace, {move.wall_id}, {}, {}, {}, {}});
    script.events.push_back({EventKind::kInstallBrace, {move.wall_id}, {}, {}, {}, {}});

    if (!placed.empty()) {
      // most recently placed adjacent wall, else simply the previous one
      std::size_t partner = placed.back();
      for (auto it = placed.rbegin(); it != placed.rend(); ++it) {
        if (walls_adjacent(scene.walls[k], scene.walls[*it])) {
          partner = *it;
          break;
        }
      }
      const double angle = wall_angle_deg(move.target_pose.yaw, scene.walls[partner].placed.yaw);
      script.events.push_back({EventKind::kVerifyAngle,
                               {scene.walls[partner].id, move.wall_id},
                               angle,
                               std::abs(angle - 90.0) <= tolerance_deg,
                               {},
                               {}});
    }
    placed.push_back(k);
  }

  for (std::size_t k : placed) {
    script.events.push_back({EventKind::kRemoveBrace, {scene.walls[k].id}, {}, {}, {}, {}});
  }

  // Final corner checks over the walls this plan erected.
  Scene erected;
  erected.bounds = scene.bounds;
  std::vector<std::size_t> sorted = placed;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k : sorted) {
    erected.walls.push_back(scene.walls[k]);
  }
  for (const CornerCheck& c : check_corner_angles(erected, tolerance_deg)) {
    script.events.push_back(
        {EventKind::kVerifyAngle, {c.wall_a, c.wall_b}, c.angle_deg, c.pass, c.corner_id, {}});
  }
  return script;
}

std::string format_script(const EventScript& script) {
  std::string out;
  char buf[160];
  for (std::size_t i = 0; i < script.events.size(); ++i) {
    const Event& e = script.events[i];
    std::string walls;
    for (const std::string& w : e.walls) {
      walls += (walls.empty() ? "" : ", ") + w;
    }
    std::snprintf(buf, sizeof buf, "%3zu  %-13s %s", i + 1, std::string(to_string(e.kind)).c_str(),
                  walls.c_str());
    out += buf;
    if (e.kind == EventKind::kTransport) {
      std::snprintf(buf, sizeof buf, "  (%zu waypoints)", e.waypoints.size());
      out += buf;
    }
    if (e.angle_deg) {
      std::snprintf(buf, sizeof buf, "  %.2f deg %s", *e.angle_deg,
                    e.angle_ok.value_or(false) ? "ok" : "FAIL");
      out += buf;
    }
    if (e.corner) {
      out += "  corner " + *e.corner;
    }
    out += '\n';
  }
  return out;
}

}  // namespace prefab
