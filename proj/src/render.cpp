#include "prefab/io.hpp"

#include <cstdio>
#include <string>

namespace prefab {

namespace {

void append(std::string& out, const char* fmt, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, fmt, args...);
  out += buf;
}

void polygon(std::string& out, const Rect& r, const char* fill, const char* stroke) {
  out += "<polygon points=\"";
  for (const Vec2& c : r.corners()) {
    append(out, "%.4f,%.4f ", c.x(), c.y());
  }
  append(out, "\" fill=\"%s\" stroke=\"%s\" stroke-width=\"0.05\"/>\n", fill, stroke);
}

}  // namespace

std::vector<std::string> render_frames(const Scene& scene, const Plan& plan) {
  std::vector<bool> standing(scene.walls.size(), true);
  std::vector<Pose> pose;
  for (const Wall& w : scene.walls) pose.push_back(w.placed);
  if (plan.direction == Direction::kAssembly) {
    for (const MovePlan& m : plan.moves) standing[scene.index_of(m.wall_id)] = false;
  }

  const Bounds& b = scene.bounds;
  std::vector<std::string> frames;
  frames.reserve(plan.waypoint_count());
  for (std::size_t mi = 0; mi < plan.moves.size(); ++mi) {
    const MovePlan& move = plan.moves[mi];
    const std::size_t mover = scene.index_of(move.wall_id);
    for (std::size_t wi = 0; wi < move.waypoints.size(); ++wi) {
      std::string svg;
      append(svg,
             "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"%.4f %.4f %.4f %.4f\" "
             "width=\"800\" height=\"%d\">\n",
             b.min.x(), -b.max.y(), b.width(), b.height(),
             static_cast<int>(800.0 * b.height() / b.width()));
      append(svg, "<title>move %zu (%s) waypoint %zu/%zu</title>\n", mi, move.wall_id.c_str(),
             wi + 1, move.waypoints.size());
      // world y points up; SVG y points down
      svg += "<g transform=\"scale(1,-1)\">\n";
      append(svg,
             "<rect x=\"%.4f\" y=\"%.4f\" width=\"%.4f\" height=\"%.4f\" fill=\"#fafafa\" "
             "stroke=\"#333\" stroke-width=\"0.1\"/>\n",
             b.min.x(), b.min.y(), b.width(), b.height());
      for (std::size_t k = 0; k < scene.obstacles.size(); ++k) {
        polygon(svg, scene.obstacles[k].rect(), "#999", "#555");
      }
      for (std::size_t k = 0; k < scene.walls.size(); ++k) {
        if (k == mover || !standing[k]) continue;
        polygon(svg, {pose[k], scene.walls[k].footprint}, "#4a6fa5", "#1d3557");
      }
      svg += "<polyline fill=\"none\" stroke=\"#e63946\" stroke-width=\"0.05\" "
             "stroke-dasharray=\"0.2,0.1\" points=\"";
      for (const Vec2& p : move.waypoints) append(svg, "%.4f,%.4f ", p.x(), p.y());
      svg += "\"/>\n";
      polygon(svg, {Pose(move.waypoints[wi], move.transit_yaw), scene.walls[mover].footprint},
              "#e63946", "#9d0208");
      svg += "</g>\n</svg>\n";
      frames.push_back(std::move(svg));
    }
    if (plan.direction == Direction::kDisassembly) {
      standing[mover] = false;
    } else {
      standing[mover] = true;
      pose[mover] = move.target_pose;
    }
  }
  return frames;
}

}  // namespace prefab
