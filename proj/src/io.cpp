#include "prefab/io.hpp"

#include "prefab/errors.hpp"

#include <fstream>
#include <sstream>

namespace prefab {

namespace {

const Json& field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) {
    throw ValidationError(where + ": expected an object");
  }
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ValidationError(where + "." + key + ": missing");
  }
  return *it;
}

double number(const Json& obj, const char* key, const std::string& where) {
  const Json& v = field(obj, key, where);
  if (!v.is_number()) {
    throw ValidationError(where + "." + key + ": expected a number");
  }
  return v.get<double>();
}

std::string text(const Json& obj, const char* key, const std::string& where) {
  const Json& v = field(obj, key, where);
  if (!v.is_string()) {
    throw ValidationError(where + "." + key + ": expected a string");
  }
  return v.get<std::string>();
}

const Json& array(const Json& obj, const char* key, const std::string& where) {
  const Json& v = field(obj, key, where);
  if (!v.is_array()) {
    throw ValidationError(where + "." + key + ": expected an array");
  }
  return v;
}

Json pose_to_json(const Pose& p) { return Json{{"x", p.x()}, {"y", p.y()}, {"yaw", p.yaw}}; }

Pose pose_from_json(const Json& obj, const std::string& where) {
  try {
    return Pose(number(obj, "x", where), number(obj, "y", where), number(obj, "yaw", where));
  } catch (const std::invalid_argument& e) {
    throw ValidationError(where + ": " + e.what());
  }
}

WallFootprint footprint_from_json(const Json& obj, const std::string& where) {
  const double hl = number(obj, "half_length", where);
  const double ht = number(obj, "half_thickness", where);
  if (!(hl > 0.0)) throw ValidationError(where + ".half_length: must be > 0");
  if (!(ht > 0.0)) throw ValidationError(where + ".half_thickness: must be > 0");
  return WallFootprint(hl, ht);
}

Vec2 point_from_json(const Json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw ValidationError(where + ": expected [x, y]");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

void check_schema(const Json& doc, const std::string& kind) {
  if (!doc.is_object()) {
    throw ValidationError(kind + ": document must be a JSON object");
  }
  auto it = doc.find("schema_version");
  if (it == doc.end() || !it->is_number_integer()) {
    throw ValidationError(kind + ".schema_version: missing or not an integer");
  }
  if (it->get<int>() != kSchemaVersion) {
    throw ValidationError(kind + ".schema_version: unsupported version " + it->dump());
  }
}

}  // namespace

Json scene_to_json(const Scene& scene) {
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["name"] = scene.name;
  doc["bounds"] = {{"min_x", scene.bounds.min.x()},
                   {"min_y", scene.bounds.min.y()},
                   {"max_x", scene.bounds.max.x()},
                   {"max_y", scene.bounds.max.y()}};
  doc["inflation_margin"] = scene.inflation_margin;
  Json walls = Json::array();
  for (const Wall& w : scene.walls) {
    walls.push_back({{"id", w.id},
                     {"half_length", w.footprint.half_length},
                     {"half_thickness", w.footprint.half_thickness},
                     {"placed_pose", pose_to_json(w.placed)},
                     {"staging_pose", pose_to_json(w.staging)}});
  }
  doc["walls"] = std::move(walls);
  Json obstacles = Json::array();
  for (const StaticObstacle& o : scene.obstacles) {
    obstacles.push_back({{"id", o.id},
                         {"half_length", o.footprint.half_length},
                         {"half_thickness", o.footprint.half_thickness},
                         {"pose", pose_to_json(o.pose)}});
  }
  doc["obstacles"] = std::move(obstacles);
  return doc;
}

Scene scene_from_json(const Json& doc) {
  check_schema(doc, "scene");
  Scene scene;
  if (auto it = doc.find("name"); it != doc.end()) {
    if (!it->is_string()) throw ValidationError("scene.name: expected a string");
    scene.name = it->get<std::string>();
  }
  const Json& b = field(doc, "bounds", "scene");
  scene.bounds.min = {number(b, "min_x", "scene.bounds"), number(b, "min_y", "scene.bounds")};
  scene.bounds.max = {number(b, "max_x", "scene.bounds"), number(b, "max_y", "scene.bounds")};
  if (auto it = doc.find("inflation_margin"); it != doc.end()) {
    if (!it->is_number()) throw ValidationError("scene.inflation_margin: expected a number");
    scene.inflation_margin = it->get<double>();
  }

  const Json& walls = array(doc, "walls", "scene");
  for (std::size_t i = 0; i < walls.size(); ++i) {
    const std::string where = "scene.walls[" + std::to_string(i) + "]";
    Wall w;
    w.id = text(walls[i], "id", where);
    w.footprint = footprint_from_json(walls[i], where);
    w.placed = pose_from_json(field(walls[i], "placed_pose", where), where + ".placed_pose");
    w.staging = pose_from_json(field(walls[i], "staging_pose", where), where + ".staging_pose");
    scene.walls.push_back(std::move(w));
  }
  if (auto it = doc.find("obstacles"); it != doc.end()) {
    if (!it->is_array()) throw ValidationError("scene.obstacles: expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string where = "scene.obstacles[" + std::to_string(i) + "]";
      const Json& o = (*it)[i];
      StaticObstacle obstacle;
      obstacle.id = text(o, "id", where);
      obstacle.footprint = footprint_from_json(o, where);
      obstacle.pose = pose_from_json(field(o, "pose", where), where + ".pose");
      scene.obstacles.push_back(std::move(obstacle));
    }
  }
  scene.validate();
  return scene;
}

Scene load_scene(const std::filesystem::path& path) {
  try {
    return scene_from_json(read_json(path));
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

void save_scene(const Scene& scene, const std::filesystem::path& path) {
  write_text(path, dump(scene_to_json(scene)));
}

Json script_to_json(const EventScript& script) {
  Json events = Json::array();
  for (const Event& e : script.events) {
    Json ev;
    ev["kind"] = std::string(to_string(e.kind));
    ev["walls"] = e.walls;
    if (e.angle_deg) ev["angle_deg"] = *e.angle_deg;
    if (e.angle_ok) ev["angle_ok"] = *e.angle_ok;
    if (e.corner) ev["corner"] = *e.corner;
    if (!e.waypoints.empty()) {
      Json pts = Json::array();
      for (const Vec2& p : e.waypoints) pts.push_back({p.x(), p.y()});
      ev["waypoints"] = std::move(pts);
    }
    events.push_back(std::move(ev));
  }
  return Json{{"events", std::move(events)}};
}

EventScript script_from_json(const Json& doc) {
  EventScript script;
  const Json& events = array(doc, "events", "script");
  for (std::size_t i = 0; i < events.size(); ++i) {
    const std::string where = "script.events[" + std::to_string(i) + "]";
    const Json& ev = events[i];
    Event e;
    e.kind = event_kind_from_string(text(ev, "kind", where));
    for (const Json& w : array(ev, "walls", where)) e.walls.push_back(w.get<std::string>());
    if (auto it = ev.find("angle_deg"); it != ev.end()) e.angle_deg = it->get<double>();
    if (auto it = ev.find("angle_ok"); it != ev.end()) e.angle_ok = it->get<bool>();
    if (auto it = ev.find("corner"); it != ev.end()) e.corner = it->get<std::string>();
    if (auto it = ev.find("waypoints"); it != ev.end()) {
      for (const Json& p : *it) e.waypoints.push_back(point_from_json(p, where + ".waypoints"));
    }
    script.events.push_back(std::move(e));
  }
  return script;
}

Json plan_to_json(const Plan& plan, const EventScript* script) {
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["direction"] = std::string(to_string(plan.direction));
  doc["grid_radius"] = plan.grid_radius;
  doc["wall_order"] = plan.wall_order();
  Json moves = Json::array();
  for (const MovePlan& m : plan.moves) {
    Json pts = Json::array();
    for (const Vec2& p : m.waypoints) pts.push_back({p.x(), p.y()});
    moves.push_back({{"wall_id", m.wall_id},
                     {"start_pose", pose_to_json(m.start_pose)},
                     {"target_pose", pose_to_json(m.target_pose)},
                     {"transit_yaw", m.transit_yaw},
                     {"path_cost", m.path_cost},
                     {"nodes", m.nodes},
                     {"waypoints", std::move(pts)}});
  }
  doc["moves"] = std::move(moves);
  Json log = Json::array();
  for (const Deferral& d : plan.deferral_log) {
    log.push_back({{"wall_id", d.wall_id}, {"reason", std::string(to_string(d.reason))}});
  }
  doc["deferral_log"] = std::move(log);
  if (script != nullptr) {
    doc["script"] = script_to_json(*script);
  }
  return doc;
}

Plan plan_from_json(const Json& doc) {
  check_schema(doc, "plan");
  Plan plan;
  plan.direction = direction_from_string(text(doc, "direction", "plan"));
  plan.grid_radius = number(doc, "grid_radius", "plan");
  const Json& moves = array(doc, "moves", "plan");
  for (std::size_t i = 0; i < moves.size(); ++i) {
    const std::string where = "plan.moves[" + std::to_string(i) + "]";
    const Json& mj = moves[i];
    MovePlan m;
    m.wall_id = text(mj, "wall_id", where);
    m.start_pose = pose_from_json(field(mj, "start_pose", where), where + ".start_pose");
    m.target_pose = pose_from_json(field(mj, "target_pose", where), where + ".target_pose");
    m.transit_yaw = number(mj, "transit_yaw", where);
    m.path_cost = number(mj, "path_cost", where);
    if (auto it = mj.find("nodes"); it != mj.end()) {
      m.nodes = it->get<std::vector<NodeIndex>>();
    }
    for (const Json& p : array(mj, "waypoints", where)) {
      m.waypoints.push_back(point_from_json(p, where + ".waypoints"));
    }
    plan.moves.push_back(std::move(m));
  }
  if (auto it = doc.find("deferral_log"); it != doc.end()) {
    for (const Json& d : *it) {
      plan.deferral_log.push_back({text(d, "wall_id", "plan.deferral_log"),
                                   deferral_reason_from_string(text(d, "reason", "plan.deferral_log"))});
    }
  }
  return plan;
}

Plan load_plan(const std::filesystem::path& path) {
  try {
    return plan_from_json(read_json(path));
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

Json report_to_json(const VerificationReport& report) {
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["plan_id"] = report.plan_id;
  doc["sample_step"] = report.sample_step;
  doc["verdict"] = std::string(to_string(report.verdict));
  doc["violation_count"] = report.violations.size();
  Json list = Json::array();
  for (const Violation& v : report.violations) {
    list.push_back({{"move_index", v.move_index},
                    {"segment_index", v.segment_index},
                    {"sample_pose", pose_to_json(v.sample_pose)},
                    {"obstacle_id", v.obstacle_id}});
  }
  doc["violations"] = std::move(list);
  return doc;
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

void write_text(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open '" + path.string() + "' for writing");
  }
  out << content;
  out.flush();
  if (!out) {
    throw IoError("failed writing '" + path.string() + "'");
  }
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open '" + path.string() + "'");
  }
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ValidationError(std::string("parse error: ") + e.what());
  }
}

std::size_t export_plan(const Plan& plan, const EventScript* script,
                        const std::filesystem::path& path, ExportFormat format,
                        const Scene* scene) {
  if (format == ExportFormat::kJson) {
    write_text(path, dump(plan_to_json(plan, script)));
    return 1;
  }
  if (scene == nullptr) {
    throw PreconditionError("svg frame export needs the scene");
  }
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec) {
    throw IoError("cannot create directory '" + path.string() + "': " + ec.message());
  }
  const std::vector<std::string> frames = render_frames(*scene, plan);
  for (std::size_t i = 0; i < frames.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "frame_%05zu.svg", i);
    write_text(path / name, frames[i]);
  }
  return frames.size();
}

}  // namespace prefab
