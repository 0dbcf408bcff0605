#ifndef PREFAB_IO_HPP
#define PREFAB_IO_HPP

// JSON file formats for scenes, plans, event scripts and verification
// reports, plus SVG frame export. Lengths are metres and angles radians in
// every file.

#include "prefab/planner.hpp"
#include "prefab/scene.hpp"
#include "prefab/scripting.hpp"
#include "prefab/verifier.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace prefab {

using Json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

Json scene_to_json(const Scene& scene);
/// Parses and validates; errors name the offending field.
Scene scene_from_json(const Json& doc);
Scene load_scene(const std::filesystem::path& path);
void save_scene(const Scene& scene, const std::filesystem::path& path);

Json script_to_json(const EventScript& script);
EventScript script_from_json(const Json& doc);

Json plan_to_json(const Plan& plan, const EventScript* script = nullptr);
Plan plan_from_json(const Json& doc);
Plan load_plan(const std::filesystem::path& path);

Json report_to_json(const VerificationReport& report);

enum class ExportFormat { kJson, kSvgFrames };

/// kJson writes one document to `path`. kSvgFrames treats `path` as a
/// directory and writes frame_NNNNN.svg per waypoint (needs the scene).
/// Returns the number of files written.
std::size_t export_plan(const Plan& plan, const EventScript* script,
                        const std::filesystem::path& path, ExportFormat format,
                        const Scene* scene = nullptr);

/// Serialised text exactly as written to disk (2-space indent, trailing newline).
std::string dump(const Json& doc);
void write_text(const std::filesystem::path& path, const std::string& text);
Json read_json(const std::filesystem::path& path);

/// One SVG document per waypoint across all moves, in plan order.
std::vector<std::string> render_frames(const Scene& scene, const Plan& plan);

}  // namespace prefab

#endif  // PREFAB_IO_HPP
