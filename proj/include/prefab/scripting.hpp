#ifndef PREFAB_SCRIPTING_HPP
#define PREFAB_SCRIPTING_HPP

#include "prefab/planner.hpp"
#include "prefab/scene.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace prefab {

enum class EventKind { kTransport, kTiltUp, kPlace, kInstallBrace, kVerifyAngle, kRemoveBrace };

std::string_view to_string(EventKind k);
EventKind event_kind_from_string(std::string_view s);

/// One step of the LOD-300 wall erection sequence.
struct Event {
  EventKind kind = EventKind::kTransport;
  std::vector<std::string> walls;
  std::optional<double> angle_deg;    // verify_angle only
  std::optional<bool> angle_ok;       // verify_angle only
  std::optional<std::string> corner;  // final corner checks only
  std::vector<Vec2> waypoints;        // transport only

  friend bool operator==(const Event&, const Event&) = default;
};

struct EventScript {
  std::vector<Event> events;

  std::size_t count(EventKind k) const;

  friend bool operator==(const EventScript&, const EventScript&) = default;
};

struct CornerCheck {
  std::string corner_id;  // "<wall a>/<wall b>" in scene order
  std::string wall_a;
  std::string wall_b;
  double angle_deg = 0.0;
  bool pass = false;
};

constexpr double kDefaultAngleTolerance = 0.5;

/// Angle between two wall axes: |yaw difference| folded to [0, 180] degrees.
double wall_angle_deg(double yaw_a, double yaw_b);

/// Two placed walls are adjacent when an end of one lies within one wall
/// thickness of the other's footprint.
bool walls_adjacent(const Wall& a, const Wall& b);

/// Every adjacent pair of placed walls with its measured angle.
std::vector<CornerCheck> check_corner_angles(const Scene& scene,
                                             double tolerance_deg = kDefaultAngleTolerance);

/// Expands an assembly plan into transport / tilt-up / place / brace
/// cycles, running angle checks, unbracing and the final corner checks.
/// Throws PreconditionError for a disassembly plan.
EventScript generate_script(const Plan& plan, const Scene& scene,
                            double tolerance_deg = kDefaultAngleTolerance);

/// Human-readable listing, one event per line (angles in degrees).
std::string format_script(const EventScript& script);

}  // namespace prefab

#endif  // PREFAB_SCRIPTING_HPP
