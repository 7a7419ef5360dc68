#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace asid::mission {

enum class CommandKind {
  Takeoff,
  Waypoint,
  ConditionYaw,
  Delay,
  DoDigicamControl,
  Land,
};

std::string_view to_string(CommandKind kind);
std::optional<CommandKind> parse_command_kind(std::string_view name);

/// One autopilot command. Parameter meaning by kind:
///   WAYPOINT          p1 = hold time at the waypoint, s
///   CONDITION_YAW     p1 = heading, deg [0, 360)
///   DELAY             p1 = duration, s
struct MissionCommand {
  CommandKind kind = CommandKind::Waypoint;
  std::array<double, 4> params{};
  double lat_deg = 0.0;
  double lon_deg = 0.0;
  double alt_m = 0.0;  // AGL

  bool operator==(const MissionCommand&) const = default;
};

struct GeoPoint {
  double lat_deg = 0.0;
  double lon_deg = 0.0;

  bool operator==(const GeoPoint&) const = default;
};

struct MissionPlan {
  GeoPoint home;
  std::vector<MissionCommand> commands;

  double max_altitude() const;
  bool operator==(const MissionPlan&) const = default;
};

struct SoundingParams {
  double target_alt_m = 40.0;
  double start_alt_m = 10.0;
  double step_m = 10.0;
  std::vector<double> headings_deg = {90.0, 180.0, 270.0, 0.0};
  double capture_dwell_s = 3.0;
  GeoPoint home{38.1825152, 21.7026906};
};

/// Photographic sounding: take off to the start level, photograph the horizon
/// at every heading on every level, climb by `step_m` until the target, then
/// descend to the start level and land.
MissionPlan generate_sounding_profile(const SoundingParams& params);

/// Altitude levels visited by generate_sounding_profile.
std::vector<double> sounding_levels(double target_alt_m, double start_alt_m, double step_m);

std::size_t capture_count(const MissionPlan& plan);

struct Violation {
  static constexpr std::size_t kPlanLevel = static_cast<std::size_t>(-1);

  std::size_t command_index = kPlanLevel;  // 0-based
  std::string message;
};

/// Empty iff the plan is well-ordered, every command satisfies its parameter
/// invariants and no altitude exceeds `ceiling_m`.
std::vector<Violation> validate(const MissionPlan& plan, double ceiling_m);

inline constexpr std::string_view kMissionHeader = "command,p1,p2,p3,p4,lat,lon,alt";

/// Mission file text: header line, optional `# home,<lat>,<lon>` line, then one
/// comma-separated row per command.
std::string serialize(const MissionPlan& plan);

/// Throws ParseError carrying the 1-based line number of the offending row.
MissionPlan parse(std::string_view text);

}  // namespace asid::mission
