#include "asid/mission.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

#include "asid/error.hpp"

namespace asid::mission {

namespace {

struct KindName {
  CommandKind kind;
  std::string_view name;
};

constexpr std::array<KindName, 6> kKindNames = {{
    {CommandKind::Takeoff, "TAKEOFF"},
    {CommandKind::Waypoint, "WAYPOINT"},
    {CommandKind::ConditionYaw, "CONDITION_YAW"},
    {CommandKind::Delay, "DELAY"},
    {CommandKind::DoDigicamControl, "DO_DIGICAM_CONTROL"},
    {CommandKind::Land, "LAND"},
}};

constexpr std::string_view kHomePrefix = "# home,";
constexpr double kLandingDelayS = 3.0;

std::string format_number(double value) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), end);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_number(std::string_view field, std::size_t row, std::string_view column) {
  double value = 0.0;
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(value)) {
    throw ParseError(row, "column '" + std::string(column) + "' is not a number: '" +
                              std::string(field) + "'");
  }
  return value;
}

MissionCommand make(CommandKind kind, double p1, double lat, double lon, double alt,
                    double p3 = 0.0) {
  MissionCommand cmd;
  cmd.kind = kind;
  cmd.params = {p1, 0.0, p3, 0.0};
  cmd.lat_deg = lat;
  cmd.lon_deg = lon;
  cmd.alt_m = alt;
  return cmd;
}

}  // namespace

std::string_view to_string(CommandKind kind) {
  for (const auto& entry : kKindNames) {
    if (entry.kind == kind) return entry.name;
  }
  return "UNKNOWN";
}

std::optional<CommandKind> parse_command_kind(std::string_view name) {
  for (const auto& entry : kKindNames) {
    if (entry.name == name) return entry.kind;
  }
  return std::nullopt;
}

double MissionPlan::max_altitude() const {
  double highest = 0.0;
  for (const auto& cmd : commands) highest = std::max(highest, cmd.alt_m);
  return highest;
}

std::vector<double> sounding_levels(double target_alt_m, double start_alt_m, double step_m) {
  if (!(step_m > 0.0)) throw DomainError("level step must be > 0");
  if (!(start_alt_m > 0.0)) throw DomainError("start altitude must be > 0");
  if (start_alt_m > target_alt_m) {
    throw DomainError("start altitude exceeds the target altitude");
  }
  std::vector<double> levels;
  for (std::size_t i = 0;; ++i) {
    const double level = start_alt_m + static_cast<double>(i) * step_m;
    if (level >= target_alt_m) {
      levels.push_back(target_alt_m);
      break;
    }
    levels.push_back(level);
  }
  return levels;
}

MissionPlan generate_sounding_profile(const SoundingParams& params) {
  const auto levels = sounding_levels(params.target_alt_m, params.start_alt_m, params.step_m);
  if (!(params.capture_dwell_s >= 0.0)) throw DomainError("capture dwell must be >= 0");

  std::vector<double> headings;
  for (double h : params.headings_deg) {
    if (!(h >= 0.0 && h <= 360.0)) throw DomainError("heading must lie in [0, 360]");
    headings.push_back(h == 360.0 ? 0.0 : h);
  }

  const auto [lat, lon] = params.home;
  MissionPlan plan;
  plan.home = params.home;
  auto& out = plan.commands;

  out.push_back(make(CommandKind::Takeoff, 0.0, lat, lon, levels.front()));
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (i > 0) out.push_back(make(CommandKind::Waypoint, 1.0, lat, lon, levels[i]));
    for (double heading : headings) {
      out.push_back(make(CommandKind::ConditionYaw, heading, 0.0, 0.0, 0.0, 1.0));
      out.push_back(make(CommandKind::Delay, 1.0, 0.0, 0.0, 0.0));
      out.push_back(make(CommandKind::DoDigicamControl, 0.0, lat, lon, levels[i]));
      out.push_back(make(CommandKind::Delay, params.capture_dwell_s, 0.0, 0.0, 0.0));
    }
  }
  out.push_back(make(CommandKind::Waypoint, 1.0, lat, lon, params.start_alt_m));
  out.push_back(make(CommandKind::Delay, kLandingDelayS, 0.0, 0.0, 0.0));
  out.push_back(make(CommandKind::Land, 0.0, lat, lon, 0.0));
  return plan;
}

std::size_t capture_count(const MissionPlan& plan) {
  return static_cast<std::size_t>(
      std::count_if(plan.commands.begin(), plan.commands.end(), [](const MissionCommand& c) {
        return c.kind == CommandKind::DoDigicamControl;
      }));
}

std::vector<Violation> validate(const MissionPlan& plan, double ceiling_m) {
  std::vector<Violation> out;
  const auto& cmds = plan.commands;
  if (cmds.empty()) {
    out.push_back({Violation::kPlanLevel, "plan has no commands"});
    return out;
  }
  if (cmds.front().kind != CommandKind::Takeoff) {
    out.push_back({0, "first command must be TAKEOFF"});
  }
  if (cmds.back().kind != CommandKind::Land) {
    out.push_back({cmds.size() - 1, "last command must be LAND"});
  }

  for (std::size_t i = 0; i < cmds.size(); ++i) {
    const auto& c = cmds[i];
    const bool finite = std::all_of(c.params.begin(), c.params.end(),
                                    [](double p) { return std::isfinite(p); }) &&
                        std::isfinite(c.lat_deg) && std::isfinite(c.lon_deg) &&
                        std::isfinite(c.alt_m);
    if (!finite) {
      out.push_back({i, "non-finite parameter"});
      continue;
    }
    if (c.alt_m < 0.0) out.push_back({i, "altitude below ground"});
    if (c.alt_m > ceiling_m) {
      out.push_back({i, "altitude " + format_number(c.alt_m) + " m above ceiling " +
                            format_number(ceiling_m) + " m"});
    }
    if (c.kind == CommandKind::Takeoff && i != 0) {
      out.push_back({i, "TAKEOFF only allowed as the first command"});
    }
    if (c.kind == CommandKind::Takeoff && !(c.alt_m > 0.0)) {
      out.push_back({i, "TAKEOFF altitude must be above ground"});
    }
    if (c.kind == CommandKind::Land && i + 1 != cmds.size()) {
      out.push_back({i, "LAND only allowed as the last command"});
    }
    if (c.kind == CommandKind::ConditionYaw && !(c.params[0] >= 0.0 && c.params[0] < 360.0)) {
      out.push_back({i, "CONDITION_YAW heading must lie in [0, 360)"});
    }
    if ((c.kind == CommandKind::Delay || c.kind == CommandKind::Waypoint) &&
        c.params[0] < 0.0) {
      out.push_back({i, "negative delay"});
    }
  }
  return out;
}

std::string serialize(const MissionPlan& plan) {
  std::string out(kMissionHeader);
  out += '\n';
  out += kHomePrefix;
  out += format_number(plan.home.lat_deg) + "," + format_number(plan.home.lon_deg) + "\n";
  for (const auto& c : plan.commands) {
    out += to_string(c.kind);
    for (double p : c.params) out += "," + format_number(p);
    out += "," + format_number(c.lat_deg) + "," + format_number(c.lon_deg) + "," +
           format_number(c.alt_m) + "\n";
  }
  return out;
}

MissionPlan parse(std::string_view text) {
  static constexpr std::array<std::string_view, 8> kColumns = {
      "command", "p1", "p2", "p3", "p4", "lat", "lon", "alt"};

  MissionPlan plan;
  bool header_seen = false;
  std::size_t row = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const auto line = trim(text.substr(start, end - start));
    start = end + 1;
    ++row;
    if (line.empty()) continue;

    if (!header_seen) {
      if (line != kMissionHeader) {
        throw ParseError(row, "expected header '" + std::string(kMissionHeader) + "'");
      }
      header_seen = true;
      continue;
    }
    if (line.starts_with(kHomePrefix)) {
      const auto fields = split(line.substr(kHomePrefix.size()), ',');
      if (fields.size() != 2) throw ParseError(row, "home line needs lat,lon");
      plan.home = {parse_number(fields[0], row, "lat"), parse_number(fields[1], row, "lon")};
      continue;
    }
    if (line.front() == '#') continue;

    const auto fields = split(line, ',');
    if (fields.size() != kColumns.size()) {
      throw ParseError(row, "expected 8 columns, found " + std::to_string(fields.size()));
    }
    const auto kind = parse_command_kind(fields[0]);
    if (!kind) throw ParseError(row, "unknown command '" + std::string(fields[0]) + "'");
    MissionCommand cmd;
    cmd.kind = *kind;
    for (std::size_t p = 0; p < 4; ++p) {
      cmd.params[p] = parse_number(fields[p + 1], row, kColumns[p + 1]);
    }
    cmd.lat_deg = parse_number(fields[5], row, "lat");
    cmd.lon_deg = parse_number(fields[6], row, "lon");
    cmd.alt_m = parse_number(fields[7], row, "alt");
    plan.commands.push_back(cmd);
  }
  if (!header_seen) throw ParseError(0, "mission file has no header line");
  return plan;
}

}  // namespace asid::mission
