#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "asid/airframe.hpp"
#include "asid/firmware.hpp"
#include "asid/flightsim.hpp"
#include "asid/mission.hpp"

namespace asid {

struct SimulationParams {
  double dt_s = 0.01;
};

struct SizingParams {
  double design_altitude_m = 6096.0;  // 20,000 ft
  double thrust_margin = 1.5;         // target thrust over weight at altitude
  double flight_minutes = 10.0;
  double usable_fraction = 0.8;
};

/// Everything one pipeline run needs. Loaded from a JSON document whose
/// sections mirror the members below; omitted keys keep their defaults.
struct RunConfig {
  airframe::AirframeConfig airframe;
  flightsim::Environment environment;
  firmware::FirmwareConfig firmware;
  mission::SoundingParams mission;
  std::optional<double> mission_ceiling_m;  // operator limit below the service ceiling
  SimulationParams simulation;
  SizingParams sizing;

  /// ConfigError on the first violated invariant.
  void validate() const;
};

/// The golden configuration: reference airframe, calm linear-lapse
/// atmosphere, zero noise, and a station calibrated at elevation 0.
RunConfig default_run_config();

/// ConfigError on malformed JSON, wrong types, unknown keys or invalid values.
RunConfig parse_run_config(std::string_view json_text);
RunConfig load_run_config(const std::filesystem::path& path);

std::string to_json(const RunConfig& cfg);

}  // namespace asid
