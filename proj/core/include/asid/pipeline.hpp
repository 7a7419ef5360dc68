#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "asid/firmware.hpp"
#include "asid/flightsim.hpp"
#include "asid/mission.hpp"
#include "asid/run_config.hpp"
#include "asid/sdcard.hpp"

namespace asid {

struct SimulationOutput {
  mission::MissionPlan plan;
  flightsim::Trajectory trajectory;
  firmware::SdCardImage sd;
  firmware::FirmwareState station;
  std::vector<firmware::Effect> effects;
  std::int64_t takeoff_ms = 0;  // station clock when the aircraft leaves the pad
};

/// Mission -> flight -> station. The station logs its ground samples on the
/// pad, the aircraft takes off once it switches to air logging, and the
/// station then sees one reading per trajectory sample.
/// SimulationError when the plan is invalid or exceeds the ceiling.
SimulationOutput simulate(const RunConfig& cfg,
                          const std::optional<mission::MissionPlan>& plan = std::nullopt);

/// Writes the SD image (ground.csv, air.csv, photos.json) plus trajectory.csv.
void write_simulation(const SimulationOutput& out, const std::filesystem::path& dir);

}  // namespace asid
