#include "asid/pipeline.hpp"

#include <cmath>
#include <fstream>

#include "asid/error.hpp"

namespace asid {

namespace {

// Ticks granted after touchdown so a pending server start can still happen.
constexpr std::int64_t kAfterLandingMs = 10000;
// Upper bound on the pad phase; only reachable when every ground write fails.
constexpr std::int64_t kMaxGroundMs = 600000;

}  // namespace

SimulationOutput simulate(const RunConfig& cfg, const std::optional<mission::MissionPlan>& plan) {
  cfg.validate();
  SimulationOutput out;
  out.plan = plan ? *plan : mission::generate_sounding_profile(cfg.mission);

  if (cfg.mission_ceiling_m) {
    const auto violations = mission::validate(out.plan, *cfg.mission_ceiling_m);
    if (!violations.empty()) {
      throw SimulationError("mission rejected against the configured ceiling: " +
                            violations.front().message);
    }
  }
  out.trajectory = flightsim::run_mission(out.plan, cfg.airframe, cfg.environment,
                                          cfg.simulation.dt_s);

  flightsim::SensorRng rng(cfg.environment.rng_seed);
  const auto first = flightsim::true_sample(cfg.environment, 0.0, rng);
  firmware::WeatherStation station(cfg.firmware, first.pressure_pa);

  auto run_tick = [&](double altitude_m, std::int64_t clock_ms) {
    const auto reading = flightsim::true_sample(cfg.environment, altitude_m, rng);
    auto effects = station.tick(reading, clock_ms, out.sd);
    out.effects.insert(out.effects.end(), effects.begin(), effects.end());
  };

  // On the pad nothing changes between station wake-ups, so jump between them.
  std::int64_t clock = station.state().busy_until_ms;
  while (station.state().phase == firmware::Phase::Ground) {
    if (clock > kMaxGroundMs) throw SimulationError("station never finished its ground samples");
    run_tick(0.0, clock);
    clock = station.state().busy_until_ms;
  }
  out.takeoff_ms = clock;

  std::int64_t last = clock;
  for (const auto& s : out.trajectory.samples) {
    last = out.takeoff_ms + std::llround(s.t_s * 1000.0);
    run_tick(s.altitude_m, last);
  }
  const auto dt_ms = std::max<std::int64_t>(1, std::llround(cfg.simulation.dt_s * 1000.0));
  for (std::int64_t t = last + dt_ms; t <= last + kAfterLandingMs; t += dt_ms) run_tick(0.0, t);

  out.sd.write(firmware::kPhotosFile,
               flightsim::camera_manifest_json(out.trajectory.camera_events));
  out.station = station.state();
  return out;
}

void write_simulation(const SimulationOutput& out, const std::filesystem::path& dir) {
  out.sd.save_to(dir);
  std::ofstream traj(dir / "trajectory.csv", std::ios::binary | std::ios::trunc);
  traj << flightsim::trajectory_csv(out.trajectory);
  traj.close();
  if (!traj) throw Error("cannot write " + (dir / "trajectory.csv").string());
}

}  // namespace asid
