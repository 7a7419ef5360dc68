#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "asid/airframe.hpp"
#include "asid/atmosphere.hpp"
#include "asid/mission.hpp"
#include "asid/sensor.hpp"

namespace asid::flightsim {

struct SensorNoise {
  double temperature_c = 0.0;
  double humidity_pct = 0.0;
  double pressure_pa = 0.0;
};

/// Ground-truth atmosphere sampled by the weather station.
struct Environment {
  double surface_temperature_c = 15.0;
  double surface_pressure_hpa = 1013.25;
  double surface_humidity_pct = 60.0;
  double temperature_lapse_c_per_m = 0.0065;  // positive: cooling with height
  double humidity_lapse_pct_per_m = 0.0;      // positive: drying with height
  double wind_kmh = 0.0;
  std::uint64_t rng_seed = 1;
  SensorNoise sensor_noise_sd;

  void validate() const;
};

/// Seeded noise source for sensor readings.
class SensorRng {
 public:
  explicit SensorRng(std::uint64_t seed) : engine_(seed) {}

  double gaussian(double sd);

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Truth profile at `altitude_m` AGL plus per-channel Gaussian noise.
/// Channels with zero noise draw nothing from `rng`.
AtmosphericReading true_sample(const Environment& env, double altitude_m, SensorRng& rng);

struct SimState {
  double t_s = 0.0;
  double altitude_m = 0.0;
  double vertical_speed_mps = 0.0;
  double heading_deg = 0.0;
  double battery_remaining_mah = 0.0;
};

/// Hover throttle at sea level, 1 / (T/W).
double hover_throttle(const airframe::AirframeConfig& cfg);

/// Battery draw at a throttle setting: I_hover * (throttle / hover_throttle)^1.5.
double battery_current(const airframe::AirframeConfig& cfg, double throttle);

/// One semi-implicit Euler step of the vertical dynamics.
SimState step(const SimState& state, const airframe::AirframeConfig& cfg, double throttle,
              double dt_s, const atmosphere::AtmosphereModel& atmo = {});

/// Steady full-throttle climb speed at a fixed altitude, m/s. Integrates
/// `step` with the altitude pinned until the speed stops changing.
double terminal_climb_speed(const airframe::AirframeConfig& cfg, double altitude_m,
                            const atmosphere::AtmosphereModel& atmo = {});

struct ClimbResult {
  double time_s = 0.0;
  double battery_used_mah = 0.0;
  bool battery_exhausted = false;
};

/// Full-throttle climb from the ground to `altitude_m`.
ClimbResult time_to_altitude(const airframe::AirframeConfig& cfg, double altitude_m,
                             double dt_s = 0.01, const atmosphere::AtmosphereModel& atmo = {});

struct ControllerConfig {
  double altitude_gain = 0.5;  // (m/s) per m of altitude error
  double velocity_gain = 4.0;  // (m/s^2) per m/s of speed error
  double deadband_m = 0.2;
  double max_climb_mps = 5.0;
  double max_descent_mps = 3.0;
  double min_landing_mps = 0.5;
};

struct TrajectorySample {
  double t_s = 0.0;
  double altitude_m = 0.0;
  double vertical_speed_mps = 0.0;
  double heading_deg = 0.0;
};

struct CameraEvent {
  double t_s = 0.0;
  double altitude_m = 0.0;
  double heading_deg = 0.0;
};

struct Trajectory {
  double dt_s = 0.01;
  std::vector<TrajectorySample> samples;
  std::vector<CameraEvent> camera_events;
  double duration_s = 0.0;
  double landing_offset_m = 0.0;
  double battery_remaining_mah = 0.0;
  bool battery_exhausted = false;  // samples are truncated at exhaustion

  double max_altitude() const;
};

/// Executes a validated plan from the ground until touchdown. Throws
/// SimulationError when the plan violates its invariants or the airframe's
/// service ceiling. Battery exhaustion truncates and flags the trajectory.
Trajectory run_mission(const mission::MissionPlan& plan, const airframe::AirframeConfig& cfg,
                       const Environment& env, double dt_s = 0.01,
                       const ControllerConfig& ctrl = {},
                       const atmosphere::AtmosphereModel& atmo = {});

/// `t,altitude,vertical_speed,heading` CSV.
std::string trajectory_csv(const Trajectory& trajectory);

/// JSON array of {t, altitude, heading}.
std::string camera_manifest_json(const std::vector<CameraEvent>& events);

}  // namespace asid::flightsim
