#include "asid/flightsim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "asid/error.hpp"
#include "asid/units.hpp"

namespace asid::flightsim {

namespace {

constexpr double kKelvinOffset = 273.15;
constexpr double kDryAirGasConstant = 287.053;
constexpr double kMaxMissionTimeS = 4.0 * 3600.0;

double mass_kg(const airframe::AirframeConfig& cfg) { return cfg.total_mass_g / 1000.0; }

double max_thrust_newtons(const airframe::AirframeConfig& cfg) {
  return units::gf_to_newtons(cfg.motor.max_thrust_per_motor_gf) * cfg.n_motors;
}

double vertical_drag(const airframe::AirframeConfig& cfg, double sigma, double v) {
  return cfg.frame_drag_coefficient * sigma * v * std::abs(v);
}

}  // namespace

void Environment::validate() const {
  if (!(surface_pressure_hpa > 0.0)) throw ConfigError("surface_pressure_hpa must be > 0");
  if (!(surface_humidity_pct >= 0.0 && surface_humidity_pct <= 100.0)) {
    throw ConfigError("surface_humidity_pct must lie in [0, 100]");
  }
  if (!(surface_temperature_c > -kKelvinOffset)) throw ConfigError("surface temperature below absolute zero");
  if (!std::isfinite(temperature_lapse_c_per_m) || !std::isfinite(humidity_lapse_pct_per_m)) {
    throw ConfigError("lapse rates must be finite");
  }
  const double top_k = surface_temperature_c + kKelvinOffset -
                       temperature_lapse_c_per_m * atmosphere::AtmosphereModel::kTroposphereTopM;
  if (!(top_k > 0.0)) throw ConfigError("temperature lapse drives the profile below absolute zero");
  if (!(wind_kmh >= 0.0)) throw ConfigError("wind_kmh must be >= 0");
  if (!(sensor_noise_sd.temperature_c >= 0.0 && sensor_noise_sd.humidity_pct >= 0.0 &&
        sensor_noise_sd.pressure_pa >= 0.0)) {
    throw ConfigError("sensor noise standard deviations must be >= 0");
  }
}

double SensorRng::gaussian(double sd) { return sd * normal_(engine_); }

AtmosphericReading true_sample(const Environment& env, double altitude_m, SensorRng& rng) {
  if (!(altitude_m >= 0.0)) throw DomainError("altitude must be >= 0");

  const double surface_k = env.surface_temperature_c + kKelvinOffset;
  const double lapse = env.temperature_lapse_c_per_m;
  const double surface_pa = env.surface_pressure_hpa * 100.0;
  double pressure_pa = 0.0;
  if (lapse == 0.0) {
    pressure_pa =
        surface_pa * std::exp(-units::kGravity * altitude_m / (kDryAirGasConstant * surface_k));
  } else {
    pressure_pa = surface_pa * std::pow(1.0 - lapse * altitude_m / surface_k,
                                        units::kGravity / (kDryAirGasConstant * lapse));
  }

  AtmosphericReading out;
  out.temperature_c = env.surface_temperature_c - lapse * altitude_m;
  out.humidity_pct = env.surface_humidity_pct - env.humidity_lapse_pct_per_m * altitude_m;
  out.pressure_pa = pressure_pa;

  const auto& noise = env.sensor_noise_sd;
  if (noise.temperature_c > 0.0) out.temperature_c += rng.gaussian(noise.temperature_c);
  if (noise.humidity_pct > 0.0) out.humidity_pct += rng.gaussian(noise.humidity_pct);
  if (noise.pressure_pa > 0.0) out.pressure_pa += rng.gaussian(noise.pressure_pa);
  out.humidity_pct = std::clamp(out.humidity_pct, 0.0, 100.0);
  return out;
}

double hover_throttle(const airframe::AirframeConfig& cfg) {
  return 1.0 / airframe::thrust_to_weight(cfg);
}

double battery_current(const airframe::AirframeConfig& cfg, double throttle) {
  return cfg.hover_current_a * std::pow(throttle / hover_throttle(cfg), 1.5);
}

SimState step(const SimState& state, const airframe::AirframeConfig& cfg, double throttle,
              double dt_s, const atmosphere::AtmosphereModel& atmo) {
  if (!(dt_s > 0.0 && dt_s <= 0.1)) throw DomainError("dt must lie in (0, 0.1] s");
  if (!(throttle >= 0.0 && throttle <= 1.0)) throw DomainError("throttle must lie in [0, 1]");

  const double sigma = atmosphere::density_ratio(std::max(state.altitude_m, 0.0), atmo);
  const double m = mass_kg(cfg);
  const double thrust = throttle * max_thrust_newtons(cfg) * sigma;
  const double accel =
      (thrust - m * units::kGravity - vertical_drag(cfg, sigma, state.vertical_speed_mps)) / m;

  SimState next = state;
  next.t_s = state.t_s + dt_s;
  next.vertical_speed_mps = state.vertical_speed_mps + accel * dt_s;
  next.altitude_m = state.altitude_m + next.vertical_speed_mps * dt_s;
  if (next.altitude_m <= 0.0) {
    next.altitude_m = 0.0;
    next.vertical_speed_mps = std::max(next.vertical_speed_mps, 0.0);
  }
  const double drawn_mah = battery_current(cfg, throttle) * dt_s / 3.6;
  next.battery_remaining_mah = std::max(0.0, state.battery_remaining_mah - drawn_mah);
  return next;
}

double terminal_climb_speed(const airframe::AirframeConfig& cfg, double altitude_m,
                            const atmosphere::AtmosphereModel& atmo) {
  constexpr double kDt = 0.01;
  constexpr int kMaxSteps = 360000;
  SimState state;
  state.altitude_m = altitude_m;
  state.battery_remaining_mah = cfg.battery.capacity_mah;
  for (int i = 0; i < kMaxSteps; ++i) {
    SimState next = step(state, cfg, 1.0, kDt, atmo);
    next.altitude_m = altitude_m;
    const double accel = (next.vertical_speed_mps - state.vertical_speed_mps) / kDt;
    state = next;
    if (std::abs(accel) < 1e-9) break;
  }
  return state.vertical_speed_mps;
}

ClimbResult time_to_altitude(const airframe::AirframeConfig& cfg, double altitude_m, double dt_s,
                             const atmosphere::AtmosphereModel& atmo) {
  SimState state;
  state.battery_remaining_mah = cfg.battery.capacity_mah;
  ClimbResult result;
  std::int64_t steps = 0;
  while (state.altitude_m < altitude_m) {
    state = step(state, cfg, 1.0, dt_s, atmo);
    ++steps;
    if (state.battery_remaining_mah <= 0.0) {
      result.battery_exhausted = true;
      break;
    }
    if (static_cast<double>(steps) * dt_s > kMaxMissionTimeS) {
      throw SimulationError("full-throttle climb does not reach the requested altitude");
    }
  }
  result.time_s = static_cast<double>(steps) * dt_s;
  result.battery_used_mah = cfg.battery.capacity_mah - state.battery_remaining_mah;
  return result;
}

double Trajectory::max_altitude() const {
  double highest = 0.0;
  for (const auto& s : samples) highest = std::max(highest, s.altitude_m);
  return highest;
}

namespace {

/// Cascaded altitude -> climb-rate -> throttle controller around `step`.
class MissionRunner {
 public:
  MissionRunner(const airframe::AirframeConfig& cfg, double dt, const ControllerConfig& ctrl,
                const atmosphere::AtmosphereModel& atmo)
      : cfg_(cfg), dt_(dt), ctrl_(ctrl), atmo_(atmo) {
    state_.battery_remaining_mah = cfg.battery.capacity_mah;
    trajectory_.dt_s = dt;
    record();
  }

  bool exhausted() const { return trajectory_.battery_exhausted; }
  double altitude() const { return state_.altitude_m; }

  void set_heading(double heading) { state_.heading_deg = heading; }

  void capture() {
    trajectory_.camera_events.push_back({state_.t_s, state_.altitude_m, state_.heading_deg});
  }

  /// Climb or descend to `target` and stop inside the deadband.
  void go_to(double target) {
    target_ = target;
    while (!exhausted() && std::abs(target_ - state_.altitude_m) > ctrl_.deadband_m) {
      const double v_sp = std::clamp(ctrl_.altitude_gain * (target_ - state_.altitude_m),
                                     -ctrl_.max_descent_mps, ctrl_.max_climb_mps);
      advance(v_sp);
    }
  }

  void hold(double seconds) {
    const auto n = static_cast<std::int64_t>(std::llround(seconds / dt_));
    for (std::int64_t i = 0; i < n && !exhausted(); ++i) {
      const double v_sp = std::clamp(ctrl_.altitude_gain * (target_ - state_.altitude_m),
                                     -ctrl_.max_descent_mps, ctrl_.max_climb_mps);
      advance(v_sp);
    }
  }

  void land() {
    target_ = 0.0;
    while (!exhausted() && state_.altitude_m > 0.0) {
      const double v_sp = -std::clamp(ctrl_.altitude_gain * state_.altitude_m,
                                      ctrl_.min_landing_mps, ctrl_.max_descent_mps);
      advance(v_sp);
    }
  }

  Trajectory finish() && {
    trajectory_.duration_s = state_.t_s;
    trajectory_.battery_remaining_mah = state_.battery_remaining_mah;
    return std::move(trajectory_);
  }

 private:
  double throttle_for(double v_sp) const {
    const double sigma = atmosphere::density_ratio(state_.altitude_m, atmo_);
    const double m = mass_kg(cfg_);
    const double a_cmd = ctrl_.velocity_gain * (v_sp - state_.vertical_speed_mps);
    const double needed =
        m * (units::kGravity + a_cmd) + vertical_drag(cfg_, sigma, state_.vertical_speed_mps);
    return std::clamp(needed / (max_thrust_newtons(cfg_) * sigma), 0.0, 1.0);
  }

  void advance(double v_sp) {
    state_ = step(state_, cfg_, throttle_for(v_sp), dt_, atmo_);
    ++steps_;
    state_.t_s = static_cast<double>(steps_) * dt_;
    record();
    if (state_.battery_remaining_mah <= 0.0) trajectory_.battery_exhausted = true;
    if (state_.t_s > kMaxMissionTimeS) {
      throw SimulationError("mission exceeded the maximum simulated duration");
    }
  }

  void record() {
    trajectory_.samples.push_back(
        {state_.t_s, state_.altitude_m, state_.vertical_speed_mps, state_.heading_deg});
  }

  const airframe::AirframeConfig& cfg_;
  double dt_;
  ControllerConfig ctrl_;
  const atmosphere::AtmosphereModel& atmo_;
  SimState state_;
  double target_ = 0.0;
  std::int64_t steps_ = 0;
  Trajectory trajectory_;
};

}  // namespace

Trajectory run_mission(const mission::MissionPlan& plan, const airframe::AirframeConfig& cfg,
                       const Environment& env, double dt_s, const ControllerConfig& ctrl,
                       const atmosphere::AtmosphereModel& atmo) {
  if (!(dt_s > 0.0 && dt_s <= 0.1)) throw DomainError("dt must lie in (0, 0.1] s");
  cfg.validate();
  env.validate();

  const double ceiling = airframe::service_ceiling(cfg, atmo);
  const auto violations = mission::validate(plan, ceiling);
  if (!violations.empty()) {
    std::string msg = "mission plan is not executable:";
    for (const auto& v : violations) {
      msg += "\n  ";
      if (v.command_index != mission::Violation::kPlanLevel) {
        msg += "command " + std::to_string(v.command_index + 1) + ": ";
      }
      msg += v.message;
    }
    throw SimulationError(msg);
  }
  const double vmax_kmh = airframe::max_progressive_speed(cfg);

  MissionRunner runner(cfg, dt_s, ctrl, atmo);
  using mission::CommandKind;
  for (const auto& cmd : plan.commands) {
    if (runner.exhausted()) break;
    switch (cmd.kind) {
      case CommandKind::Takeoff:
        runner.go_to(cmd.alt_m);
        break;
      case CommandKind::Waypoint:
        runner.go_to(cmd.alt_m);
        runner.hold(cmd.params[0]);
        break;
      case CommandKind::ConditionYaw:
        runner.set_heading(cmd.params[0]);
        break;
      case CommandKind::Delay:
        runner.hold(cmd.params[0]);
        break;
      case CommandKind::DoDigicamControl:
        runner.capture();
        break;
      case CommandKind::Land:
        runner.land();
        break;
    }
  }

  Trajectory out = std::move(runner).finish();
  out.landing_offset_m = airframe::wind_drift(env.wind_kmh, vmax_kmh, out.duration_s);
  return out;
}

std::string trajectory_csv(const Trajectory& trajectory) {
  std::string out = "t,altitude,vertical_speed,heading\n";
  out.reserve(out.size() + trajectory.samples.size() * 32);
  char line[128];
  for (const auto& s : trajectory.samples) {
    const int n = std::snprintf(line, sizeof line, "%.3f,%.4f,%.4f,%.1f\n", s.t_s,
                                s.altitude_m, s.vertical_speed_mps, s.heading_deg);
    out.append(line, static_cast<std::size_t>(n));
  }
  return out;
}

std::string camera_manifest_json(const std::vector<CameraEvent>& events) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& e : events) {
    doc.push_back({{"t", e.t_s}, {"altitude", e.altitude_m}, {"heading", e.heading_deg}});
  }
  return doc.dump(2) + "\n";
}

}  // namespace asid::flightsim
