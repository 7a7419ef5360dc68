#include "asid/airframe.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "asid/error.hpp"
#include "asid/units.hpp"

namespace asid::airframe {

namespace {

constexpr double kSeaLevelDensity = 1.225;  // fixed in the thrust formula
constexpr double kThrustFormulaConstant = 3.29546;
constexpr double kMaxTiltDeg = 80.0;

constexpr std::array<double, 13> kBeaufortLowerKmh = {
    0, 1, 6, 12, 20, 29, 39, 50, 62, 75, 89, 103, 118};

}  // namespace

void AirframeConfig::validate() const {
  if (n_motors < 1) throw ConfigError("n_motors must be >= 1");
  if (!(total_mass_g > 0.0)) throw ConfigError("total_mass_g must be > 0");
  if (!(motor.kv_rpm_per_volt > 0.0)) throw ConfigError("motor kv must be > 0");
  if (!(motor.max_thrust_per_motor_gf > 0.0)) throw ConfigError("max_thrust_per_motor_gf must be > 0");
  if (motor.size_code < 100 || motor.size_code > 9999) throw ConfigError("motor size_code must be a 4-digit XXYY code");
  if (!(prop.diameter_in > 0.0 && prop.pitch_in > 0.0 && prop.max_rpm > 0.0)) {
    throw ConfigError("propeller diameter, pitch and max_rpm must be > 0");
  }
  if (!(battery.capacity_mah > 0.0)) throw ConfigError("battery capacity must be > 0");
  if (!(battery.c_rate > 0.0)) throw ConfigError("battery c_rate must be > 0");
  if (battery.cells < 1) throw ConfigError("battery cells must be >= 1");
  if (!(frame_drag_coefficient >= 0.0) || !(body_drag_area_m2 >= 0.0)) {
    throw ConfigError("drag parameters must be >= 0");
  }
  if (!(mtbf_hours > 0.0)) throw ConfigError("mtbf_hours must be > 0");
  if (!(hover_current_a > 0.0)) throw ConfigError("hover_current_a must be > 0");
}

double AirframeConfig::weight_newtons() const {
  return units::gf_to_newtons(total_mass_g);
}

AirframeConfig reference_airframe() { return AirframeConfig{}; }

double thrust_to_weight(const AirframeConfig& cfg) {
  return cfg.motor.max_thrust_per_motor_gf * cfg.n_motors / cfg.total_mass_g;
}

double pitch_speed(const PropSpec& prop, double rpm) {
  return rpm * units::kMetersPerInch * prop.pitch_in / 60.0;
}

double prop_thrust(const PropSpec& prop, double rpm, double v0_mps, DiskTerm disk) {
  if (!(rpm >= 0.0 && rpm <= prop.max_rpm)) {
    throw DomainError("rpm " + std::to_string(rpm) + " outside [0, max_rpm]");
  }
  if (!(v0_mps >= 0.0)) throw DomainError("inflow speed must be >= 0");

  const double d = prop.diameter_in;
  const double disk_span = disk == DiskTerm::Multiplicative ? units::kMetersPerInch * d
                                                            : units::kMetersPerInch + d;
  const double disk_area = units::kPi * disk_span * disk_span / 4.0;
  const double vp = pitch_speed(prop, rpm);
  const double correction = std::pow(d / (kThrustFormulaConstant * prop.pitch_in), 1.5);
  return kSeaLevelDensity * disk_area * (vp * vp - vp * v0_mps) * correction;
}

double thrust_at_altitude(double static_thrust_sl_gf, double altitude_m,
                          const atmosphere::AtmosphereModel& atmo) {
  return static_thrust_sl_gf * atmosphere::density_ratio(altitude_m, atmo);
}

double required_static_thrust(double target_thrust_gf, double altitude_m,
                              const atmosphere::AtmosphereModel& atmo) {
  return target_thrust_gf / atmosphere::density_ratio(altitude_m, atmo);
}

double service_ceiling(const AirframeConfig& cfg, const atmosphere::AtmosphereModel& atmo) {
  const double tw_sl = thrust_to_weight(cfg);
  if (!(tw_sl > 1.0)) {
    throw DomainError("no service ceiling: sea-level T/W is " + std::to_string(tw_sl));
  }
  auto excess = [&](double h) { return tw_sl * atmosphere::density_ratio(h, atmo) - 1.0; };

  double lo = 0.0;
  double hi = atmosphere::AtmosphereModel::kTroposphereTopM;
  if (excess(hi) > 0.0) {
    throw DomainError("service ceiling lies above the troposphere model");
  }
  // Converge far below the +-1 m requirement so T/W at the result is 1 to ~1e-9.
  while (hi - lo > 1e-7) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (excess(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double max_progressive_speed(const AirframeConfig& cfg) {
  const double weight = cfg.weight_newtons();
  const double n = cfg.n_motors;
  const double rpm = cfg.prop.max_rpm;
  const double vp = pitch_speed(cfg.prop, rpm);
  const double static_total = n * prop_thrust(cfg.prop, rpm, 0.0);
  if (!(static_total > weight)) {
    throw DomainError("no equilibrium: propellers cannot hold the airframe in a hover");
  }

  auto thrust_at = [&](double v) { return n * prop_thrust(cfg.prop, rpm, std::min(v, vp)); };

  if (cfg.body_drag_area_m2 == 0.0) {
    // Drag-free: tilt tends to zero; the limit is the speed at which thrust
    // can no longer carry the weight, never above the pitch speed.
    return units::mps_to_kmh(std::min(vp * (1.0 - weight / static_total), vp));
  }

  auto speed_for_tilt = [&](double theta) {
    return std::sqrt(2.0 * weight * std::tan(theta) /
                     (kSeaLevelDensity * cfg.body_drag_area_m2));
  };
  auto feasible = [&](double theta) {
    const double v = speed_for_tilt(theta);
    return v < vp && thrust_at(v) >= weight / std::cos(theta);
  };

  double lo = 0.0;
  double hi = units::degrees_to_radians(kMaxTiltDeg);
  if (feasible(hi)) return units::mps_to_kmh(speed_for_tilt(hi));
  while (units::mps_to_kmh(speed_for_tilt(hi) - speed_for_tilt(lo)) > 1e-4) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  return units::mps_to_kmh(speed_for_tilt(lo));
}

double beaufort_to_kmh(int beaufort) {
  if (beaufort < 0 || beaufort >= static_cast<int>(kBeaufortLowerKmh.size())) {
    throw DomainError("Beaufort force " + std::to_string(beaufort) + " outside 0..12");
  }
  return kBeaufortLowerKmh[static_cast<std::size_t>(beaufort)];
}

double wind_drift(double wind_kmh, double vmax_kmh, double duration_s) {
  if (!(duration_s >= 0.0)) throw DomainError("duration must be >= 0");
  return std::max(0.0, wind_kmh - vmax_kmh) / 3.6 * duration_s;
}

double battery_max_load(const BatterySpec& battery) {
  return battery.capacity_mah / 1000.0 * battery.c_rate;
}

double endurance(const BatterySpec& battery, double average_current_a,
                 double usable_fraction) {
  if (!(average_current_a > 0.0)) throw DomainError("average current must be > 0");
  if (average_current_a > battery_max_load(battery)) {
    throw DomainError("average current exceeds the battery's maximum load");
  }
  if (!(usable_fraction > 0.0 && usable_fraction <= 1.0)) {
    throw DomainError("usable fraction must lie in (0, 1]");
  }
  return battery.capacity_mah / 1000.0 / average_current_a * 3600.0 * usable_fraction;
}

std::int64_t expected_flights(double mtbf_hours, double flight_minutes) {
  if (!(mtbf_hours > 0.0 && flight_minutes > 0.0)) {
    throw DomainError("MTBF and flight duration must be > 0");
  }
  return static_cast<std::int64_t>(std::floor(mtbf_hours * 60.0 / flight_minutes));
}

}  // namespace asid::airframe
