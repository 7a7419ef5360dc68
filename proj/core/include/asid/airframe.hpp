#pragma once

#include <cstdint>

#include "asid/atmosphere.hpp"

namespace asid::airframe {

/// Brushless motor. `size_code` is the XXYY stator code: diameter mm, height mm.
struct MotorSpec {
  int size_code = 2306;
  double kv_rpm_per_volt = 1000.0;
  double max_thrust_per_motor_gf = 1000.0;  // static, at sea level
  double operating_voltage_v = 22.2;

  int diameter_mm() const { return size_code / 100; }
  int height_mm() const { return size_code % 100; }
};

/// Propeller, imperial sizing (e.g. 6x5.5 = 6" diameter, 5.5" pitch).
struct PropSpec {
  double diameter_in = 6.0;
  double pitch_in = 5.5;
  double max_rpm = 20600.0;
};

struct BatterySpec {
  double capacity_mah = 5000.0;
  double c_rate = 50.0;
  double nominal_cell_voltage_v = 3.7;
  int cells = 6;

  double pack_voltage() const { return nominal_cell_voltage_v * cells; }
};

struct AirframeConfig {
  MotorSpec motor;
  int n_motors = 4;
  PropSpec prop;
  BatterySpec battery;
  double total_mass_g = 2000.0;
  // Vertical drag, F = c * (rho/rho0) * v|v|. Tuned so the reference frame
  // climbs at 120 ft/s terminal speed at sea level.
  double frame_drag_coefficient = 0.01466;  // N s^2 / m^2
  double body_drag_area_m2 = 0.02;          // horizontal Cd*A
  double mtbf_hours = 160.0;
  double hover_current_a = 20.0;

  void validate() const;
  double weight_newtons() const;
};

/// The shipped reference quadcopter: 2 kg, T/W = 2 at sea level.
AirframeConfig reference_airframe();

/// Maximum thrust of all motors over total mass (gram-force per gram).
double thrust_to_weight(const AirframeConfig& cfg);

/// Theoretical axial speed of the propeller in m/s.
double pitch_speed(const PropSpec& prop, double rpm);

enum class DiskTerm {
  Multiplicative,  // (0.0254 * d)^2, the dimensionally consistent reading
  AsPrinted,       // (0.0254 + d)^2, as typeset in the original formula
};

/// Empirical propeller thrust in Newtons at inflow speed `v0_mps`.
/// Negative when v0 exceeds the pitch speed.
double prop_thrust(const PropSpec& prop, double rpm, double v0_mps,
                   DiskTerm disk = DiskTerm::Multiplicative);

double thrust_at_altitude(double static_thrust_sl_gf, double altitude_m,
                          const atmosphere::AtmosphereModel& atmo = {});
double required_static_thrust(double target_thrust_gf, double altitude_m,
                              const atmosphere::AtmosphereModel& atmo = {});

/// Altitude where T/W, scaled by density, falls to 1. Bisection.
/// DomainError when T/W <= 1 at sea level or the ceiling is above 11 km.
double service_ceiling(const AirframeConfig& cfg,
                       const atmosphere::AtmosphereModel& atmo = {});

/// Highest level-flight speed in km/h at full rpm, from the tilt equilibrium
/// n F(v) cos(theta) = W, n F(v) sin(theta) = drag(v).
double max_progressive_speed(const AirframeConfig& cfg);

/// Lower bound of a Beaufort force band in km/h.
double beaufort_to_kmh(int beaufort);

/// Downwind displacement in meters for a flight of `duration_s`.
double wind_drift(double wind_kmh, double vmax_kmh, double duration_s);

/// Maximum continuous current in amperes: capacity (Ah) x C-rate.
double battery_max_load(const BatterySpec& battery);

double endurance(const BatterySpec& battery, double average_current_a,
                 double usable_fraction = 0.8);

std::int64_t expected_flights(double mtbf_hours, double flight_minutes);

}  // namespace asid::airframe
