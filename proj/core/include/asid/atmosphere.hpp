#pragma once

// Standard-atmosphere model (troposphere only) and the pressure/altitude
// conversions used by the weather-station firmware.

namespace asid::atmosphere {

struct AtmosphereModel {
  double sea_level_pressure_pa = 101325.0;
  double sea_level_temperature_k = 288.15;
  double lapse_rate_k_per_m = 0.0065;
  double gas_constant = 287.053;  // J/(kg K), dry air
  double gravity = 9.80665;
  // Hypsometric constants as hard-coded in the station firmware.
  double hypso_scale_m = 44330.0;
  double hypso_exponent = 5.255;

  static constexpr double kTroposphereTopM = 11000.0;

  /// Throws ConfigError when an invariant does not hold.
  void validate() const;
};

struct StationCalibration {
  double elevation_m = 45.0;
  double pressure_correction = 0.995;
  double linear_altimeter_slope_hpa_per_m = 0.12;

  void validate() const;
};

// ISA closed forms on [0, 11000] m; DomainError outside that range.
double isa_temperature(double altitude_m, const AtmosphereModel& model = {});
double isa_pressure(double altitude_m, const AtmosphereModel& model = {});
double isa_density(double altitude_m, const AtmosphereModel& model = {});

/// Density relative to sea level, rho(h) / rho(0).
double density_ratio(double altitude_m, const AtmosphereModel& model = {});

/// Reduces a raw station reading to mean sea-level pressure in hPa, with
/// the same arithmetic as the firmware's MSLP routine.
double mslp_from_station(double raw_pressure_pa, const StationCalibration& cal,
                         const AtmosphereModel& model = {});

/// Inverse hypsometric formula: altitude of pressure `pressure_pa` below a
/// reference sea-level pressure given in hPa.
double pressure_to_altitude(double pressure_pa, double mslp_hpa,
                            const AtmosphereModel& model = {});

/// The firmware's linear altimeter: (mslp - p) / slope. Negative when p > mslp.
double linear_altitude(double pressure_hpa, double mslp_hpa,
                       const StationCalibration& cal);

}  // namespace asid::atmosphere
