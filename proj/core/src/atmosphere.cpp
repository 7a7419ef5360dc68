#include "asid/atmosphere.hpp"

#include <cmath>
#include <string>

#include "asid/error.hpp"

namespace asid::atmosphere {

namespace {

void require_troposphere(double altitude_m) {
  if (!(altitude_m >= 0.0 && altitude_m <= AtmosphereModel::kTroposphereTopM)) {
    throw DomainError("altitude " + std::to_string(altitude_m) +
                      " m outside the troposphere model [0, 11000] m");
  }
}

}  // namespace

void AtmosphereModel::validate() const {
  if (!(sea_level_pressure_pa > 0.0)) throw ConfigError("sea_level_pressure must be > 0");
  if (!(sea_level_temperature_k > 0.0)) throw ConfigError("sea_level_temperature must be > 0");
  if (!(lapse_rate_k_per_m > 0.0)) throw ConfigError("lapse_rate must be > 0");
  if (!(gas_constant > 0.0)) throw ConfigError("gas_constant must be > 0");
  if (!(hypso_scale_m > 0.0)) throw ConfigError("hypso_scale must be > 0");
  if (!(hypso_exponent > 1.0)) throw ConfigError("hypso_exponent must be > 1");
}

void StationCalibration::validate() const {
  if (!(pressure_correction > 0.9 && pressure_correction <= 1.1)) {
    throw ConfigError("pressure_correction must lie in (0.9, 1.1]");
  }
  if (!(linear_altimeter_slope_hpa_per_m > 0.0)) {
    throw ConfigError("linear_altimeter_slope must be > 0");
  }
  if (!std::isfinite(elevation_m)) throw ConfigError("elevation must be finite");
}

double isa_temperature(double altitude_m, const AtmosphereModel& model) {
  require_troposphere(altitude_m);
  return model.sea_level_temperature_k - model.lapse_rate_k_per_m * altitude_m;
}

double isa_pressure(double altitude_m, const AtmosphereModel& model) {
  const double t = isa_temperature(altitude_m, model);
  const double exponent =
      model.gravity / (model.gas_constant * model.lapse_rate_k_per_m);
  return model.sea_level_pressure_pa *
         std::pow(t / model.sea_level_temperature_k, exponent);
}

double isa_density(double altitude_m, const AtmosphereModel& model) {
  return isa_pressure(altitude_m, model) /
         (model.gas_constant * isa_temperature(altitude_m, model));
}

double density_ratio(double altitude_m, const AtmosphereModel& model) {
  return isa_density(altitude_m, model) / isa_density(0.0, model);
}

double mslp_from_station(double raw_pressure_pa, const StationCalibration& cal,
                         const AtmosphereModel& model) {
  if (!(raw_pressure_pa > 0.0)) throw DomainError("raw pressure must be > 0");
  if (!(cal.elevation_m < model.hypso_scale_m)) {
    throw DomainError("station elevation must be below the hypsometric scale height");
  }
  const double corrected_pa = raw_pressure_pa * cal.pressure_correction;
  const double reduction =
      std::pow(1.0 - cal.elevation_m / model.hypso_scale_m, model.hypso_exponent);
  // Firmware: ((corrected * 100) / reduction) / 100, result in Pa; then / 100.
  return corrected_pa / reduction / 100.0;
}

double pressure_to_altitude(double pressure_pa, double mslp_hpa,
                            const AtmosphereModel& model) {
  if (!(pressure_pa > 0.0)) throw DomainError("pressure must be > 0");
  if (!(mslp_hpa > 0.0)) throw DomainError("reference pressure must be > 0");
  const double reference_pa = mslp_hpa * 100.0;
  if (pressure_pa > reference_pa * 1.01) {
    throw DomainError("pressure exceeds the reference by more than 1%");
  }
  return model.hypso_scale_m *
         (1.0 - std::pow(pressure_pa / reference_pa, 1.0 / model.hypso_exponent));
}

double linear_altitude(double pressure_hpa, double mslp_hpa,
                       const StationCalibration& cal) {
  return (mslp_hpa - pressure_hpa) / cal.linear_altimeter_slope_hpa_per_m;
}

}  // namespace asid::atmosphere
