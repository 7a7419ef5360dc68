#pragma once

namespace asid {

/// Raw weather-sensor output: DHT22 temperature/humidity and BMP280 pressure.
struct AtmosphericReading {
  double temperature_c = 0.0;
  double humidity_pct = 0.0;
  double pressure_pa = 0.0;

  bool operator==(const AtmosphericReading&) const = default;
};

}  // namespace asid
