#pragma once

#include <string>

namespace asid {

/// One weather observation as the station logs it to ground.csv / air.csv.
struct LogRow {
  std::string date;  // DD.MM.YYYY
  std::string time;  // HH:MM:SS
  double temperature_c = 0.0;
  double humidity_pct = 0.0;
  double heat_index_c = 0.0;
  double pressure_hpa = 0.0;  // corrected station pressure
  double cal_altitude_m = 0.0;

  bool operator==(const LogRow&) const = default;
};

}  // namespace asid
