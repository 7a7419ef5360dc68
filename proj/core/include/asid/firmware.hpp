#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "asid/atmosphere.hpp"
#include "asid/civil_time.hpp"
#include "asid/log_row.hpp"
#include "asid/sdcard.hpp"
#include "asid/sensor.hpp"

namespace asid::firmware {

struct FirmwareConfig {
  double elevation_m = 45.0;
  double pressure_correction = 0.995;
  double altimeter_slope_hpa_per_m = 0.12;
  int interval_start_m = 5;
  int interval_step_m = 5;
  int server_threshold_m = 35;
  int ground_samples = 6;
  std::int64_t setup_delay_ms = 2000;
  std::int64_t ground_buzz_ms = 500;
  std::int64_t ground_delay_ms = 3000;
  std::int64_t air_delay_ms = 3000;
  std::int64_t server_buzz_ms = 5000;
  DateTime rtc_start;

  void validate() const;
  atmosphere::StationCalibration calibration() const {
    return {elevation_m, pressure_correction, altimeter_slope_hpa_per_m};
  }
};

/// One logged row, exactly as the station derives it from a raw reading.
using SensorSample = LogRow;

enum class Phase { Ground, Air, Serving };

std::string_view to_string(Phase phase);

enum class EffectKind {
  Buzzer,
  GroundLogged,
  AirLogged,
  WriteFailed,
  ServerStarted,
  PhaseChanged,
};

struct Effect {
  EffectKind kind = EffectKind::Buzzer;
  std::int64_t clock_ms = 0;
  std::int64_t duration_ms = 0;  // buzzer only
  std::string file;              // logged / failed file
  int interval_m = 0;            // threshold crossed by an air row
  Phase phase = Phase::Ground;   // phase entered, for PhaseChanged

  bool operator==(const Effect&) const = default;
};

struct BuzzerEvent {
  std::int64_t clock_ms = 0;
  std::int64_t duration_ms = 0;

  bool operator==(const BuzzerEvent&) const = default;
};

struct FirmwareState {
  Phase phase = Phase::Ground;
  bool run_flag = false;
  bool listen_flag = false;
  int interval_m = 5;
  double mslp_hpa = 0.0;
  int ground_rows = 0;
  std::int64_t busy_until_ms = 0;
  std::int64_t last_clock_ms = 0;
  std::vector<BuzzerEvent> buzzer_events;
};

/// The station's per-reading arithmetic: corrected pressure, heat index,
/// and the linear altimeter against the MSLP captured at power-up.
SensorSample measure(const AtmosphericReading& reading, double mslp_hpa,
                     const FirmwareConfig& cfg, const DateTime& now);

/// `date,time,T,RH,HI,P,ALT,` followed by CRLF.
std::string format_row(const SensorSample& sample);

/// Sequential emulation of the weather-station main loop. The caller drives
/// it with a monotone millisecond clock; blocking delays of the original
/// program become busy windows during which ticks are ignored.
class WeatherStation {
 public:
  /// Power-up: captures MSLP from the first raw pressure reading.
  WeatherStation(FirmwareConfig cfg, double first_pressure_pa);

  std::vector<Effect> tick(const AtmosphericReading& reading, std::int64_t clock_ms,
                           SdCardImage& sd);

  const FirmwareState& state() const { return state_; }
  const FirmwareConfig& config() const { return cfg_; }
  DateTime rtc(std::int64_t clock_ms) const { return cfg_.rtc_start.plus_seconds(clock_ms / 1000); }

 private:
  void buzz(std::int64_t at, std::int64_t duration, std::vector<Effect>& out);
  bool log_row(std::string_view file, const AtmosphericReading& reading, std::int64_t at,
               SdCardImage& sd, std::vector<Effect>& out);

  FirmwareConfig cfg_;
  FirmwareState state_;
};

}  // namespace asid::firmware
