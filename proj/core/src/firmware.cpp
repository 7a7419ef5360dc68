#include "asid/firmware.hpp"

#include <string>

#include "asid/decimal.hpp"
#include "asid/error.hpp"
#include "asid/wxindices.hpp"

namespace asid::firmware {

void FirmwareConfig::validate() const {
  calibration().validate();
  if (interval_start_m <= 0 || interval_step_m <= 0 || server_threshold_m <= 0) {
    throw ConfigError("firmware intervals must be positive");
  }
  if (ground_samples <= 0) throw ConfigError("firmware ground_samples must be positive");
  if (setup_delay_ms < 0 || ground_buzz_ms <= 0 || ground_delay_ms <= 0 || air_delay_ms <= 0 ||
      server_buzz_ms <= 0) {
    throw ConfigError("firmware delays must be positive");
  }
}

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::Ground: return "GROUND";
    case Phase::Air: return "AIR";
    case Phase::Serving: return "SERVING";
  }
  return "GROUND";
}

SensorSample measure(const AtmosphericReading& reading, double mslp_hpa,
                     const FirmwareConfig& cfg, const DateTime& now) {
  SensorSample s;
  s.date = now.date_str();
  s.time = now.time_str();
  s.temperature_c = reading.temperature_c;
  s.humidity_pct = reading.humidity_pct;
  s.heat_index_c = wx::heat_index(reading.temperature_c, reading.humidity_pct);
  s.pressure_hpa = reading.pressure_pa * cfg.pressure_correction / 100.0;
  s.cal_altitude_m = atmosphere::linear_altitude(s.pressure_hpa, mslp_hpa, cfg.calibration());
  return s;
}

std::string format_row(const SensorSample& s) {
  std::string row;
  row.reserve(64);
  row += s.date;
  row += ',';
  row += s.time;
  row += ',';
  row += format_fixed(s.temperature_c, 1);
  row += ',';
  row += format_fixed(s.humidity_pct, 1);
  row += ',';
  row += format_fixed(s.heat_index_c, 1);
  row += ',';
  row += format_fixed(s.pressure_hpa, 2);
  row += ',';
  row += format_fixed(s.cal_altitude_m, 2);
  row += ",\r\n";
  return row;
}

WeatherStation::WeatherStation(FirmwareConfig cfg, double first_pressure_pa) : cfg_(std::move(cfg)) {
  cfg_.validate();
  state_.mslp_hpa = atmosphere::mslp_from_station(first_pressure_pa, cfg_.calibration());
  state_.interval_m = cfg_.interval_start_m;
  state_.busy_until_ms = cfg_.setup_delay_ms;
}

void WeatherStation::buzz(std::int64_t at, std::int64_t duration, std::vector<Effect>& out) {
  state_.buzzer_events.push_back({at, duration});
  Effect e;
  e.kind = EffectKind::Buzzer;
  e.clock_ms = at;
  e.duration_ms = duration;
  out.push_back(e);
}

bool WeatherStation::log_row(std::string_view file, const AtmosphericReading& reading,
                             std::int64_t at, SdCardImage& sd, std::vector<Effect>& out) {
  const auto sample = measure(reading, state_.mslp_hpa, cfg_, rtc(at));
  Effect e;
  e.clock_ms = at;
  e.file = std::string(file);
  e.interval_m = state_.interval_m;
  if (!sd.append(file, format_row(sample))) {
    e.kind = EffectKind::WriteFailed;
    out.push_back(e);
    return false;
  }
  e.kind = file == kAirFile ? EffectKind::AirLogged : EffectKind::GroundLogged;
  out.push_back(e);
  return true;
}

std::vector<Effect> WeatherStation::tick(const AtmosphericReading& reading, std::int64_t clock_ms,
                                         SdCardImage& sd) {
  if (clock_ms < state_.last_clock_ms) throw DomainError("firmware clock must be monotone");
  state_.last_clock_ms = clock_ms;

  std::vector<Effect> out;
  if (clock_ms < state_.busy_until_ms) return out;

  switch (state_.phase) {
    case Phase::Ground: {
      buzz(clock_ms, cfg_.ground_buzz_ms, out);
      const std::int64_t at = clock_ms + cfg_.ground_buzz_ms;
      if (log_row(kGroundFile, reading, at, sd, out)) ++state_.ground_rows;
      state_.busy_until_ms = at + cfg_.ground_delay_ms;
      if (state_.ground_rows == cfg_.ground_samples) {
        state_.run_flag = true;
        state_.phase = Phase::Air;
        Effect e;
        e.kind = EffectKind::PhaseChanged;
        e.clock_ms = state_.busy_until_ms;
        e.phase = Phase::Air;
        out.push_back(e);
      }
      break;
    }
    case Phase::Air: {
      // The server check trails the logging delay in the original loop, so
      // it runs on the first tick after that delay has elapsed.
      if (state_.run_flag && state_.interval_m > cfg_.server_threshold_m && !state_.listen_flag) {
        Effect e;
        e.kind = EffectKind::ServerStarted;
        e.clock_ms = clock_ms;
        out.push_back(e);
        buzz(clock_ms, cfg_.server_buzz_ms, out);
        state_.listen_flag = true;
        state_.phase = Phase::Serving;
        state_.busy_until_ms = clock_ms + cfg_.server_buzz_ms;
        Effect p;
        p.kind = EffectKind::PhaseChanged;
        p.clock_ms = clock_ms;
        p.phase = Phase::Serving;
        out.push_back(p);
        break;
      }
      const auto sample = measure(reading, state_.mslp_hpa, cfg_, rtc(clock_ms));
      if (sample.cal_altitude_m > state_.interval_m) {
        if (log_row(kAirFile, reading, clock_ms, sd, out)) state_.interval_m += cfg_.interval_step_m;
        state_.busy_until_ms = clock_ms + cfg_.air_delay_ms;
      }
      break;
    }
    case Phase::Serving:
      break;
  }
  return out;
}

}  // namespace asid::firmware
