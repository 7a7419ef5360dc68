#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "asid/log_row.hpp"

namespace asid::wx {

/// Magnus-form dew point, alpha = 17.62, beta = 243.12 C.
/// DomainError for RH outside (0, 100] or T outside [-45, 60] C.
double dew_point(double temperature_c, double humidity_pct);

/// Heat index as computed by the DHT sensor library: Steadman's simple form,
/// replaced by the Rothfusz regression (with its low/high humidity
/// adjustments) once the simple value exceeds 79 F.
double heat_index_fahrenheit(double temperature_f, double humidity_pct);
double heat_index(double temperature_c, double humidity_pct);

/// Thom's discomfort index, DI = T - 0.55 (1 - 0.01 RH)(T - 14.5).
double discomfort_index(double temperature_c, double humidity_pct);

/// Parses station CSV (`date,time,T,RH,HI,P,ALT,` per line, CRLF or LF).
/// ParseError carries the 1-based line number.
std::vector<LogRow> parse_log(std::string_view text);

/// Median; mean of the two middle values for an even count. DomainError if empty.
double median(std::vector<double> values);

struct SurfaceSummary {
  double temperature_c = 0.0;
  double humidity_pct = 0.0;
  double pressure_hpa = 0.0;
  std::size_t rows = 0;
};

/// Per-variable medians of the ground rows.
SurfaceSummary surface_summary(std::span<const LogRow> ground_rows);

struct Level {
  double altitude_m = 0.0;
  double temperature_c = 0.0;
  double humidity_pct = 0.0;
  double pressure_hpa = 0.0;
};

struct SoundingProfile {
  std::vector<Level> levels;  // strictly increasing altitude
  SurfaceSummary surface;
  std::string first_timestamp;  // "DD.MM.YYYY HH:MM:SS" of the first logged row
  std::string last_timestamp;
};

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Least-squares temperature(altitude) over the levels; needs >= 2 levels.
LinearFit fit_temperature(std::span<const Level> levels);

enum class FreezingLevelStatus {
  Interpolated,   // 0 C bracketed by two logged levels
  Extrapolated,   // from the fitted lapse rate
  BelowSurface,   // extrapolated root is negative
  Indeterminate,  // fitted lapse <= 0: never freezes aloft
  Unavailable,    // fewer than two levels
};

std::string_view to_string(FreezingLevelStatus status);

struct FreezingLevel {
  FreezingLevelStatus status = FreezingLevelStatus::Unavailable;
  std::optional<double> altitude_m;

  bool operator==(const FreezingLevel&) const = default;
};

/// DomainError with fewer than two levels.
FreezingLevel freezing_level(std::span<const Level> levels);

/// Air rows become levels keyed by cal_altitude. ParseError when altitudes
/// are not strictly increasing; DomainError when there are no ground rows.
SoundingProfile build_profile(std::span<const LogRow> air_rows,
                              std::span<const LogRow> ground_rows);

struct WxReport {
  std::string collection_time;  // timestamp of the last logged row
  double surface_temperature_c = 0.0;
  double surface_humidity_pct = 0.0;
  double surface_pressure_hpa = 0.0;
  std::optional<double> dew_point_c;  // unavailable at 0 % humidity
  double heat_index_c = 0.0;
  double discomfort_index = 0.0;
  FreezingLevel freezing_level;
  std::optional<double> fitted_lapse_rate_c_per_m;  // positive when cooling aloft
  std::size_t ground_rows = 0;
  std::size_t levels = 0;
  std::vector<std::optional<double>> level_dew_points_c;  // parallel to the profile levels

  bool operator==(const WxReport&) const = default;
};

WxReport build_report(const SoundingProfile& profile);

}  // namespace asid::wx
