#include "asid/wxindices.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

#include "asid/error.hpp"

namespace asid::wx {

namespace {

constexpr double kMagnusAlpha = 17.62;
constexpr double kMagnusBeta = 243.12;

double c_to_f(double c) { return c * 1.8 + 32.0; }
// The sensor library's own conversion constant, kept for identical output.
double f_to_c(double f) { return (f - 32.0) * 0.55555; }

void require_humidity(double rh) {
  if (!(rh >= 0.0 && rh <= 100.0)) throw DomainError("relative humidity must lie in [0, 100] %");
}

double parse_field(std::string_view field, std::size_t row, const char* name) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParseError(row, std::string(name) + " is not a number: '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

double dew_point(double temperature_c, double humidity_pct) {
  if (!(humidity_pct > 0.0 && humidity_pct <= 100.0)) {
    throw DomainError("dew point needs relative humidity in (0, 100] %");
  }
  if (!(temperature_c >= -45.0 && temperature_c <= 60.0)) {
    throw DomainError("dew point needs temperature in [-45, 60] C");
  }
  if (humidity_pct == 100.0) return temperature_c;
  const double gamma = std::log(humidity_pct / 100.0) +
                       kMagnusAlpha * temperature_c / (kMagnusBeta + temperature_c);
  return kMagnusBeta * gamma / (kMagnusAlpha - gamma);
}

double heat_index_fahrenheit(double t, double rh) {
  require_humidity(rh);
  double hi = 0.5 * (t + 61.0 + ((t - 68.0) * 1.2) + (rh * 0.094));
  if (hi > 79.0) {
    hi = -42.379 + 2.04901523 * t + 10.14333127 * rh + -0.22475541 * t * rh +
         -0.00683783 * std::pow(t, 2) + -0.05481717 * std::pow(rh, 2) +
         0.00122874 * std::pow(t, 2) * rh + 0.00085282 * t * std::pow(rh, 2) +
         -0.00000199 * std::pow(t, 2) * std::pow(rh, 2);
    if (rh < 13.0 && t >= 80.0 && t <= 112.0) {
      hi -= ((13.0 - rh) * 0.25) * std::sqrt((17.0 - std::abs(t - 95.0)) * 0.05882);
    } else if (rh > 85.0 && t >= 80.0 && t <= 87.0) {
      hi += ((rh - 85.0) * 0.1) * ((87.0 - t) * 0.2);
    }
  }
  return hi;
}

double heat_index(double temperature_c, double humidity_pct) {
  return f_to_c(heat_index_fahrenheit(c_to_f(temperature_c), humidity_pct));
}

double discomfort_index(double temperature_c, double humidity_pct) {
  require_humidity(humidity_pct);
  return temperature_c - 0.55 * (1.0 - 0.01 * humidity_pct) * (temperature_c - 14.5);
}

std::vector<LogRow> parse_log(std::string_view text) {
  std::vector<LogRow> rows;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (line.ends_with('\r')) line.remove_suffix(1);
    if (line.empty()) continue;

    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (true) {
      const auto comma = line.find(',', pos);
      fields.push_back(line.substr(pos, comma - pos));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    // The station terminates every row with a comma, leaving an empty 8th field.
    if (fields.size() == 8 && fields.back().empty()) fields.pop_back();
    if (fields.size() != 7) {
      throw ParseError(line_no, "expected 7 fields, found " + std::to_string(fields.size()));
    }
    if (fields[0].size() != 10 || fields[1].size() != 8) {
      throw ParseError(line_no, "malformed date/time");
    }
    LogRow row;
    row.date = std::string(fields[0]);
    row.time = std::string(fields[1]);
    row.temperature_c = parse_field(fields[2], line_no, "temperature");
    row.humidity_pct = parse_field(fields[3], line_no, "humidity");
    row.heat_index_c = parse_field(fields[4], line_no, "heat index");
    row.pressure_hpa = parse_field(fields[5], line_no, "pressure");
    row.cal_altitude_m = parse_field(fields[6], line_no, "altitude");
    if (row.humidity_pct < 0.0 || row.humidity_pct > 100.0) {
      throw ParseError(line_no, "humidity outside [0, 100]");
    }
    if (!(row.pressure_hpa > 0.0)) throw ParseError(line_no, "pressure must be > 0");
    rows.push_back(std::move(row));
  }
  return rows;
}

double median(std::vector<double> values) {
  if (values.empty()) throw DomainError("median of an empty set");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

SurfaceSummary surface_summary(std::span<const LogRow> ground_rows) {
  if (ground_rows.empty()) throw DomainError("surface summary needs at least one ground row");
  std::vector<double> t, rh, p;
  for (const auto& row : ground_rows) {
    t.push_back(row.temperature_c);
    rh.push_back(row.humidity_pct);
    p.push_back(row.pressure_hpa);
  }
  return {median(std::move(t)), median(std::move(rh)), median(std::move(p)), ground_rows.size()};
}

LinearFit fit_temperature(std::span<const Level> levels) {
  if (levels.size() < 2) throw DomainError("a lapse-rate fit needs at least two levels");
  const double n = static_cast<double>(levels.size());
  double mean_h = 0.0, mean_t = 0.0;
  for (const auto& l : levels) {
    mean_h += l.altitude_m;
    mean_t += l.temperature_c;
  }
  mean_h /= n;
  mean_t /= n;
  double sxy = 0.0, sxx = 0.0;
  for (const auto& l : levels) {
    sxy += (l.altitude_m - mean_h) * (l.temperature_c - mean_t);
    sxx += (l.altitude_m - mean_h) * (l.altitude_m - mean_h);
  }
  if (sxx == 0.0) throw DomainError("levels share a single altitude");
  const double slope = sxy / sxx;
  return {slope, mean_t - slope * mean_h};
}

std::string_view to_string(FreezingLevelStatus status) {
  switch (status) {
    case FreezingLevelStatus::Interpolated: return "interpolated";
    case FreezingLevelStatus::Extrapolated: return "extrapolated";
    case FreezingLevelStatus::BelowSurface: return "below surface";
    case FreezingLevelStatus::Indeterminate: return "indeterminate";
    case FreezingLevelStatus::Unavailable: return "unavailable";
  }
  return "unavailable";
}

FreezingLevel freezing_level(std::span<const Level> levels) {
  if (levels.size() < 2) throw DomainError("freezing level needs at least two levels");

  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    const auto& lo = levels[i];
    const auto& hi = levels[i + 1];
    if (lo.temperature_c == 0.0) return {FreezingLevelStatus::Interpolated, lo.altitude_m};
    if ((lo.temperature_c > 0.0) != (hi.temperature_c > 0.0) || hi.temperature_c == 0.0) {
      const double frac = lo.temperature_c / (lo.temperature_c - hi.temperature_c);
      return {FreezingLevelStatus::Interpolated,
              lo.altitude_m + frac * (hi.altitude_m - lo.altitude_m)};
    }
  }

  const auto fit = fit_temperature(levels);
  if (!(fit.slope < 0.0)) return {FreezingLevelStatus::Indeterminate, std::nullopt};
  const double root = -fit.intercept / fit.slope;
  return {root < 0.0 ? FreezingLevelStatus::BelowSurface : FreezingLevelStatus::Extrapolated, root};
}

SoundingProfile build_profile(std::span<const LogRow> air_rows,
                              std::span<const LogRow> ground_rows) {
  SoundingProfile profile;
  profile.surface = surface_summary(ground_rows);
  for (std::size_t i = 0; i < air_rows.size(); ++i) {
    const auto& row = air_rows[i];
    if (!profile.levels.empty() && !(row.cal_altitude_m > profile.levels.back().altitude_m)) {
      throw ParseError(i + 1, "air-row altitudes must be strictly increasing");
    }
    profile.levels.push_back(
        {row.cal_altitude_m, row.temperature_c, row.humidity_pct, row.pressure_hpa});
  }
  const auto& first = ground_rows.front();
  const auto& last = air_rows.empty() ? ground_rows.back() : air_rows.back();
  profile.first_timestamp = first.date + " " + first.time;
  profile.last_timestamp = last.date + " " + last.time;
  return profile;
}

WxReport build_report(const SoundingProfile& profile) {
  const auto& s = profile.surface;
  WxReport report;
  report.collection_time = profile.last_timestamp;
  report.surface_temperature_c = s.temperature_c;
  report.surface_humidity_pct = s.humidity_pct;
  report.surface_pressure_hpa = s.pressure_hpa;
  if (s.humidity_pct > 0.0) report.dew_point_c = dew_point(s.temperature_c, s.humidity_pct);
  report.heat_index_c = heat_index(s.temperature_c, s.humidity_pct);
  report.discomfort_index = discomfort_index(s.temperature_c, s.humidity_pct);
  report.ground_rows = s.rows;
  report.levels = profile.levels.size();

  if (profile.levels.size() >= 2) {
    report.freezing_level = freezing_level(profile.levels);
    report.fitted_lapse_rate_c_per_m = -fit_temperature(profile.levels).slope;
  }
  for (const auto& level : profile.levels) {
    std::optional<double> dp;
    if (level.humidity_pct > 0.0 && level.temperature_c >= -45.0 && level.temperature_c <= 60.0) {
      dp = dew_point(level.temperature_c, level.humidity_pct);
    }
    report.level_dew_points_c.push_back(dp);
  }
  return report;
}

}  // namespace asid::wx
