#include "asid/groundstation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "asid/decimal.hpp"
#include "asid/error.hpp"
#include "asid/sdcard.hpp"

namespace asid::groundstation {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

struct Range {
  double lo;
  double hi;
};

Range padded(double lo, double hi) {
  double span = hi - lo;
  if (span <= 0.0) span = std::max(std::abs(lo) * 0.1, 1.0);
  const double mid = 0.5 * (lo + hi);
  if (hi - lo <= 0.0) return {mid - 0.5 * span * 1.1, mid + 0.5 * span * 1.1};
  return {lo - 0.05 * span, hi + 0.05 * span};
}

std::string num(double v) { return format_fixed(v, 2); }

std::string plot_svg(std::string_view title, std::string_view x_label,
                     const std::vector<std::pair<double, double>>& pts) {
  double xlo = pts.front().first, xhi = xlo, ylo = pts.front().second, yhi = ylo;
  for (const auto& [x, y] : pts) {
    xlo = std::min(xlo, x);
    xhi = std::max(xhi, x);
    ylo = std::min(ylo, y);
    yhi = std::max(yhi, y);
  }
  const Range xr = padded(xlo, xhi);
  const Range yr = padded(ylo, yhi);
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto sy = [&](double y) { return kTop + ph - (y - yr.lo) / (yr.hi - yr.lo) * ph; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       "font-size=\"16\">"
    << title << "</text>\n";
  o << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
    << "\" fill=\"none\" stroke=\"black\"/>\n";

  // Extent labels on both axes.
  o << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  o << "<text x=\"" << kLeft << "\" y=\"" << kHeight - kBottom + 16 << "\" text-anchor=\"start\">"
    << num(xr.lo) << "</text>\n";
  o << "<text x=\"" << kWidth - kRight << "\" y=\"" << kHeight - kBottom + 16
    << "\" text-anchor=\"end\">" << num(xr.hi) << "</text>\n";
  o << "<text x=\"" << kLeft - 6 << "\" y=\"" << kHeight - kBottom << "\" text-anchor=\"end\">"
    << num(yr.lo) << "</text>\n";
  o << "<text x=\"" << kLeft - 6 << "\" y=\"" << kTop + 10 << "\" text-anchor=\"end\">"
    << num(yr.hi) << "</text>\n";
  o << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 12 << "\" text-anchor=\"middle\">"
    << x_label << "</text>\n";
  o << "<text x=\"16\" y=\"" << kTop + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
    << kTop + ph / 2 << ")\">Altitude (m)</text>\n";
  o << "</g>\n";

  if (pts.size() >= 2) {
    o << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i) o << ' ';
      o << num(sx(pts[i].first)) << ',' << num(sy(pts[i].second));
    }
    o << "\"/>\n";
  }
  for (const auto& [x, y] : pts) {
    o << "<circle cx=\"" << num(sx(x)) << "\" cy=\"" << num(sy(y))
      << "\" r=\"3.5\" fill=\"steelblue\"/>\n";
  }
  o << "</svg>\n";
  return o.str();
}

ordered_json opt(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(); }

std::optional<double> get_opt(const ordered_json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<double>();
}

wx::FreezingLevelStatus parse_status(const std::string& s) {
  using S = wx::FreezingLevelStatus;
  for (S st : {S::Interpolated, S::Extrapolated, S::BelowSurface, S::Indeterminate, S::Unavailable}) {
    if (wx::to_string(st) == s) return st;
  }
  throw ParseError(0, "unknown freezing level status '" + s + "'");
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) throw Error("cannot write " + p.string());
}

std::string freezing_text(const wx::FreezingLevel& fl) {
  using S = wx::FreezingLevelStatus;
  switch (fl.status) {
    case S::Interpolated:
    case S::Extrapolated:
      return format_fixed(*fl.altitude_m, 0) + " m (" + std::string(wx::to_string(fl.status)) + ")";
    case S::BelowSurface:
      return "below surface (" + format_fixed(*fl.altitude_m, 0) + " m)";
    case S::Indeterminate:
      return "indeterminate (no cooling with height)";
    case S::Unavailable:
      return "indeterminate (fewer than two levels)";
  }
  return "indeterminate";
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.insert(0, width - s.size(), ' ');
  return s;
}

}  // namespace

std::vector<PlotDocument> render_plots(const wx::SoundingProfile& profile) {
  if (profile.levels.empty()) throw DomainError("cannot plot an empty profile");
  std::vector<std::pair<double, double>> t, rh, p;
  for (const auto& l : profile.levels) {
    t.emplace_back(l.temperature_c, l.altitude_m);
    rh.emplace_back(l.humidity_pct, l.altitude_m);
    p.emplace_back(l.pressure_hpa, l.altitude_m);
  }
  const std::size_t n = profile.levels.size();
  return {
      {"height_temperature", plot_svg("Height / temperature", "Temperature (C)", t), n},
      {"height_humidity", plot_svg("Height / humidity", "Relative humidity (%)", rh), n},
      {"height_pressure", plot_svg("Height / pressure", "Pressure (hPa)", p), n},
  };
}

std::string render_text_report(const wx::WxReport& r, const wx::SoundingProfile& profile,
                               const DateTime& generated_at) {
  std::ostringstream o;
  auto line = [&](std::string_view label, const std::string& value) {
    std::string l(label);
    l.resize(22, ' ');
    o << l << value << '\n';
  };
  o << "ASID weather sounding report\n\n";
  line("Collection time:", r.collection_time);
  line("Processed at:", generated_at.iso());
  line("Surface temperature:", format_fixed(r.surface_temperature_c, 2) + " C");
  line("Surface humidity:", format_fixed(r.surface_humidity_pct, 2) + " %");
  line("Surface pressure:", format_fixed(r.surface_pressure_hpa, 2) + " hPa");
  line("Dew point:", r.dew_point_c ? format_fixed(*r.dew_point_c, 2) + " C" : "unavailable");
  line("Heat index:", format_fixed(r.heat_index_c, 2) + " C");
  line("Discomfort index:", format_fixed(r.discomfort_index, 2));
  line("Freezing level:", freezing_text(r.freezing_level));
  line("Fitted lapse rate:", r.fitted_lapse_rate_c_per_m
                                 ? format_fixed(*r.fitted_lapse_rate_c_per_m * 1000.0, 2) + " C/km"
                                 : "unavailable");
  line("Ground rows:", std::to_string(r.ground_rows));
  line("Air levels:", std::to_string(r.levels));

  if (!profile.levels.empty()) {
    o << "\n   Alt (m)   T (C)  RH (%)   P (hPa)  Td (C)\n";
    for (std::size_t i = 0; i < profile.levels.size(); ++i) {
      const auto& l = profile.levels[i];
      const auto& td = i < r.level_dew_points_c.size() ? r.level_dew_points_c[i] : std::nullopt;
      o << pad(format_fixed(l.altitude_m, 2), 10) << pad(format_fixed(l.temperature_c, 1), 8)
        << pad(format_fixed(l.humidity_pct, 1), 8) << pad(format_fixed(l.pressure_hpa, 2), 10)
        << pad(td ? format_fixed(*td, 2) : "-", 8) << '\n';
    }
  }
  return o.str();
}

std::string render_json(const wx::WxReport& r, const wx::SoundingProfile& profile,
                        const DateTime& generated_at) {
  ordered_json j;
  j["generated_at"] = generated_at.iso();
  j["collection_time"] = r.collection_time;
  j["surface"] = {{"temperature_c", r.surface_temperature_c},
                  {"humidity_pct", r.surface_humidity_pct},
                  {"pressure_hpa", r.surface_pressure_hpa},
                  {"rows", r.ground_rows}};
  j["dew_point_c"] = opt(r.dew_point_c);
  j["heat_index_c"] = r.heat_index_c;
  j["discomfort_index"] = r.discomfort_index;
  j["freezing_level"] = {{"status", std::string(wx::to_string(r.freezing_level.status))},
                         {"altitude_m", opt(r.freezing_level.altitude_m)}};
  j["fitted_lapse_rate_c_per_m"] = opt(r.fitted_lapse_rate_c_per_m);
  ordered_json levels = ordered_json::array();
  for (std::size_t i = 0; i < profile.levels.size(); ++i) {
    const auto& l = profile.levels[i];
    levels.push_back({{"altitude_m", l.altitude_m},
                      {"temperature_c", l.temperature_c},
                      {"humidity_pct", l.humidity_pct},
                      {"pressure_hpa", l.pressure_hpa},
                      {"dew_point_c", i < r.level_dew_points_c.size()
                                          ? opt(r.level_dew_points_c[i])
                                          : ordered_json()}});
  }
  j["levels"] = std::move(levels);
  return j.dump(2) + "\n";
}

ParsedReport parse_json(std::string_view text) {
  try {
    const auto j = ordered_json::parse(text);
    ParsedReport out;
    out.generated_at = DateTime::parse_iso(j.at("generated_at").get<std::string>());
    auto& r = out.report;
    r.collection_time = j.at("collection_time").get<std::string>();
    const auto& s = j.at("surface");
    r.surface_temperature_c = s.at("temperature_c").get<double>();
    r.surface_humidity_pct = s.at("humidity_pct").get<double>();
    r.surface_pressure_hpa = s.at("pressure_hpa").get<double>();
    r.ground_rows = s.at("rows").get<std::size_t>();
    r.dew_point_c = get_opt(j, "dew_point_c");
    r.heat_index_c = j.at("heat_index_c").get<double>();
    r.discomfort_index = j.at("discomfort_index").get<double>();
    const auto& fl = j.at("freezing_level");
    r.freezing_level.status = parse_status(fl.at("status").get<std::string>());
    r.freezing_level.altitude_m = get_opt(fl, "altitude_m");
    r.fitted_lapse_rate_c_per_m = get_opt(j, "fitted_lapse_rate_c_per_m");
    const auto& levels = j.at("levels");
    r.levels = levels.size();
    for (const auto& l : levels) r.level_dew_points_c.push_back(get_opt(l, "dew_point_c"));
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("report json: ") + e.what());
  }
}

ReportBundle make_bundle(const wx::SoundingProfile& profile, const DateTime& generated_at,
                         std::vector<std::string> sources) {
  ReportBundle b;
  b.profile = profile;
  b.report = wx::build_report(profile);
  if (!profile.levels.empty()) b.plots = render_plots(profile);
  b.sources = std::move(sources);
  b.generated_at = generated_at;
  b.text = render_text_report(b.report, profile, generated_at);
  b.json = render_json(b.report, profile, generated_at);
  return b;
}

ReportBundle build_bundle_from_dir(const std::filesystem::path& in_dir,
                                   const DateTime& generated_at) {
  const auto ground_path = in_dir / firmware::kGroundFile;
  const auto air_path = in_dir / firmware::kAirFile;
  if (!std::filesystem::is_regular_file(ground_path)) {
    throw DomainError("missing " + ground_path.string());
  }
  const auto ground = wx::parse_log(read_file(ground_path));
  std::vector<LogRow> air;
  std::vector<std::string> sources{ground_path.string()};
  if (std::filesystem::is_regular_file(air_path)) {
    air = wx::parse_log(read_file(air_path));
    sources.push_back(air_path.string());
  }
  return make_bundle(wx::build_profile(air, ground), generated_at, std::move(sources));
}

void write_bundle(const ReportBundle& bundle, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir / "plots");
  write_file(out_dir / "report.txt", bundle.text);
  write_file(out_dir / "report.json", bundle.json);
  for (const auto& plot : bundle.plots) {
    write_file(out_dir / "plots" / (plot.name + ".svg"), plot.svg);
  }
}

}  // namespace asid::groundstation
