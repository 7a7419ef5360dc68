#include "asid/run_config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <type_traits>

#include <json.hpp>

#include "asid/error.hpp"

namespace asid {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

class Reader {
 public:
  Reader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw ConfigError(where() + " must be an object");
  }

  void allow(std::initializer_list<std::string_view> keys) const {
    for (const auto& [k, v] : obj_.items()) {
      bool known = false;
      for (auto key : keys) known = known || key == k;
      if (!known) throw ConfigError("unknown key '" + join(k) + "'");
    }
  }

  template <typename T>
  void get(const char* key, T& out) const {
    const auto it = obj_.find(key);
    if (it == obj_.end()) return;
    try {
      if constexpr (std::is_same_v<T, double>) {
        if (!it->is_number()) throw ConfigError("");
      } else if constexpr (std::is_unsigned_v<T>) {
        if (!it->is_number_unsigned()) throw ConfigError("");
      } else if constexpr (std::is_integral_v<T>) {
        if (!it->is_number_integer()) throw ConfigError("");
      }
      out = it->get<T>();
    } catch (const std::exception&) {
      throw ConfigError("'" + join(key) + "' has the wrong type");
    }
  }

  std::optional<Reader> child(const char* key) const {
    const auto it = obj_.find(key);
    if (it == obj_.end()) return std::nullopt;
    return Reader(*it, join(key));
  }

  const json& raw(const char* key) const { return obj_.at(key); }
  bool has(const char* key) const { return obj_.contains(key); }
  std::string join(std::string_view key) const {
    return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
  }

 private:
  std::string where() const { return path_.empty() ? "config" : "'" + path_ + "'"; }

  const json& obj_;
  std::string path_;
};

void read_airframe(const Reader& r, airframe::AirframeConfig& a) {
  r.allow({"motor", "n_motors", "prop", "battery", "total_mass_g", "frame_drag_coefficient",
           "body_drag_area_m2", "mtbf_hours", "hover_current_a"});
  if (auto m = r.child("motor")) {
    m->allow({"size_code", "kv_rpm_per_volt", "max_thrust_per_motor_gf", "operating_voltage_v"});
    m->get("size_code", a.motor.size_code);
    m->get("kv_rpm_per_volt", a.motor.kv_rpm_per_volt);
    m->get("max_thrust_per_motor_gf", a.motor.max_thrust_per_motor_gf);
    m->get("operating_voltage_v", a.motor.operating_voltage_v);
  }
  r.get("n_motors", a.n_motors);
  if (auto p = r.child("prop")) {
    p->allow({"diameter_in", "pitch_in", "max_rpm"});
    p->get("diameter_in", a.prop.diameter_in);
    p->get("pitch_in", a.prop.pitch_in);
    p->get("max_rpm", a.prop.max_rpm);
  }
  if (auto b = r.child("battery")) {
    b->allow({"capacity_mah", "c_rate", "nominal_cell_voltage_v", "cells"});
    b->get("capacity_mah", a.battery.capacity_mah);
    b->get("c_rate", a.battery.c_rate);
    b->get("nominal_cell_voltage_v", a.battery.nominal_cell_voltage_v);
    b->get("cells", a.battery.cells);
  }
  r.get("total_mass_g", a.total_mass_g);
  r.get("frame_drag_coefficient", a.frame_drag_coefficient);
  r.get("body_drag_area_m2", a.body_drag_area_m2);
  r.get("mtbf_hours", a.mtbf_hours);
  r.get("hover_current_a", a.hover_current_a);
}

void read_environment(const Reader& r, flightsim::Environment& e) {
  r.allow({"surface_temperature_c", "surface_pressure_hpa", "surface_humidity_pct",
           "temperature_lapse_c_per_m", "humidity_lapse_pct_per_m", "wind_kmh", "seed",
           "sensor_noise_sd"});
  r.get("surface_temperature_c", e.surface_temperature_c);
  r.get("surface_pressure_hpa", e.surface_pressure_hpa);
  r.get("surface_humidity_pct", e.surface_humidity_pct);
  r.get("temperature_lapse_c_per_m", e.temperature_lapse_c_per_m);
  r.get("humidity_lapse_pct_per_m", e.humidity_lapse_pct_per_m);
  r.get("wind_kmh", e.wind_kmh);
  r.get("seed", e.rng_seed);
  if (auto n = r.child("sensor_noise_sd")) {
    n->allow({"temperature_c", "humidity_pct", "pressure_pa"});
    n->get("temperature_c", e.sensor_noise_sd.temperature_c);
    n->get("humidity_pct", e.sensor_noise_sd.humidity_pct);
    n->get("pressure_pa", e.sensor_noise_sd.pressure_pa);
  }
}

void read_firmware(const Reader& r, firmware::FirmwareConfig& f) {
  r.allow({"elevation_m", "pressure_correction", "altimeter_slope_hpa_per_m", "interval_start_m",
           "interval_step_m", "server_threshold_m", "ground_samples", "setup_delay_ms",
           "ground_buzz_ms", "ground_delay_ms", "air_delay_ms", "server_buzz_ms", "rtc_start"});
  r.get("elevation_m", f.elevation_m);
  r.get("pressure_correction", f.pressure_correction);
  r.get("altimeter_slope_hpa_per_m", f.altimeter_slope_hpa_per_m);
  r.get("interval_start_m", f.interval_start_m);
  r.get("interval_step_m", f.interval_step_m);
  r.get("server_threshold_m", f.server_threshold_m);
  r.get("ground_samples", f.ground_samples);
  r.get("setup_delay_ms", f.setup_delay_ms);
  r.get("ground_buzz_ms", f.ground_buzz_ms);
  r.get("ground_delay_ms", f.ground_delay_ms);
  r.get("air_delay_ms", f.air_delay_ms);
  r.get("server_buzz_ms", f.server_buzz_ms);
  if (r.has("rtc_start")) {
    std::string text;
    r.get("rtc_start", text);
    try {
      f.rtc_start = DateTime::parse_iso(text);
    } catch (const ParseError&) {
      throw ConfigError("'firmware.rtc_start' is not an ISO date-time: '" + text + "'");
    }
  }
}

void read_mission(const Reader& r, RunConfig& cfg) {
  auto& m = cfg.mission;
  r.allow({"target_alt_m", "start_alt_m", "step_m", "headings_deg", "capture_dwell_s", "home",
           "ceiling_m"});
  r.get("target_alt_m", m.target_alt_m);
  r.get("start_alt_m", m.start_alt_m);
  r.get("step_m", m.step_m);
  if (r.has("headings_deg")) {
    const auto& h = r.raw("headings_deg");
    if (!h.is_array()) throw ConfigError("'mission.headings_deg' must be an array");
    m.headings_deg.clear();
    for (const auto& v : h) {
      if (!v.is_number()) throw ConfigError("'mission.headings_deg' must hold numbers");
      m.headings_deg.push_back(v.get<double>());
    }
  }
  r.get("capture_dwell_s", m.capture_dwell_s);
  if (auto home = r.child("home")) {
    home->allow({"lat_deg", "lon_deg"});
    home->get("lat_deg", m.home.lat_deg);
    home->get("lon_deg", m.home.lon_deg);
  }
  if (r.has("ceiling_m")) {
    double c = 0.0;
    r.get("ceiling_m", c);
    cfg.mission_ceiling_m = c;
  }
}

}  // namespace

void RunConfig::validate() const {
  airframe.validate();
  environment.validate();
  firmware.validate();
  const auto& m = mission;
  if (!(m.start_alt_m > 0.0) || !(m.target_alt_m >= m.start_alt_m) || !(m.step_m > 0.0)) {
    throw ConfigError("mission needs 0 < start_alt_m <= target_alt_m and step_m > 0");
  }
  if (!(m.capture_dwell_s >= 0.0)) throw ConfigError("mission.capture_dwell_s must be >= 0");
  for (double h : m.headings_deg) {
    if (!(h >= 0.0 && h <= 360.0)) throw ConfigError("mission headings must lie in [0, 360]");
  }
  if (mission_ceiling_m && !(*mission_ceiling_m > 0.0)) {
    throw ConfigError("mission.ceiling_m must be positive");
  }
  if (!(simulation.dt_s > 0.0 && simulation.dt_s <= 0.1)) {
    throw ConfigError("simulation.dt_s must lie in (0, 0.1]");
  }
  if (!(sizing.design_altitude_m >= 0.0 && sizing.design_altitude_m <= 11000.0)) {
    throw ConfigError("sizing.design_altitude_m must lie in [0, 11000]");
  }
  if (!(sizing.thrust_margin > 0.0) || !(sizing.flight_minutes > 0.0) ||
      !(sizing.usable_fraction > 0.0 && sizing.usable_fraction <= 1.0)) {
    throw ConfigError("sizing values must be positive, usable_fraction at most 1");
  }
}

RunConfig default_run_config() {
  RunConfig cfg;
  cfg.airframe = airframe::reference_airframe();
  // Calibrating at the take-off point keeps the linear altimeter at zero on
  // the ground, so the air thresholds act as heights above the pad.
  cfg.firmware.elevation_m = 0.0;
  cfg.firmware.rtc_start = DateTime{2021, 6, 1, 10, 0, 0};
  return cfg;
}

RunConfig parse_run_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  RunConfig cfg = default_run_config();
  const Reader root(doc, "");
  root.allow({"airframe", "environment", "firmware", "mission", "simulation", "sizing"});
  if (auto a = root.child("airframe")) read_airframe(*a, cfg.airframe);
  if (auto e = root.child("environment")) read_environment(*e, cfg.environment);
  if (auto f = root.child("firmware")) read_firmware(*f, cfg.firmware);
  if (auto m = root.child("mission")) read_mission(*m, cfg);
  if (auto s = root.child("simulation")) {
    s->allow({"dt_s"});
    s->get("dt_s", cfg.simulation.dt_s);
  }
  if (auto s = root.child("sizing")) {
    s->allow({"design_altitude_m", "thrust_margin", "flight_minutes", "usable_fraction"});
    s->get("design_altitude_m", cfg.sizing.design_altitude_m);
    s->get("thrust_margin", cfg.sizing.thrust_margin);
    s->get("flight_minutes", cfg.sizing.flight_minutes);
    s->get("usable_fraction", cfg.sizing.usable_fraction);
  }
  cfg.validate();
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

std::string to_json(const RunConfig& cfg) {
  const auto& a = cfg.airframe;
  const auto& e = cfg.environment;
  const auto& f = cfg.firmware;
  const auto& m = cfg.mission;
  ordered_json j;
  j["airframe"] = {
      {"motor",
       {{"size_code", a.motor.size_code},
        {"kv_rpm_per_volt", a.motor.kv_rpm_per_volt},
        {"max_thrust_per_motor_gf", a.motor.max_thrust_per_motor_gf},
        {"operating_voltage_v", a.motor.operating_voltage_v}}},
      {"n_motors", a.n_motors},
      {"prop",
       {{"diameter_in", a.prop.diameter_in},
        {"pitch_in", a.prop.pitch_in},
        {"max_rpm", a.prop.max_rpm}}},
      {"battery",
       {{"capacity_mah", a.battery.capacity_mah},
        {"c_rate", a.battery.c_rate},
        {"nominal_cell_voltage_v", a.battery.nominal_cell_voltage_v},
        {"cells", a.battery.cells}}},
      {"total_mass_g", a.total_mass_g},
      {"frame_drag_coefficient", a.frame_drag_coefficient},
      {"body_drag_area_m2", a.body_drag_area_m2},
      {"mtbf_hours", a.mtbf_hours},
      {"hover_current_a", a.hover_current_a},
  };
  j["environment"] = {
      {"surface_temperature_c", e.surface_temperature_c},
      {"surface_pressure_hpa", e.surface_pressure_hpa},
      {"surface_humidity_pct", e.surface_humidity_pct},
      {"temperature_lapse_c_per_m", e.temperature_lapse_c_per_m},
      {"humidity_lapse_pct_per_m", e.humidity_lapse_pct_per_m},
      {"wind_kmh", e.wind_kmh},
      {"seed", e.rng_seed},
      {"sensor_noise_sd",
       {{"temperature_c", e.sensor_noise_sd.temperature_c},
        {"humidity_pct", e.sensor_noise_sd.humidity_pct},
        {"pressure_pa", e.sensor_noise_sd.pressure_pa}}},
  };
  j["firmware"] = {
      {"elevation_m", f.elevation_m},
      {"pressure_correction", f.pressure_correction},
      {"altimeter_slope_hpa_per_m", f.altimeter_slope_hpa_per_m},
      {"interval_start_m", f.interval_start_m},
      {"interval_step_m", f.interval_step_m},
      {"server_threshold_m", f.server_threshold_m},
      {"ground_samples", f.ground_samples},
      {"setup_delay_ms", f.setup_delay_ms},
      {"ground_buzz_ms", f.ground_buzz_ms},
      {"ground_delay_ms", f.ground_delay_ms},
      {"air_delay_ms", f.air_delay_ms},
      {"server_buzz_ms", f.server_buzz_ms},
      {"rtc_start", f.rtc_start.iso()},
  };
  j["mission"] = {
      {"target_alt_m", m.target_alt_m},
      {"start_alt_m", m.start_alt_m},
      {"step_m", m.step_m},
      {"headings_deg", m.headings_deg},
      {"capture_dwell_s", m.capture_dwell_s},
      {"home", {{"lat_deg", m.home.lat_deg}, {"lon_deg", m.home.lon_deg}}},
  };
  if (cfg.mission_ceiling_m) j["mission"]["ceiling_m"] = *cfg.mission_ceiling_m;
  j["simulation"] = {{"dt_s", cfg.simulation.dt_s}};
  j["sizing"] = {
      {"design_altitude_m", cfg.sizing.design_altitude_m},
      {"thrust_margin", cfg.sizing.thrust_margin},
      {"flight_minutes", cfg.sizing.flight_minutes},
      {"usable_fraction", cfg.sizing.usable_fraction},
  };
  return j.dump(2) + "\n";
}

}  // namespace asid
