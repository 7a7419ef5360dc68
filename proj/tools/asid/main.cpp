// asid: sounding-flight simulator, station file server and report generator.

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "asid/airframe.hpp"
#include "asid/error.hpp"
#include "asid/groundstation.hpp"
#include "asid/mission.hpp"
#include "asid/pipeline.hpp"
#include "asid/run_config.hpp"
#include "asid/synclink.hpp"
#include "asid/units.hpp"

namespace fs = std::filesystem;
using namespace asid;

namespace {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kConfig = 2,
  kSimulation = 3,
  kTransport = 4,
  kData = 5,
};

std::atomic<bool> g_interrupted{false};

extern "C" void on_signal(int) { g_interrupted.store(true); }

void init_logging() {
  auto logger = spdlog::stderr_color_mt("asid");
  logger->set_pattern("%^[%l]%$ %v");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::info);
  if (const char* env = std::getenv("ASID_LOG")) {
    const auto level = spdlog::level::from_str(env);
    // from_str maps unknown names to "off"; only honour it when asked for.
    if (level != spdlog::level::off || std::string_view(env) == "off") spdlog::set_level(level);
  }
}

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw DomainError("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& p, const std::string& text) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << text;
  out.close();
  if (!out) throw Error("cannot write " + p.string());
}

RunConfig config_or_default(const std::string& path) {
  return path.empty() ? default_run_config() : load_run_config(path);
}

DateTime report_timestamp(const std::string& flag) {
  if (!flag.empty()) return DateTime::parse_iso(flag);
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    try {
      return DateTime::from_epoch_seconds(std::stoll(epoch));
    } catch (const std::exception&) {
      throw ParseError(0, std::string("SOURCE_DATE_EPOCH is not an integer: ") + epoch);
    }
  }
  const auto now = std::chrono::system_clock::now().time_since_epoch();
  return DateTime::from_epoch_seconds(std::chrono::duration_cast<std::chrono::seconds>(now).count());
}

synclink::Target parse_target(const std::string& which) {
  if (which == "air") return synclink::Target::Air;
  if (which == "ground") return synclink::Target::Ground;
  throw CLI::ValidationError("--which", "expected 'air' or 'ground'");
}

// ---- subcommands ----

struct SimulateArgs {
  std::string config, out, mission;
  std::optional<std::uint64_t> seed;
};

int run_simulate(const SimulateArgs& a) {
  RunConfig cfg = config_or_default(a.config);
  if (a.seed) cfg.environment.rng_seed = *a.seed;
  std::optional<mission::MissionPlan> plan;
  if (!a.mission.empty()) plan = mission::parse(read_text(a.mission));

  const auto out = simulate(cfg, plan);
  write_simulation(out, a.out);
  const auto ground = out.sd.read(firmware::kGroundFile).value_or("");
  const auto air = out.sd.read(firmware::kAirFile).value_or("");
  auto rows = [](const std::string& s) { return std::count(s.begin(), s.end(), '\n'); };
  spdlog::info("flight {:.1f} s, max altitude {:.1f} m, {} photos", out.trajectory.duration_s,
               out.trajectory.max_altitude(), out.trajectory.camera_events.size());
  spdlog::info("station: {} ground rows, {} air rows, phase {}", rows(ground), rows(air),
               firmware::to_string(out.station.phase));
  if (out.trajectory.battery_exhausted) spdlog::warn("battery exhausted before touchdown");
  for (const auto& e : out.effects) {
    if (e.kind == firmware::EffectKind::WriteFailed) {
      spdlog::warn("write failure on {} at {} ms", e.file, e.clock_ms);
    }
  }
  fmt::print("wrote {}\n", a.out);
  return kOk;
}

struct ServeArgs {
  std::string sdcard, bind = "127.0.0.1";
  int port = 8080;
  std::size_t max_requests = 0;
};

int run_serve(const ServeArgs& a) {
  if (!fs::is_directory(a.sdcard)) throw DomainError("no SD-card directory at " + a.sdcard);
  auto sd = firmware::SdCardImage::open_directory(a.sdcard);
  synclink::FileServer server(sd, a.bind, static_cast<std::uint16_t>(a.port));
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  fmt::print("serving {} on {}:{}\n", a.sdcard, a.bind, server.port());
  std::fflush(stdout);
  server.start_background();
  while (!g_interrupted.load()) {
    if (a.max_requests > 0 && server.served() >= a.max_requests) break;
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
  }
  server.stop();
  spdlog::info("served {} file(s)", server.served());
  return kOk;
}

struct FetchArgs {
  std::string host = "127.0.0.1", which = "air", out;
  int port = 8080;
  int timeout_ms = 10000;
};

int run_fetch(const FetchArgs& a) {
  const auto body = synclink::fetch(a.host, static_cast<std::uint16_t>(a.port), parse_target(a.which),
                                    std::chrono::milliseconds(a.timeout_ms));
  if (a.out.empty()) {
    std::cout << body;
  } else {
    write_text(a.out, body);
  }
  return kOk;
}

struct SyncArgs {
  std::string host = "127.0.0.1", out;
  int port = 8080;
  int timeout_ms = 10000;
};

int run_sync(const SyncArgs& a) {
  const auto result = synclink::sync(a.host, static_cast<std::uint16_t>(a.port),
                                     std::chrono::milliseconds(a.timeout_ms));
  synclink::persist(result, a.out);
  fmt::print("synced {} + {} bytes into {}\n", result.air.size(), result.ground.size(), a.out);
  return kOk;
}

struct ReportArgs {
  std::string in, out, timestamp;
};

int run_report(const ReportArgs& a) {
  const auto bundle = groundstation::build_bundle_from_dir(a.in, report_timestamp(a.timestamp));
  groundstation::write_bundle(bundle, a.out);
  std::cout << bundle.text;
  return kOk;
}

struct SizingArgs {
  std::string config;
  double drift_seconds = 180.0;
};

int run_sizing(const SizingArgs& a) {
  const RunConfig cfg = config_or_default(a.config);
  const auto& af = cfg.airframe;
  const auto& sz = cfg.sizing;
  const double tw = airframe::thrust_to_weight(af);
  const double ceiling = airframe::service_ceiling(af);
  const double target = sz.thrust_margin * af.total_mass_g;
  const double required = airframe::required_static_thrust(target, sz.design_altitude_m);
  const double vmax = airframe::max_progressive_speed(af);
  const double hover_s = airframe::endurance(af.battery, af.hover_current_a, sz.usable_fraction);

  fmt::print("airframe            {} x {} KV{:.0f}, {:g}x{:g} props, {:.0f} g\n", af.n_motors,
             af.motor.size_code, af.motor.kv_rpm_per_volt, af.prop.diameter_in, af.prop.pitch_in,
             af.total_mass_g);
  fmt::print("T/W (sea level)     {:.3f}\n", tw);
  fmt::print("service ceiling     {:.0f} m ({:.0f} ft)\n", ceiling, units::meters_to_feet(ceiling));
  fmt::print("static thrust for T/W {:g} at {:.0f} m: {:.0f} g total, {:.1f} g per motor\n",
             sz.thrust_margin, sz.design_altitude_m, required, required / af.n_motors);
  fmt::print("max speed           {:.1f} km/h\n", vmax);
  fmt::print("battery max load    {:.0f} A\n", airframe::battery_max_load(af.battery));
  fmt::print("hover endurance     {:.1f} min ({:.0f}% usable)\n", hover_s / 60.0,
             sz.usable_fraction * 100.0);
  fmt::print("expected flights    {} (MTBF {:g} h, {:g} min flights)\n",
             airframe::expected_flights(af.mtbf_hours, sz.flight_minutes), af.mtbf_hours,
             sz.flight_minutes);
  fmt::print("drift over {:.0f} s:\n", a.drift_seconds);
  for (int bft = 9; bft <= 12; ++bft) {
    const double wind = airframe::beaufort_to_kmh(bft);
    fmt::print("  {:>2} Bft  {:>5.0f} km/h  {:>6.0f} m\n", bft, wind,
               airframe::wind_drift(wind, vmax, a.drift_seconds));
  }
  return kOk;
}

struct MissionGenArgs {
  std::string config, out;
};

int run_mission_gen(const MissionGenArgs& a) {
  const RunConfig cfg = config_or_default(a.config);
  const auto text = mission::serialize(mission::generate_sounding_profile(cfg.mission));
  if (a.out.empty()) {
    std::cout << text;
  } else {
    write_text(a.out, text);
  }
  return kOk;
}

struct MissionValidateArgs {
  std::string file, config;
  std::optional<double> ceiling;
};

int run_mission_validate(const MissionValidateArgs& a) {
  const auto plan = mission::parse(read_text(a.file));
  const RunConfig cfg = config_or_default(a.config);
  double ceiling = a.ceiling ? *a.ceiling : airframe::service_ceiling(cfg.airframe);
  if (!a.ceiling && cfg.mission_ceiling_m) ceiling = std::min(ceiling, *cfg.mission_ceiling_m);
  const auto violations = mission::validate(plan, ceiling);
  for (const auto& v : violations) {
    if (v.command_index == mission::Violation::kPlanLevel) {
      fmt::print("plan: {}\n", v.message);
    } else {
      fmt::print("command {}: {}\n", v.command_index + 1, v.message);
    }
  }
  if (!violations.empty()) return kData;
  fmt::print("ok: {} commands, {} photos, max altitude {:.1f} m (ceiling {:.0f} m)\n",
             plan.commands.size(), mission::capture_count(plan), plan.max_altitude(), ceiling);
  return kOk;
}

struct ConfigArgs {
  std::string config, out;
};

int run_config(const ConfigArgs& a) {
  const auto text = to_json(config_or_default(a.config));
  if (a.out.empty()) {
    std::cout << text;
  } else {
    write_text(a.out, text);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  init_logging();

  CLI::App app{"ASID sounding drone: simulation, station file server and ground-station reports"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "asid 0.1.0");

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "Fly the sounding mission and write the SD-card image");
  c_sim->add_option("--config", sim.config, "Run configuration (JSON); golden defaults if omitted")
      ->check(CLI::ExistingFile);
  c_sim->add_option("--out", sim.out, "Output directory")->required();
  c_sim->add_option("--seed", sim.seed, "Override the environment RNG seed");
  c_sim->add_option("--mission", sim.mission, "Fly this mission file instead of the generated one")
      ->check(CLI::ExistingFile);

  ServeArgs serve;
  auto* c_serve = app.add_subcommand("serve", "Serve an SD-card directory like the station does");
  c_serve->add_option("--sdcard", serve.sdcard, "SD-card directory")->required();
  c_serve->add_option("--port", serve.port, "TCP port (0 picks a free one)")
      ->check(CLI::Range(0, 65535));
  c_serve->add_option("--bind", serve.bind, "IPv4 bind address");
  c_serve->add_option("--max-requests", serve.max_requests, "Exit after serving this many files");

  FetchArgs fetch;
  auto* c_fetch = app.add_subcommand("fetch", "Download one log file from a station");
  c_fetch->add_option("--host", fetch.host, "Station host");
  c_fetch->add_option("--port", fetch.port, "Station port")->check(CLI::Range(1, 65535));
  c_fetch->add_option("--which", fetch.which, "air or ground")->check(CLI::IsMember({"air", "ground"}));
  c_fetch->add_option("--out", fetch.out, "Output file (stdout if omitted)");
  c_fetch->add_option("--timeout-ms", fetch.timeout_ms, "Connect/read timeout")
      ->check(CLI::PositiveNumber);

  SyncArgs sync;
  auto* c_sync = app.add_subcommand("sync", "Fetch air.csv then ground.csv into a directory");
  c_sync->add_option("--host", sync.host, "Station host");
  c_sync->add_option("--port", sync.port, "Station port")->required()->check(CLI::Range(1, 65535));
  c_sync->add_option("--out", sync.out, "Output directory")->required();
  c_sync->add_option("--timeout-ms", sync.timeout_ms, "Connect/read timeout")
      ->check(CLI::PositiveNumber);

  ReportArgs report;
  auto* c_report = app.add_subcommand("report", "Build the weather report and plots from the logs");
  c_report->add_option("--in", report.in, "Directory holding ground.csv and air.csv")
      ->required()
      ->check(CLI::ExistingDirectory);
  c_report->add_option("--out", report.out, "Output directory")->required();
  c_report->add_option("--timestamp", report.timestamp,
                       "Processing time, ISO 8601 (default: SOURCE_DATE_EPOCH, then now)");

  SizingArgs sizing;
  auto* c_sizing = app.add_subcommand("sizing", "Print airframe performance figures");
  c_sizing->add_option("--config", sizing.config, "Run configuration (JSON)")
      ->check(CLI::ExistingFile);
  c_sizing->add_option("--drift-seconds", sizing.drift_seconds, "Flight time for the drift table")
      ->check(CLI::NonNegativeNumber);

  auto* c_mission = app.add_subcommand("mission", "Generate or validate mission files");
  c_mission->require_subcommand(1);
  MissionGenArgs mgen;
  auto* c_mgen = c_mission->add_subcommand("gen", "Write the sounding mission for a configuration");
  c_mgen->add_option("--config", mgen.config, "Run configuration (JSON)")->check(CLI::ExistingFile);
  c_mgen->add_option("--out", mgen.out, "Mission file (stdout if omitted)");
  MissionValidateArgs mval;
  auto* c_mval = c_mission->add_subcommand("validate", "Check a mission file");
  c_mval->add_option("file", mval.file, "Mission file")->required()->check(CLI::ExistingFile);
  c_mval->add_option("--config", mval.config, "Airframe configuration for the ceiling")
      ->check(CLI::ExistingFile);
  c_mval->add_option("--ceiling", mval.ceiling, "Altitude ceiling in m");

  ConfigArgs conf;
  auto* c_conf = app.add_subcommand("config", "Print the effective configuration with every key filled in");
  c_conf->add_option("--config", conf.config, "Run configuration (JSON); golden defaults if omitted")
      ->check(CLI::ExistingFile);
  c_conf->add_option("--out", conf.out, "Output file (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (c_sim->parsed()) return run_simulate(sim);
    if (c_serve->parsed()) return run_serve(serve);
    if (c_fetch->parsed()) return run_fetch(fetch);
    if (c_sync->parsed()) return run_sync(sync);
    if (c_report->parsed()) return run_report(report);
    if (c_sizing->parsed()) return run_sizing(sizing);
    if (c_mgen->parsed()) return run_mission_gen(mgen);
    if (c_mval->parsed()) return run_mission_validate(mval);
    if (c_conf->parsed()) return run_config(conf);
  } catch (const ConfigError& e) {
    spdlog::error("config: {}", e.what());
    return kConfig;
  } catch (const SimulationError& e) {
    spdlog::error("simulation: {}", e.what());
    return kSimulation;
  } catch (const TransportError& e) {
    spdlog::error("transport: {}", e.what());
    return kTransport;
  } catch (const ProtocolError& e) {
    spdlog::error("protocol: {}", e.what());
    return kTransport;
  } catch (const Error& e) {
    spdlog::error("{}", e.what());
    return kData;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kData;
  }
  return kUsage;
}
