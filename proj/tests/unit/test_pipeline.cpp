#include <gtest/gtest.h>

#include <algorithm>

#include "asid/error.hpp"
#include "asid/pipeline.hpp"
#include "asid/wxindices.hpp"
#include "unit/test_util.hpp"

using namespace asid;

namespace {

const std::filesystem::path kGolden{ASID_GOLDEN_DIR};

std::size_t lines(const std::optional<std::string>& s) {
  return s ? static_cast<std::size_t>(std::count(s->begin(), s->end(), '\n')) : 0u;
}

RunConfig noisy(std::uint64_t seed) {
  auto cfg = default_run_config();
  cfg.environment.rng_seed = seed;
  cfg.environment.sensor_noise_sd = {0.2, 1.0, 2.0};
  return cfg;
}

}  // namespace

TEST(Pipeline, GoldenRun) {
  const auto out = simulate(default_run_config());
  EXPECT_EQ(lines(out.sd.read("ground.csv")), 6u);
  EXPECT_EQ(lines(out.sd.read("air.csv")), 7u);
  EXPECT_EQ(*out.sd.read("ground.csv"), test::read_file(kGolden / "ground.csv"));
  EXPECT_EQ(*out.sd.read("air.csv"), test::read_file(kGolden / "air.csv"));
  EXPECT_EQ(out.station.phase, firmware::Phase::Serving);
  EXPECT_EQ(out.trajectory.camera_events.size(), 16u);
  EXPECT_TRUE(out.sd.exists("photos.json"));
}

TEST(Pipeline, TakeoffFollowsGroundPhase) {
  const auto out = simulate(default_run_config());
  std::int64_t last_ground = -1, first_air = -1, phase_change = -1;
  for (const auto& e : out.effects) {
    if (e.kind == firmware::EffectKind::GroundLogged) last_ground = e.clock_ms;
    if (e.kind == firmware::EffectKind::AirLogged && first_air < 0) first_air = e.clock_ms;
    if (e.kind == firmware::EffectKind::PhaseChanged && phase_change < 0) phase_change = e.clock_ms;
  }
  EXPECT_LT(last_ground, phase_change);
  EXPECT_LE(phase_change, out.takeoff_ms);
  EXPECT_GT(first_air, out.takeoff_ms);
}

TEST(Pipeline, Deterministic) {
  const auto a = simulate(noisy(11));
  const auto b = simulate(noisy(11));
  EXPECT_EQ(a.sd.read("ground.csv"), b.sd.read("ground.csv"));
  EXPECT_EQ(a.sd.read("air.csv"), b.sd.read("air.csv"));
  EXPECT_EQ(flightsim::trajectory_csv(a.trajectory), flightsim::trajectory_csv(b.trajectory));
}

TEST(Pipeline, SeedChangesValuesNotCounts) {
  const auto a = simulate(noisy(1));
  const auto b = simulate(noisy(2));
  EXPECT_EQ(lines(a.sd.read("ground.csv")), 6u);
  EXPECT_EQ(lines(b.sd.read("ground.csv")), 6u);
  EXPECT_EQ(lines(a.sd.read("air.csv")), 7u);
  EXPECT_EQ(lines(b.sd.read("air.csv")), 7u);
  EXPECT_NE(a.sd.read("ground.csv"), b.sd.read("ground.csv"));
  EXPECT_NE(a.sd.read("air.csv"), b.sd.read("air.csv"));
}

TEST(Pipeline, NoisyLogsStillParse) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto out = simulate(noisy(seed));
    const auto profile = wx::build_profile(wx::parse_log(*out.sd.read("air.csv")),
                                           wx::parse_log(*out.sd.read("ground.csv")));
    EXPECT_EQ(profile.levels.size(), 7u) << seed;
  }
}

TEST(Pipeline, CeilingViolationRefused) {
  auto cfg = default_run_config();
  cfg.mission_ceiling_m = 30.0;
  EXPECT_THROW(simulate(cfg), SimulationError);
}

TEST(Pipeline, InvalidConfigRefused) {
  auto cfg = default_run_config();
  cfg.simulation.dt_s = 0.0;
  EXPECT_THROW(simulate(cfg), ConfigError);
}

TEST(Pipeline, WritesAllFiles) {
  test::TempDir dir("pipeline");
  const auto out = simulate(default_run_config());
  write_simulation(out, dir.path());
  for (const char* f : {"ground.csv", "air.csv", "photos.json", "trajectory.csv"}) {
    EXPECT_TRUE(std::filesystem::exists(dir.path() / f)) << f;
  }
  EXPECT_EQ(test::read_file(dir.path() / "air.csv"), test::read_file(kGolden / "air.csv"));
  EXPECT_EQ(test::read_file(dir.path() / "trajectory.csv").rfind("t,altitude,vertical_speed,heading\n", 0), 0u);
}
