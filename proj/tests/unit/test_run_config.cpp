#include <gtest/gtest.h>

#include "asid/error.hpp"
#include "asid/run_config.hpp"
#include "unit/test_util.hpp"

using namespace asid;

namespace {

const std::filesystem::path kConfigs = std::filesystem::path(ASID_TEST_DATA_DIR) / ".." / ".." / "configs";

void expect_config_error(const std::string& text) {
  EXPECT_THROW(parse_run_config(text), ConfigError) << text;
}

}  // namespace

TEST(RunConfig, Defaults) {
  const auto cfg = default_run_config();
  EXPECT_NO_THROW(cfg.validate());
  EXPECT_EQ(cfg.firmware.elevation_m, 0.0);
  EXPECT_EQ(cfg.firmware.rtc_start, (DateTime{2021, 6, 1, 10, 0, 0}));
  EXPECT_EQ(cfg.airframe.total_mass_g, 2000.0);
  EXPECT_EQ(cfg.environment.sensor_noise_sd.temperature_c, 0.0);
  EXPECT_FALSE(cfg.mission_ceiling_m.has_value());
  EXPECT_EQ(cfg.simulation.dt_s, 0.01);
}

TEST(RunConfig, EmptyDocumentKeepsDefaults) {
  EXPECT_EQ(to_json(parse_run_config("{}")), to_json(default_run_config()));
}

TEST(RunConfig, PartialOverride) {
  const auto cfg = parse_run_config(R"({"environment": {"seed": 7, "wind_kmh": 20},
                                        "mission": {"target_alt_m": 50, "ceiling_m": 120}})");
  EXPECT_EQ(cfg.environment.rng_seed, 7u);
  EXPECT_EQ(cfg.environment.wind_kmh, 20.0);
  EXPECT_EQ(cfg.mission.target_alt_m, 50.0);
  EXPECT_EQ(cfg.mission_ceiling_m, 120.0);
  EXPECT_EQ(cfg.mission.start_alt_m, 10.0);
}

TEST(RunConfig, RoundTrip) {
  auto cfg = default_run_config();
  cfg.environment.rng_seed = 99;
  cfg.environment.sensor_noise_sd.pressure_pa = 3.5;
  cfg.mission.headings_deg = {45.0, 135.0};
  cfg.mission_ceiling_m = 80.0;
  cfg.firmware.rtc_start = DateTime{2022, 1, 31, 23, 59, 58};
  const auto text = to_json(cfg);
  EXPECT_EQ(to_json(parse_run_config(text)), text);
}

TEST(RunConfig, RejectsUnknownKeys) {
  expect_config_error(R"({"airframe": {"mass_g": 2000}})");
  expect_config_error(R"({"extra": 1})");
  expect_config_error(R"({"environment": {"sensor_noise_sd": {"wind": 1}}})");
}

TEST(RunConfig, RejectsWrongTypes) {
  expect_config_error(R"({"airframe": {"total_mass_g": "2000"}})");
  expect_config_error(R"({"airframe": {"n_motors": 4.5}})");
  expect_config_error(R"({"environment": {"seed": -1}})");
  expect_config_error(R"({"mission": {"headings_deg": 90}})");
  expect_config_error(R"({"firmware": {"rtc_start": "yesterday"}})");
  expect_config_error(R"([])");
  expect_config_error(R"({"airframe": )");
}

TEST(RunConfig, RejectsInvalidValues) {
  expect_config_error(R"({"airframe": {"total_mass_g": -1}})");
  expect_config_error(R"({"environment": {"surface_humidity_pct": 120}})");
  expect_config_error(R"({"simulation": {"dt_s": 0.5}})");
  expect_config_error(R"({"mission": {"start_alt_m": 50, "target_alt_m": 40}})");
  expect_config_error(R"({"mission": {"ceiling_m": 0}})");
  expect_config_error(R"({"sizing": {"usable_fraction": 1.5}})");
}

TEST(RunConfig, ShippedConfigsLoad) {
  const auto def = load_run_config(kConfigs / "default.json");
  EXPECT_EQ(to_json(def), to_json(default_run_config()));
  EXPECT_EQ(to_json(def), test::read_file(kConfigs / "default.json"));
  const auto noisy = load_run_config(kConfigs / "noisy.json");
  EXPECT_GT(noisy.environment.sensor_noise_sd.temperature_c, 0.0);
  EXPECT_THROW(load_run_config(kConfigs / "missing.json"), ConfigError);
}
