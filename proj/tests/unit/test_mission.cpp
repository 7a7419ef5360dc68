#include <gtest/gtest.h>

#include <cmath>

#include "asid/error.hpp"
#include "asid/mission.hpp"
#include "unit/test_util.hpp"

using namespace asid;
using namespace asid::mission;

namespace {

std::vector<double> capture_altitudes(const MissionPlan& plan) {
  std::vector<double> out;
  for (const auto& c : plan.commands) {
    if (c.kind == CommandKind::DoDigicamControl) out.push_back(c.alt_m);
  }
  return out;
}

SoundingParams params(double target, double start = 10.0, double step = 10.0) {
  SoundingParams p;
  p.target_alt_m = target;
  p.start_alt_m = start;
  p.step_m = step;
  return p;
}

}  // namespace

TEST(Mission, CommandNamesRoundTrip) {
  for (auto k : {CommandKind::Takeoff, CommandKind::Waypoint, CommandKind::ConditionYaw,
                 CommandKind::Delay, CommandKind::DoDigicamControl, CommandKind::Land}) {
    EXPECT_EQ(parse_command_kind(to_string(k)), k);
  }
  EXPECT_FALSE(parse_command_kind("RTL").has_value());
}

TEST(Mission, SingleLevel) {
  const auto plan = generate_sounding_profile(params(10.0));
  EXPECT_EQ(capture_count(plan), 4u);
  EXPECT_EQ(sounding_levels(10, 10, 10), std::vector<double>{10.0});
}

TEST(Mission, ThreeLevelsWithDelayPattern) {
  const auto plan = generate_sounding_profile(params(30.0));
  EXPECT_EQ(capture_count(plan), 12u);
  EXPECT_EQ(sounding_levels(30, 10, 10), (std::vector<double>{10, 20, 30}));
  // Every capture sits between DELAY 1 and DELAY 3.
  const auto& c = plan.commands;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].kind != CommandKind::DoDigicamControl) continue;
    ASSERT_GT(i, 1u);
    EXPECT_EQ(c[i - 2].kind, CommandKind::ConditionYaw);
    EXPECT_EQ(c[i - 1].kind, CommandKind::Delay);
    EXPECT_EQ(c[i - 1].params[0], 1.0);
    EXPECT_EQ(c[i + 1].kind, CommandKind::Delay);
    EXPECT_EQ(c[i + 1].params[0], 3.0);
  }
}

TEST(Mission, TargetClampsLastLevel) {
  const auto plan = generate_sounding_profile(params(35.0));
  EXPECT_EQ(capture_count(plan), 16u);
  EXPECT_EQ(sounding_levels(35, 10, 10), (std::vector<double>{10, 20, 30, 35}));
  const auto alts = capture_altitudes(plan);
  EXPECT_EQ(alts.front(), 10.0);
  EXPECT_EQ(alts.back(), 35.0);
}

TEST(Mission, ShapeOfGeneratedPlan) {
  const auto plan = generate_sounding_profile(params(40.0));
  ASSERT_FALSE(plan.commands.empty());
  EXPECT_EQ(plan.commands.front().kind, CommandKind::Takeoff);
  EXPECT_EQ(plan.commands.front().alt_m, 10.0);
  EXPECT_EQ(plan.commands.back().kind, CommandKind::Land);
  // Descends back to the start level before landing.
  const auto& before_land = plan.commands[plan.commands.size() - 3];
  EXPECT_EQ(before_land.kind, CommandKind::Waypoint);
  EXPECT_EQ(before_land.alt_m, 10.0);
  EXPECT_DOUBLE_EQ(plan.max_altitude(), 40.0);
}

TEST(Mission, HeadingsNormalizeFullCircle) {
  auto p = params(10.0);
  p.headings_deg = {90, 180, 270, 360};
  const auto plan = generate_sounding_profile(p);
  std::vector<double> yaws;
  for (const auto& c : plan.commands) {
    if (c.kind == CommandKind::ConditionYaw) yaws.push_back(c.params[0]);
  }
  EXPECT_EQ(yaws, (std::vector<double>{90, 180, 270, 0}));
  EXPECT_TRUE(validate(plan, 100.0).empty());
}

TEST(Mission, GeneratorRejectsBadParams) {
  EXPECT_THROW(generate_sounding_profile(params(5.0, 10.0)), DomainError);
  EXPECT_THROW(generate_sounding_profile(params(30.0, 10.0, 0.0)), DomainError);
}

TEST(Mission, GeneratedPlansValidate) {
  test::Gen gen(7);
  for (int i = 0; i < 200; ++i) {
    const double start = gen.uniform(1.0, 50.0);
    const double target = start + gen.uniform(0.0, 300.0);
    const double step = gen.uniform(1.0, 60.0);
    auto p = params(target, start, step);
    p.headings_deg.clear();
    const int n = gen.integer(0, 6);
    for (int k = 0; k < n; ++k) p.headings_deg.push_back(gen.uniform(0.0, 360.0));
    const auto plan = generate_sounding_profile(p);
    EXPECT_TRUE(validate(plan, target).empty()) << "case " << i;
    EXPECT_EQ(capture_count(plan), p.headings_deg.size() * sounding_levels(target, start, step).size());
  }
}

TEST(Mission, ValidationViolations) {
  const auto plan = generate_sounding_profile(params(40.0));
  EXPECT_TRUE(validate(plan, 6096.0).empty());

  auto bad_first = plan;
  bad_first.commands.front().kind = CommandKind::Waypoint;
  const auto v1 = validate(bad_first, 6096.0);
  ASSERT_EQ(v1.size(), 1u);
  EXPECT_EQ(v1[0].command_index, 0u);

  auto too_high = plan;
  too_high.commands[5].alt_m = 7000.0;
  const auto v2 = validate(too_high, 6096.0);
  ASSERT_EQ(v2.size(), 1u);
  EXPECT_EQ(v2[0].command_index, 5u);
  EXPECT_NE(v2[0].message.find("ceiling"), std::string::npos);

  auto bad_yaw = plan;
  for (auto& c : bad_yaw.commands) {
    if (c.kind == CommandKind::ConditionYaw) {
      c.params[0] = 360.0;
      break;
    }
  }
  EXPECT_EQ(validate(bad_yaw, 6096.0).size(), 1u);

  auto neg_delay = plan;
  for (auto& c : neg_delay.commands) {
    if (c.kind == CommandKind::Delay) {
      c.params[0] = -1.0;
      break;
    }
  }
  EXPECT_EQ(validate(neg_delay, 6096.0).size(), 1u);

  EXPECT_EQ(validate(MissionPlan{}, 100.0).size(), 1u);
}

TEST(Mission, SerializeParseRoundTrip) {
  const auto plan = generate_sounding_profile(params(40.0));
  EXPECT_EQ(parse(serialize(plan)), plan);
  const auto text = serialize(plan);
  EXPECT_EQ(serialize(parse(text)), text);
  EXPECT_EQ(text.rfind(std::string(kMissionHeader), 0), 0u);
}

TEST(Mission, EmptyPlanRoundTrips) {
  MissionPlan empty;
  EXPECT_EQ(parse(serialize(empty)), empty);
}

TEST(Mission, RandomPlansRoundTrip) {
  test::Gen gen(11);
  const CommandKind kinds[] = {CommandKind::Takeoff, CommandKind::Waypoint, CommandKind::ConditionYaw,
                               CommandKind::Delay, CommandKind::DoDigicamControl, CommandKind::Land};
  for (int i = 0; i < 300; ++i) {
    MissionPlan plan;
    plan.home = {gen.uniform(-90, 90), gen.uniform(-180, 180)};
    const int n = gen.integer(0, 25);
    for (int k = 0; k < n; ++k) {
      MissionCommand c;
      c.kind = kinds[gen.integer(0, 5)];
      for (auto& p : c.params) p = gen.uniform(-1000, 1000);
      c.lat_deg = gen.uniform(-90, 90);
      c.lon_deg = gen.uniform(-180, 180);
      c.alt_m = gen.uniform(0, 6000);
      plan.commands.push_back(c);
    }
    const auto text = serialize(plan);
    ASSERT_EQ(parse(text), plan) << text;
    EXPECT_EQ(serialize(parse(text)), text);
  }
}

TEST(Mission, ParsesSampleMission) {
  const auto plan = parse(test::read_file(std::string(ASID_TEST_DATA_DIR) + "/sample_mission.csv"));
  ASSERT_EQ(plan.commands.size(), 19u);
  EXPECT_EQ(plan.commands.front().kind, CommandKind::Takeoff);
  EXPECT_EQ(plan.commands.front().alt_m, 40.0);
  EXPECT_EQ(capture_count(plan), 4u);
  EXPECT_EQ(plan.commands[2].params[0], 270.0);
  EXPECT_EQ(plan.commands[10].params[0], 270.0);
  EXPECT_DOUBLE_EQ(plan.commands[18].alt_m, 50.0);
  // The table stops before the automatic landing.
  const auto v = validate(plan, 6096.0);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].command_index, 18u);
}

TEST(Mission, ParseErrorsCarryRowNumbers) {
  const std::string header = std::string(kMissionHeader) + "\n";
  try {
    parse(header + "TAKEOFF,0,0,0,0,1,2,10\nFLIP,0,0,0,0,0,0,0\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.row(), 3u);
  }
  try {
    parse(header + "TAKEOFF,0,0,0,0,1,2\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.row(), 2u);
  }
  try {
    parse(header + "DELAY,x,0,0,0,0,0,0\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.row(), 2u);
  }
  EXPECT_THROW(parse("TAKEOFF,0,0,0,0,1,2,10\n"), ParseError);
  EXPECT_THROW(parse(""), ParseError);
}
