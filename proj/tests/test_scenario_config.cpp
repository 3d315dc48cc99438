#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "cplmfc/scenario_config.hpp"

using namespace cplmfc;

namespace {

const char* kMinimal = R"(# comment
[plant]
type = lti
num = 1
den = 1 3 3 1

[loop]
tau = 0.1
u_max = 10
duration = 40

[cplmfc]
alpha = 16
lambda_i = 0.6
lambda_d = 0.25
t_s = 10

[setpoint]
kind = step
amplitude = 1
)";

}  // namespace

TEST_CASE("minimal scenario parses") {
  const ScenarioFile sf = parse_scenario_text(kMinimal);
  CHECK(sf.scn.plant_kind == PlantKind::Lti);
  CHECK(sf.scn.den.size() == 4);
  CHECK(sf.scn.tau == doctest::Approx(0.1));
  CHECK(sf.scn.alpha == doctest::Approx(16.0));
  CHECK(sf.scn.t_s == doctest::Approx(10.0));
  CHECK(sf.scn.sp_kind == SetpointKind::Step);
  CHECK_FALSE(sf.ident_enabled);
}

TEST_CASE("unknown keys and sections are rejected with a line number") {
  CHECK_THROWS_WITH_AS(parse_scenario_text("[plant]\nbogus = 1\n"),
                       doctest::Contains("line 2"), ScenarioParseError);
  CHECK_THROWS_WITH_AS(parse_scenario_text("[nope]\n"), doctest::Contains("line 1"),
                       ScenarioParseError);
  CHECK_THROWS_AS(parse_scenario_text("tau = 0.1\n"), ScenarioParseError);
  CHECK_THROWS_AS(parse_scenario_text("[loop]\ntau = abc\n"), ScenarioParseError);
  CHECK_THROWS_AS(parse_scenario_text("[loop]\ntau 0.1\n"), ScenarioParseError);
  CHECK_THROWS_AS(parse_scenario_text("[loop\ntau = 0.1\n"), ScenarioParseError);
}

TEST_CASE("serialization round-trips") {
  ScenarioFile sf = parse_scenario_text(kMinimal);
  sf.scn.tau_l_override = 0.25;
  sf.ident_enabled = true;
  sf.out_dir = "out";
  const std::string once = serialize_scenario(sf);
  const ScenarioFile back = parse_scenario_text(once);
  CHECK(serialize_scenario(back) == once);
  CHECK(back.scn.tau_l_override.has_value());
  CHECK(*back.scn.tau_l_override == doctest::Approx(0.25));
  CHECK(back.ident_enabled);
  CHECK(back.out_dir == "out");
}

TEST_CASE("pmlm plant round-trips") {
  ScenarioFile sf;
  sf.scn.plant_kind = PlantKind::Pmlm;
  sf.scn.pmlm.m = 1.0;
  sf.scn.pmlm.b_damp = -35.1;
  sf.scn.sp_kind = SetpointKind::Sine;
  const std::string once = serialize_scenario(sf);
  const ScenarioFile back = parse_scenario_text(once);
  CHECK(back.scn.plant_kind == PlantKind::Pmlm);
  CHECK(back.scn.pmlm.b_damp == doctest::Approx(-35.1));
  CHECK(serialize_scenario(back) == once);
}

TEST_CASE("overrides") {
  ScenarioFile sf = parse_scenario_text(kMinimal);
  apply_override(sf, "alpha=2");
  CHECK(sf.scn.alpha == doctest::Approx(2.0));
  apply_override(sf, "cplmfc.tau_l=0.5");
  CHECK(sf.scn.tau_l_override.has_value());
  CHECK_THROWS_AS(apply_override(sf, "tau_l=0.5"), ScenarioParseError);  // ambiguous
  CHECK_THROWS_AS(apply_override(sf, "nosuch=1"), ScenarioParseError);
  CHECK_THROWS_AS(apply_override(sf, "alpha"), ScenarioParseError);
}
