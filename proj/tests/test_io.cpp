#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "aodsort/config_io.hpp"
#include "aodsort/cost.hpp"
#include "aodsort/plan_io.hpp"
#include "aodsort/sequencer.hpp"
#include "support.hpp"

using namespace aodsort;
using nlohmann::json;

namespace {

std::string errorOf(const std::string& text) {
  try {
    parsePlan(text);
  } catch (const PlanParseError& e) {
    return e.what();
  }
  return "";
}

std::string figPlanText() {
  const auto ref = testing::sample10();
  return serializePlan({testing::sampleMove()}, 10, 10, ref.region, presetTm());
}

} // namespace

TEST_CASE("config files") {
  SUBCASE("empty object keeps defaults") {
    CHECK(parseConfigJson("{}") == PlannerConfig{});
  }
  SUBCASE("all keys") {
    const auto config = parseConfigJson(R"({
      "n_h": 4, "n_v": 5, "k": 12, "combo_budget": 9,
      "allow_row_gap_motion": false, "allow_col_gap_motion": true,
      "allow_multiple_moves": true, "allow_empty_onto_occupied": false,
      "cost": "tm"})");
    CHECK(config.maxColTones == 4);
    CHECK(config.maxRowTones == 5);
    CHECK(config.maxTraps == 12);
    CHECK(config.comboBudget == 9);
    CHECK(!config.allowRowGapMotion);
    CHECK(config.allowColGapMotion);
    CHECK(config.allowMultipleMoves);
    CHECK(!config.allowEmptyOntoOccupied);
    CHECK(config.cost == presetTm());
  }
  SUBCASE("cost object") {
    const auto config = parseConfigJson(R"({"cost": {"constant_offset": 100,
      "per_substep_offset": 5, "linear_factor": 2, "sqrt_factor": 1, "site_pitch": 4.5}})");
    CHECK(config.cost == CostParams{100, 5, 2, 1, 4.5});
  }
  SUBCASE("round trip") {
    PlannerConfig config;
    config.maxTraps = 77;
    config.cost = CostParams{1, 2, 3, 4, 5};
    config.allowColGapMotion = false;
    CHECK(parseConfigJson(configToJson(config)) == config);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(parseConfigJson("{"), ConfigError);
    CHECK_THROWS_AS(parseConfigJson("[]"), ConfigError);
    CHECK_THROWS_AS(parseConfigJson(R"({"n_h": 0})"), ConfigError);
    CHECK_THROWS_AS(parseConfigJson(R"({"k": 2.5})"), ConfigError);
    CHECK_THROWS_AS(parseConfigJson(R"({"allow_multiple_moves": 1})"), ConfigError);
    CHECK_THROWS_AS(parseConfigJson(R"({"speed": 1})"), ConfigError);
    CHECK_THROWS_AS(parseConfigJson(R"({"cost": "tm9"})"), ConfigError);
    CHECK_THROWS_AS(parseConfigJson(R"({"cost": {"constant_offset": 1}})"), ConfigError);
    CHECK_THROWS_WITH_AS(parseConfigJson(R"({"combo_budget": 0})"),
                         doctest::Contains("combo_budget"), ConfigError);
    CHECK_THROWS_AS(loadConfigFile("/nonexistent/aodsort.json"), ConfigError);
  }
}

TEST_CASE("overrides") {
  PlannerConfig config;
  InstanceSpec instance;
  applyOverride(config, &instance, "n_h=3");
  applyOverride(config, &instance, "allow_row_gap_motion=false");
  applyOverride(config, &instance, "cost=tm");
  applyOverride(config, &instance, "cost.site_pitch=6.5");
  applyOverride(config, &instance, "n_t=36");
  applyOverride(config, &instance, "ratio=2");
  applyOverride(config, &instance, "fill=0.6");
  applyOverride(config, &instance, "seed=42");
  CHECK(config.maxColTones == 3);
  CHECK(!config.allowRowGapMotion);
  CHECK(config.cost.linearFactor == presetTm().linearFactor);
  CHECK(config.cost.sitePitch == 6.5);
  CHECK(timeDemandFromSubsteps(config.cost, std::vector<double>{1.0}) ==
        doctest::Approx(170.0));
  CHECK(instance.targetAtoms == 36);
  CHECK(instance.ratio == 2.0);
  CHECK(instance.fillRatio == 0.6);
  CHECK(instance.seed == 42);

  CHECK_THROWS_AS(applyOverride(config, &instance, "n_h"), ConfigError);
  CHECK_THROWS_AS(applyOverride(config, &instance, "n_h=abc"), ConfigError);
  CHECK_THROWS_AS(applyOverride(config, &instance, "n_h=0"), ConfigError);
  CHECK_THROWS_AS(applyOverride(config, &instance, "cost.speed=1"), ConfigError);
  CHECK_THROWS_AS(applyOverride(config, &instance, "bogus=1"), ConfigError);
  CHECK_THROWS_AS(applyOverride(config, nullptr, "n_t=9"), ConfigError);
  CHECK_THROWS_AS(applyOverride(config, &instance, "seed=-1"), ConfigError);
}

TEST_CASE("plan serialization") {
  const auto ref = testing::sample10();
  SUBCASE("round trip of a planned sequence") {
    const auto result = plan(ref.grid, ref.region, PlannerConfig{});
    REQUIRE(result.ok());
    const std::string text =
        serializePlan(result.plan().moves, 10, 10, ref.region, PlannerConfig{}.cost);
    const PlanFile parsed = parsePlan(text);
    CHECK(parsed.gridRows == 10);
    CHECK(parsed.gridCols == 10);
    CHECK(parsed.region == ref.region);
    CHECK(parsed.moves == result.plan().moves);
    CHECK(serializePlan(parsed.moves, 10, 10, ref.region, PlannerConfig{}.cost) == text);
  }
  SUBCASE("document fields") {
    const json doc = json::parse(figPlanText());
    CHECK(doc["format"] == kPlanFormat);
    CHECK(doc["move_count"] == 1);
    CHECK(doc["moves"][0]["rows"].size() == 3);
    CHECK(doc["moves"][0]["cols"].size() == 4);
    CHECK(doc["moves"][0]["distance_um"].get<double>() == doctest::Approx(5.0));
    CHECK(doc["total_time_us"].get<double>() == doctest::Approx(120.0 + 5.0 / 0.13));
    CHECK(doc["target"]["height"] == 6);
  }
  SUBCASE("empty plan") {
    const PlanFile parsed = parsePlan(serializePlan({}, 3, 4, {0, 0, 1, 1}, presetTm2()));
    CHECK(parsed.moves.empty());
    CHECK(parsed.gridCols == 4);
  }
}

TEST_CASE("plan parse errors name the field") {
  json doc = json::parse(figPlanText());
  CHECK(errorOf("{ nope").find("not valid JSON") != std::string::npos);
  CHECK(errorOf("[1, 2]").find("expected a JSON object") != std::string::npos);

  json bad = doc;
  bad["format"] = "other/2";
  CHECK(errorOf(bad.dump()).rfind("format:", 0) == 0);

  bad = doc;
  bad["moves"][0]["cols"][0][1] = "x";
  CHECK(errorOf(bad.dump()) == "moves[0].cols[0][1]: expected an integer");

  bad = doc;
  bad["moves"][0].erase("rows");
  CHECK(errorOf(bad.dump()).find("moves[0]") != std::string::npos);
  CHECK(errorOf(bad.dump()).find("rows") != std::string::npos);

  bad = doc;
  bad["grid"].erase("cols");
  CHECK(errorOf(bad.dump()).find("cols") != std::string::npos);

  bad = doc;
  bad["moves"][0]["rows"][1].push_back(4);
  CHECK(errorOf(bad.dump()).find("moves[0]") != std::string::npos);

  bad = doc;
  bad["moves"] = 3;
  CHECK(errorOf(bad.dump()).rfind("moves:", 0) == 0);
}
