#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "aodsort/cli.hpp"
#include "support.hpp"

using namespace aodsort;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = runCli(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
public:
  TempDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("aodsort-test-" + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
  fs::path path_;
};

void write(const std::string& path, const std::string& text) {
  std::ofstream(path) << text;
}

} // namespace

TEST_CASE("help and usage errors") {
  const auto help = run({"--help"});
  CHECK(help.code == kExitOk);
  CHECK(help.out.find("AODSORT_CONFIG") != std::string::npos);
  CHECK(help.out.find("bench") != std::string::npos);
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"bench", "--trials", "0", "--sizes", "9"}).code == kExitUsage);
  CHECK(run({"plan", "/nonexistent/grid.txt"}).code == kExitUsage);
  CHECK(run({"plan"}).code == kExitUsage);
}

TEST_CASE("plan then validate") {
  TempDir dir;
  const std::string planPath = dir.file("sample.plan.json");
  const std::string grid = testing::fixturePath("sample10.grid");
  const auto planned = run({"plan", grid, "--out", planPath});
  REQUIRE(planned.code == kExitOk);
  CHECK(planned.out.find("initial vacancies: 13") != std::string::npos);

  const auto checked = run({"validate", grid, planPath});
  CHECK(checked.code == kExitOk);
  CHECK(checked.out.find("final vacancies: 0") != std::string::npos);
  CHECK(checked.out.find("invalid moves: 0") != std::string::npos);

  SUBCASE("corrupted drop") {
    // Send the first trap of the first move onto an occupied region site.
    auto doc = nlohmann::json::parse(testing::readText(planPath));
    const auto ref = testing::sample10();
    auto& move = doc["moves"][0];
    const int row = move["rows"][0].back().get<int>() / 2;
    int target = -1;
    for (int c = 0; c < 10 && target < 0; ++c) {
      const int col = move["cols"][0].back().get<int>() / 2;
      if (c != col && ref.grid.occupied(row, c) && ref.region.contains(row, c)) {
        target = c;
      }
    }
    REQUIRE(target >= 0);
    // A single-trap move keeps the corruption free of tone-order issues.
    nlohmann::json single;
    single["rows"] = {{2 * row, 2 * row}};
    single["cols"] = {{2 * (target == 9 ? 8 : target + 1), 2 * target}};
    const bool sourceOccupied = ref.grid.occupied(row, target == 9 ? 8 : target + 1);
    if (!sourceOccupied) {
      single["cols"] = {{2 * (target == 0 ? 1 : target - 1), 2 * target}};
    }
    doc["moves"].insert(doc["moves"].begin(), single);
    const std::string bad = dir.file("bad.plan.json");
    write(bad, doc.dump());
    const auto report = run({"validate", grid, bad});
    CHECK(report.code == kExitFailure);
    CHECK(report.out.find("move 0: drop-occupied") != std::string::npos);
  }
  SUBCASE("malformed plan") {
    const std::string bad = dir.file("broken.plan.json");
    write(bad, "{\"format\": \"aodsort-plan/1\"}");
    const auto report = run({"validate", grid, bad});
    CHECK(report.code == kExitUsage);
    CHECK(report.err.find("grid") != std::string::npos);
  }
}

TEST_CASE("plan outcomes") {
  TempDir dir;
  SUBCASE("full target gives an empty plan") {
    const std::string grid = dir.file("full.grid");
    write(grid, "#target: 0 0 2 2\n110\n110\n000\n");
    const std::string planPath = dir.file("full.plan.json");
    CHECK(run({"plan", grid, "--out", planPath}).code == kExitOk);
    CHECK(nlohmann::json::parse(testing::readText(planPath))["move_count"] == 0);
    CHECK(run({"validate", grid, planPath}).code == kExitOk);
  }
  SUBCASE("insufficient atoms") {
    const std::string grid = dir.file("sparse.grid");
    write(grid, "#target: 0 0 2 2\n100\n000\n000\n");
    const std::string planPath = dir.file("sparse.plan.json");
    const auto result = run({"plan", grid, "--out", planPath});
    CHECK(result.code == kExitFailure);
    CHECK(result.err.find("insufficient-atoms") != std::string::npos);
    CHECK(!fs::exists(planPath));
  }
  SUBCASE("generated instance to stdout") {
    const std::string gridOut = dir.file("generated.grid");
    const auto result =
        run({"plan", "--set", "n_t=36", "fill=0.6", "--seed", "5", "--write-grid", gridOut});
    REQUIRE(result.code == kExitOk);
    CHECK(nlohmann::json::parse(result.out)["format"] == "aodsort-plan/1");
    CHECK(result.err.find("moves:") != std::string::npos);
    const std::string planPath = dir.file("generated.plan.json");
    write(planPath, result.out);
    CHECK(run({"validate", gridOut, planPath}).code == kExitOk);
  }
  SUBCASE("sequential algorithm") {
    const std::string planPath = dir.file("seq.plan.json");
    const std::string grid = testing::fixturePath("sample10.grid");
    CHECK(run({"plan", grid, "--algorithm", "sequential", "--out", planPath}).code == kExitOk);
    CHECK(nlohmann::json::parse(testing::readText(planPath))["move_count"] == 13);
    CHECK(run({"validate", grid, planPath}).code == kExitOk);
  }
  SUBCASE("config errors") {
    const std::string config = dir.file("bad.json");
    write(config, "{\"n_h\": -1}");
    const std::string grid = testing::fixturePath("sample10.grid");
    CHECK(run({"plan", grid, "--config", config}).code == kExitUsage);
    CHECK(run({"plan", grid, "--set", "nonsense=1"}).code == kExitUsage);
    CHECK(run({"plan", grid, "--config", dir.file("missing.json")}).code == kExitUsage);
  }
  SUBCASE("config file is honoured") {
    const std::string config = dir.file("tight.json");
    write(config, "{\"n_h\": 1, \"n_v\": 1}");
    const std::string planPath = dir.file("tight.plan.json");
    const std::string grid = testing::fixturePath("sample10.grid");
    REQUIRE(run({"plan", grid, "--config", config, "--out", planPath}).code == kExitOk);
    const auto doc = nlohmann::json::parse(testing::readText(planPath));
    for (const auto& move : doc["moves"]) {
      CHECK(move["rows"].size() == 1);
      CHECK(move["cols"].size() == 1);
    }
    CHECK(run({"validate", grid, planPath, "--config", config}).code == kExitOk);
  }
}

TEST_CASE("bench and feasibility") {
  const auto csv = run({"bench", "--sizes", "9,16", "--trials", "20", "--no-timing", "--seed", "3"});
  REQUIRE(csv.code == kExitOk);
  CHECK(csv.out.rfind("Qubit,AMC,MCStd,AMD,MDStd,AMT13,MTStd13,AMT55,MTStd55,SRate,CTime\n", 0) ==
        0);
  const auto again = run({"bench", "--sizes", "9,16", "--trials", "20", "--no-timing", "--seed",
                          "3", "--workers", "3"});
  CHECK(again.out == csv.out);
  const auto json = run({"bench", "--sizes", "9", "--trials", "5", "--format", "json"});
  REQUIRE(json.code == kExitOk);
  CHECK(nlohmann::json::parse(json.out).size() == 1);

  const auto curve = run({"feasibility", "--sizes", "4", "--ratio", "1.5", "--fill", "0.5"});
  REQUIRE(curve.code == kExitOk);
  CHECK(curve.out == "Qubit,Probability\n4,0.74609375\n");
  CHECK(run({"feasibility"}).code == kExitUsage);
  CHECK(run({"feasibility", "--sizes", "4", "--ratio", "0.5"}).code == kExitUsage);
}
