// Acceptance suite. Each criterion prints one line:
//   PASS <name>: <measurements>
//   FAIL <name>: <measurements>
// Usage: aodsort_acceptance [--criterion NAME]... [--list]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "aodsort/baseline.hpp"
#include "aodsort/cli.hpp"
#include "aodsort/cost.hpp"
#include "aodsort/montecarlo.hpp"
#include "aodsort/plan_io.hpp"
#include "aodsort/sequencer.hpp"
#include "reference_validator.hpp"
#include "support.hpp"

using namespace aodsort;

namespace {

constexpr std::uint64_t kMasterSeed = 20240601;

struct Outcome {
  bool pass;
  std::string detail;
};

std::pair<OccupancyGrid, TargetRegion> instance(std::size_t targetAtoms, double fill,
                                                std::size_t index) {
  return randomGrid({targetAtoms, 1.5, fill, trialSeed(kMasterSeed, targetAtoms, index)});
}

std::string fmt(double v, int precision = 4) {
  std::ostringstream out;
  out.precision(precision);
  out << v;
  return out.str();
}

Outcome oracleValidity() {
  const PlannerConfig config;
  std::ostringstream detail;
  bool pass = true;
  for (const std::size_t n : {16u, 36u, 100u, 400u}) {
    std::size_t planned = 0;
    std::size_t noProgress = 0;
    std::size_t bad = 0;
    for (std::size_t i = 0; i < 1000; ++i) {
      const auto [grid, region] = instance(n, 0.5, i);
      const auto result = plan(grid, region, config);
      if (!result.ok()) {
        noProgress += result.failure() == PlanFailure::NoProgress ? 1 : 0;
        continue;
      }
      ++planned;
      const auto report = replayPlan(grid, region, result.plan().moves, config);
      bool clean = report.clean();
      OccupancyGrid state = grid;
      for (const auto& move : result.plan().moves) {
        clean = clean && testing::referenceKinds(state, move, config).empty();
        state = applyMoveUnchecked(state, move);
      }
      clean = clean && countTargetVacancies(state, region) == 0;
      bad += clean ? 0 : 1;
    }
    pass = pass && bad == 0;
    detail << "n_t=" << n << " plans=" << planned << " violating=" << bad
           << " no-progress=" << noProgress << "; ";
  }
  return {pass, detail.str()};
}

Outcome sampleReplay() {
  const auto ref = testing::sample10();
  const auto move = testing::sampleMove();
  const PlannerConfig config;
  const auto violations = validateMove(ref.grid, move, config);
  const std::size_t before = countTargetVacancies(ref.grid, ref.region);
  const std::size_t carried = carriedTraps(ref.grid, move).size();
  const long net = netFilled(ref.grid, ref.region, move);
  std::size_t after = before;
  if (violations.empty()) {
    after = countTargetVacancies(applyMove(ref.grid, move, config), ref.region);
  }
  const bool pass = move.substeps() == 4 && move.trapCount() == 12 && carried == 8 &&
                    violations.empty() && net == 8 && before == 13 && after == 5;
  return {pass, "substeps=" + std::to_string(move.substeps()) +
                    " traps=" + std::to_string(move.trapCount()) +
                    " carried=" + std::to_string(carried) +
                    " violations=" + std::to_string(violations.size()) +
                    " net=" + std::to_string(net) + " vacancies " + std::to_string(before) +
                    "->" + std::to_string(after)};
}

Outcome successRate() {
  const PlannerConfig config;
  BenchOptions options;
  options.trials = 10000;
  options.masterSeed = kMasterSeed;
  options.measureWallTime = false;
  std::ostringstream detail;
  double worst = 0.0;
  for (const std::size_t n : {9u, 16u, 25u, 36u, 64u, 100u}) {
    const auto stats = aggregate(n, runTrialBatch(n, config, options));
    const auto side = static_cast<std::size_t>(InstanceSpec{n, 1.5, 0.5, 0}.totalSide());
    const double expected = binomialSuccessProbability(side * side, 0.5, n);
    const double diff = std::abs(stats.successRate - expected);
    worst = std::max(worst, diff);
    detail << "n_t=" << n << " rate=" << fmt(stats.successRate) << " binomial=" << fmt(expected)
           << " no-progress=" << stats.noProgress << "; ";
  }
  detail << "max |diff|=" << fmt(worst, 3);
  return {worst < 0.02, detail.str()};
}

Outcome parallelSpeedup() {
  PlannerConfig config;
  config.cost = presetTm();
  double greedy = 0.0;
  double sequential = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < 200; ++i) {
    const auto [grid, region] = instance(400, 0.5, i);
    const auto a = plan(grid, region, config);
    const auto b = planSequential(grid, region, config);
    if (!a.ok() || !b.ok()) {
      continue;
    }
    ++pairs;
    greedy += a.plan().totalTime;
    sequential += b.plan().totalTime;
  }
  const double ratio = pairs == 0 ? 1.0 : greedy / sequential;
  return {pairs >= 150 && ratio <= 0.5,
          "seeds=" + std::to_string(pairs) + " mean greedy=" + fmt(greedy / pairs) +
              "us mean sequential=" + fmt(sequential / pairs) + "us ratio=" + fmt(ratio, 3)};
}

Outcome timeAnchor() {
  PlannerConfig config;
  config.cost = presetTm();
  double total = 0.0;
  double moves = 0.0;
  double distance = 0.0;
  std::size_t planned = 0;
  for (std::size_t i = 0; i < 500; ++i) {
    const auto [grid, region] = instance(400, 0.75, i);
    const auto result = plan(grid, region, config);
    if (!result.ok()) {
      continue;
    }
    ++planned;
    total += result.plan().totalTime;
    moves += static_cast<double>(result.plan().moveCount());
    distance += result.plan().totalDistance;
  }
  const double meanMs = planned == 0 ? 0.0 : total / planned / 1000.0;
  return {planned > 0 && meanMs >= 3.8 && meanMs <= 7.2,
          "seeds=" + std::to_string(planned) + " mean time=" + fmt(meanMs) +
              "ms (band 3.8..7.2) mean moves=" + fmt(moves / planned) +
              " mean distance=" + fmt(distance / planned) + "um"};
}

Outcome moveCountScaling() {
  const PlannerConfig config;
  BenchOptions options;
  options.masterSeed = kMasterSeed;
  options.measureWallTime = false;
  std::vector<TrialStats> stats;
  for (const auto& [n, trials] : {std::pair<std::size_t, std::size_t>{100, 100}, {400, 100},
                                  {900, 40}}) {
    options.trials = trials;
    stats.push_back(aggregate(n, runTrialBatch(n, config, options)));
  }
  const bool increasing = stats[0].avgMoveCount < stats[1].avgMoveCount &&
                          stats[1].avgMoveCount < stats[2].avgMoveCount;
  const double parallelism = stats[2].avgMoveCount / stats[2].avgInitialVacancies;
  std::ostringstream detail;
  for (const auto& s : stats) {
    detail << "n_t=" << s.targetAtoms << " moves=" << fmt(s.avgMoveCount)
           << " vacancies=" << fmt(s.avgInitialVacancies) << "; ";
  }
  detail << "moves/vacancies at 900=" << fmt(parallelism, 3);
  return {increasing && parallelism < 0.5, detail.str()};
}

Outcome costScalingInvariance() {
  const PlannerConfig config;
  PlannerConfig scaled = config;
  scaled.cost.constantOffset *= 10;
  scaled.cost.linearFactor *= 10;
  std::size_t identical = 0;
  for (std::size_t i = 0; i < 100; ++i) {
    const auto [grid, region] = instance(400, 0.5, i);
    const auto a = plan(grid, region, config);
    const auto b = plan(grid, region, scaled);
    std::string ta = a.ok() ? serializePlan(a.plan().moves, grid.rows(), grid.cols(), region,
                                            config.cost)
                            : std::string(toString(a.failure()));
    std::string tb = b.ok() ? serializePlan(b.plan().moves, grid.rows(), grid.cols(), region,
                                            config.cost)
                            : std::string(toString(b.failure()));
    identical += ta == tb ? 1 : 0;
  }
  return {identical == 100, "identical plans " + std::to_string(identical) + "/100"};
}

Outcome plannerWallTime() {
  const PlannerConfig config;
  std::vector<double> ms;
  for (std::size_t i = 0; i < 51; ++i) {
    const auto [grid, region] = instance(400, 0.5, i);
    const auto start = std::chrono::steady_clock::now();
    const auto result = plan(grid, region, config);
    ms.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                     .count());
  }
  std::sort(ms.begin(), ms.end());
  const double median = ms[ms.size() / 2];
  return {median < 250.0, "median=" + fmt(median) + "ms max=" + fmt(ms.back()) + "ms over " +
                              std::to_string(ms.size()) + " instances"};
}

Outcome benchDeterminism() {
  const auto bench = [](const std::string& workers) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = runCli({"bench", "--sizes", "16,36,100", "--trials", "60", "--seed", "9",
                             "--workers", workers, "--no-timing"},
                            out, err);
    return code == kExitOk ? out.str() : "exit " + std::to_string(code) + ": " + err.str();
  };
  const std::string one = bench("1");
  const std::string four = bench("4");
  const std::string seven = bench("7");
  const bool pass = one == four && one == seven && one.rfind("Qubit,", 0) == 0;
  return {pass, std::string("workers 1/4/7 ") + (pass ? "byte-identical" : "differ") + ", " +
                    std::to_string(one.size()) + " bytes"};
}

struct Criterion {
  std::string name;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {"oracle-validity", oracleValidity},
      {"sample-replay", sampleReplay},
      {"success-rate", successRate},
      {"parallel-speedup", parallelSpeedup},
      {"time-anchor", timeAnchor},
      {"move-count-scaling", moveCountScaling},
      {"cost-scaling-invariance", costScalingInvariance},
      {"planner-walltime", plannerWallTime},
      {"bench-determinism", benchDeterminism},
  };
  return all;
}

} // namespace

int main(int argc, char** argv) {
  std::vector<std::string> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--list") {
      for (const auto& c : criteria()) {
        std::cout << c.name << "\n";
      }
      return 0;
    }
    if (arg == "--criterion" && i + 1 < argc) {
      selected.push_back(argv[++i]);
      continue;
    }
    std::cerr << "usage: aodsort_acceptance [--criterion NAME]... [--list]\n";
    return 2;
  }
  for (const auto& name : selected) {
    const bool known = std::any_of(criteria().begin(), criteria().end(),
                                   [&](const Criterion& c) { return c.name == name; });
    if (!known) {
      std::cerr << "unknown criterion '" << name << "'\n";
      return 2;
    }
  }

  bool allPass = true;
  for (const auto& c : criteria()) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.name) == selected.end()) {
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (outcome.pass ? "PASS " : "FAIL ") << c.name << ": " << outcome.detail << " ["
              << fmt(seconds, 3) << "s]" << std::endl;
    allPass = allPass && outcome.pass;
  }
  return allPass ? 0 : 1;
}
