#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aodsort/config.hpp"
#include "aodsort/grid.hpp"
#include "aodsort/plan.hpp"

namespace aodsort {

enum class Algorithm { Greedy, Sequential };

std::string_view toString(Algorithm algorithm);
/// "greedy" or "sequential"; throws ConfigError otherwise.
Algorithm algorithmFromString(std::string_view name);

/// Runs the selected planner.
PlanResult runPlanner(Algorithm algorithm, const OccupancyGrid& grid, const TargetRegion& region,
                      const PlannerConfig& config);

struct BenchOptions {
  double ratio = 1.5;
  double fillRatio = 0.5;
  std::uint64_t masterSeed = 0;
  std::size_t trials = 1000;
  unsigned workers = 1;
  Algorithm algorithm = Algorithm::Greedy;
  /// When false, planner wall time is not measured and reported as 0, which
  /// makes the whole output a pure function of the inputs.
  bool measureWallTime = true;
};

/// Seed of trial `index` at target size `targetAtoms`:
/// splitmix64(splitmix64(masterSeed ^ splitmix64(targetAtoms)) + index).
std::uint64_t trialSeed(std::uint64_t masterSeed, std::size_t targetAtoms, std::size_t index);

struct TrialOutcome {
  std::optional<PlanFailure> failure;
  std::size_t initialVacancies = 0;
  std::size_t moveCount = 0;
  double distanceSites = 0.0;
  double timeTm = 0.0;   // us
  double timeTm2 = 0.0;  // us
  double wallTimeUs = 0.0;
};

/// Plans one seeded instance. Reported times evaluate the stored moves under
/// the tm and tm2 presets at the configured site pitch.
TrialOutcome runTrial(std::size_t targetAtoms, std::size_t index, const PlannerConfig& config,
                      const BenchOptions& options);

struct TrialStats {
  std::size_t targetAtoms = 0;
  std::size_t trials = 0;
  std::size_t successes = 0;
  std::size_t noProgress = 0;
  double successRate = 0.0;
  double avgMoveCount = 0.0;
  double moveCountStd = 0.0;
  double avgDistanceSites = 0.0;
  double distanceStd = 0.0;
  double avgTimeTm = 0.0;
  double timeTmStd = 0.0;
  double avgTimeTm2 = 0.0;
  double timeTm2Std = 0.0;
  double avgWallTimeUs = 0.0;
  double avgInitialVacancies = 0.0;
};

/// Mean and sample standard deviation over successful trials, success rate
/// over all trials. The fold runs in trial order.
TrialStats aggregate(std::size_t targetAtoms, const std::vector<TrialOutcome>& outcomes);

/// All trials of one size, spread over `options.workers` threads.
std::vector<TrialOutcome> runTrialBatch(std::size_t targetAtoms, const PlannerConfig& config,
                                        const BenchOptions& options);

std::vector<TrialStats> runTrials(const std::vector<std::size_t>& sweep,
                                  const PlannerConfig& config, const BenchOptions& options);

/// P[Binomial(totalSites, f) >= targetAtoms], summed in log space.
double binomialSuccessProbability(std::size_t totalSites, double f, std::size_t targetAtoms);

/// (n_t, probability) with totalSites = ceil(sqrt(n_t) * r)^2.
std::vector<std::pair<std::size_t, double>> feasibilityCurve(double ratio, double f,
                                                             const std::vector<std::size_t>& sweep);

/// Header: Qubit,AMC,MCStd,AMD,MDStd,AMT13,MTStd13,AMT55,MTStd55,SRate,CTime
std::string formatStatsCsv(const std::vector<TrialStats>& stats);
std::string formatStatsJson(const std::vector<TrialStats>& stats);

std::string formatFeasibilityCsv(const std::vector<std::pair<std::size_t, double>>& curve);
std::string formatFeasibilityJson(const std::vector<std::pair<std::size_t, double>>& curve);

/// Shortest decimal text that reads back to the same double.
std::string formatNumber(double value);

} // namespace aodsort
