#include "aodsort/montecarlo.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "aodsort/baseline.hpp"
#include "aodsort/cost.hpp"
#include "aodsort/sequencer.hpp"

namespace aodsort {

std::string_view toString(Algorithm algorithm) {
  return algorithm == Algorithm::Greedy ? "greedy" : "sequential";
}

Algorithm algorithmFromString(std::string_view name) {
  if (name == "greedy") {
    return Algorithm::Greedy;
  }
  if (name == "sequential") {
    return Algorithm::Sequential;
  }
  throw ConfigError("unknown algorithm '" + std::string(name) + "' (expected greedy or sequential)");
}

PlanResult runPlanner(Algorithm algorithm, const OccupancyGrid& grid, const TargetRegion& region,
                      const PlannerConfig& config) {
  return algorithm == Algorithm::Greedy ? plan(grid, region, config)
                                        : planSequential(grid, region, config);
}

std::uint64_t trialSeed(std::uint64_t masterSeed, std::size_t targetAtoms, std::size_t index) {
  const std::uint64_t sizeStream = splitmix64(masterSeed ^ splitmix64(targetAtoms));
  return splitmix64(sizeStream + index);
}

TrialOutcome runTrial(std::size_t targetAtoms, std::size_t index, const PlannerConfig& config,
                      const BenchOptions& options) {
  InstanceSpec spec;
  spec.targetAtoms = targetAtoms;
  spec.ratio = options.ratio;
  spec.fillRatio = options.fillRatio;
  spec.seed = trialSeed(options.masterSeed, targetAtoms, index);
  const auto [grid, region] = randomGrid(spec);

  TrialOutcome outcome;
  outcome.initialVacancies = countTargetVacancies(grid, region);
  const auto start = std::chrono::steady_clock::now();
  const PlanResult result = runPlanner(options.algorithm, grid, region, config);
  if (options.measureWallTime) {
    outcome.wallTimeUs = std::chrono::duration<double, std::micro>(
                             std::chrono::steady_clock::now() - start)
                             .count();
  }
  if (!result) {
    outcome.failure = result.failure();
    return outcome;
  }
  CostParams tm = presetTm();
  CostParams tm2 = presetTm2();
  tm.sitePitch = config.cost.sitePitch;
  tm2.sitePitch = config.cost.sitePitch;
  outcome.moveCount = result.plan().moveCount();
  for (const auto& move : result.plan().moves) {
    outcome.distanceSites += moveDistanceSites(move);
    outcome.timeTm += timeDemand(tm, move);
    outcome.timeTm2 += timeDemand(tm2, move);
  }
  return outcome;
}

namespace {

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};

template <typename Get>
MeanStd meanStd(const std::vector<TrialOutcome>& outcomes, Get get) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& o : outcomes) {
    if (!o.failure) {
      sum += get(o);
      ++n;
    }
  }
  if (n == 0) {
    return {};
  }
  const double mean = sum / static_cast<double>(n);
  if (n == 1) {
    return {mean, 0.0};
  }
  double squares = 0.0;
  for (const auto& o : outcomes) {
    if (!o.failure) {
      const double d = get(o) - mean;
      squares += d * d;
    }
  }
  return {mean, std::sqrt(squares / static_cast<double>(n - 1))};
}

} // namespace

TrialStats aggregate(std::size_t targetAtoms, const std::vector<TrialOutcome>& outcomes) {
  TrialStats s;
  s.targetAtoms = targetAtoms;
  s.trials = outcomes.size();
  double wall = 0.0;
  double vacancies = 0.0;
  for (const auto& o : outcomes) {
    if (!o.failure) {
      ++s.successes;
      wall += o.wallTimeUs;
    } else if (*o.failure == PlanFailure::NoProgress) {
      ++s.noProgress;
    }
    vacancies += static_cast<double>(o.initialVacancies);
  }
  if (s.trials > 0) {
    s.successRate = static_cast<double>(s.successes) / static_cast<double>(s.trials);
    s.avgInitialVacancies = vacancies / static_cast<double>(s.trials);
  }
  if (s.successes > 0) {
    s.avgWallTimeUs = wall / static_cast<double>(s.successes);
  }
  const auto moves = meanStd(outcomes, [](const TrialOutcome& o) {
    return static_cast<double>(o.moveCount);
  });
  const auto distance = meanStd(outcomes, [](const TrialOutcome& o) { return o.distanceSites; });
  const auto tm = meanStd(outcomes, [](const TrialOutcome& o) { return o.timeTm; });
  const auto tm2 = meanStd(outcomes, [](const TrialOutcome& o) { return o.timeTm2; });
  s.avgMoveCount = moves.mean;
  s.moveCountStd = moves.std;
  s.avgDistanceSites = distance.mean;
  s.distanceStd = distance.std;
  s.avgTimeTm = tm.mean;
  s.timeTmStd = tm.std;
  s.avgTimeTm2 = tm2.mean;
  s.timeTm2Std = tm2.std;
  return s;
}

std::vector<TrialOutcome> runTrialBatch(std::size_t targetAtoms, const PlannerConfig& config,
                                        const BenchOptions& options) {
  InstanceSpec probe;
  probe.targetAtoms = targetAtoms;
  probe.ratio = options.ratio;
  probe.fillRatio = options.fillRatio;
  probe.check();
  config.check();

  std::vector<TrialOutcome> outcomes(options.trials);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex errorMutex;
  const auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= outcomes.size()) {
        return;
      }
      try {
        outcomes[i] = runTrial(targetAtoms, i, config, options);
      } catch (...) {
        const std::lock_guard lock(errorMutex);
        if (!error) {
          error = std::current_exception();
        }
        next = outcomes.size();
      }
    }
  };
  const unsigned workers = std::max(1u, options.workers);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back(worker);
    }
    for (auto& t : pool) {
      t.join();
    }
  }
  if (error) {
    std::rethrow_exception(error);
  }
  return outcomes;
}

std::vector<TrialStats> runTrials(const std::vector<std::size_t>& sweep,
                                  const PlannerConfig& config, const BenchOptions& options) {
  if (options.trials < 1) {
    throw ConfigError("trials must be >= 1");
  }
  std::vector<TrialStats> stats;
  stats.reserve(sweep.size());
  for (const std::size_t n : sweep) {
    stats.push_back(aggregate(n, runTrialBatch(n, config, options)));
  }
  return stats;
}

double binomialSuccessProbability(std::size_t totalSites, double f, std::size_t targetAtoms) {
  if (!(f >= 0.0 && f <= 1.0)) {
    throw ConfigError("filling ratio must lie in [0, 1]");
  }
  if (targetAtoms == 0) {
    return 1.0;
  }
  if (targetAtoms > totalSites) {
    return 0.0;
  }
  if (f == 0.0) {
    return 0.0;
  }
  if (f == 1.0) {
    return 1.0;
  }
  // Terms relative to the mode, built by the pmf ratio recurrence; the
  // normalising sum cancels the unknown mode probability.
  const std::size_t n = totalSites;
  const long double odds = static_cast<long double>(f) / (1.0L - static_cast<long double>(f));
  const auto mode = std::min<std::size_t>(
      n, static_cast<std::size_t>(std::floor(static_cast<double>(n + 1) * f)));
  std::vector<long double> weight(n + 1, 0.0L);
  weight[mode] = 1.0L;
  for (std::size_t k = mode + 1; k <= n; ++k) {
    weight[k] = weight[k - 1] * static_cast<long double>(n - k + 1) / static_cast<long double>(k) *
                odds;
  }
  for (std::size_t k = mode; k-- > 0;) {
    weight[k] = weight[k + 1] * static_cast<long double>(k + 1) /
                static_cast<long double>(n - k) / odds;
  }
  // Sum from the small ends inwards.
  long double head = 0.0L;
  for (std::size_t k = 0; k < targetAtoms; ++k) {
    head += weight[k];
  }
  long double tail = 0.0L;
  for (std::size_t k = n + 1; k-- > targetAtoms;) {
    tail += weight[k];
  }
  const long double total = head + tail;
  const long double p = targetAtoms <= mode ? 1.0L - head / total : tail / total;
  return std::clamp(static_cast<double>(p), 0.0, 1.0);
}

std::vector<std::pair<std::size_t, double>> feasibilityCurve(double ratio, double f,
                                                             const std::vector<std::size_t>& sweep) {
  if (!(ratio >= 1.0)) {
    throw ConfigError("ratio must be >= 1");
  }
  std::vector<std::pair<std::size_t, double>> curve;
  for (const std::size_t n : sweep) {
    InstanceSpec spec;
    spec.targetAtoms = n;
    spec.ratio = ratio;
    const auto side =
        static_cast<std::size_t>(n == 0 ? 0 : std::max(spec.totalSide(), spec.targetSide()));
    curve.emplace_back(n, binomialSuccessProbability(side * side, f, n));
  }
  return curve;
}

std::string formatNumber(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return ec == std::errc{} ? std::string(buffer, ptr) : std::string("nan");
}

std::string formatStatsCsv(const std::vector<TrialStats>& stats) {
  std::ostringstream out;
  out << "Qubit,AMC,MCStd,AMD,MDStd,AMT13,MTStd13,AMT55,MTStd55,SRate,CTime\n";
  for (const auto& s : stats) {
    out << s.targetAtoms << ',' << formatNumber(s.avgMoveCount) << ','
        << formatNumber(s.moveCountStd) << ',' << formatNumber(s.avgDistanceSites) << ','
        << formatNumber(s.distanceStd) << ',' << formatNumber(s.avgTimeTm) << ','
        << formatNumber(s.timeTmStd) << ',' << formatNumber(s.avgTimeTm2) << ','
        << formatNumber(s.timeTm2Std) << ',' << formatNumber(s.successRate) << ','
        << formatNumber(s.avgWallTimeUs) << '\n';
  }
  return out.str();
}

std::string formatStatsJson(const std::vector<TrialStats>& stats) {
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& s : stats) {
    doc.push_back({{"n_t", s.targetAtoms},
                   {"trials", s.trials},
                   {"successes", s.successes},
                   {"no_progress", s.noProgress},
                   {"success_rate", s.successRate},
                   {"avg_move_count", s.avgMoveCount},
                   {"move_count_std", s.moveCountStd},
                   {"avg_distance_sites", s.avgDistanceSites},
                   {"distance_std", s.distanceStd},
                   {"avg_time_tm_us", s.avgTimeTm},
                   {"time_tm_std", s.timeTmStd},
                   {"avg_time_tm2_us", s.avgTimeTm2},
                   {"time_tm2_std", s.timeTm2Std},
                   {"avg_planner_walltime_us", s.avgWallTimeUs},
                   {"avg_initial_vacancies", s.avgInitialVacancies}});
  }
  return doc.dump(2) + "\n";
}

std::string formatFeasibilityCsv(const std::vector<std::pair<std::size_t, double>>& curve) {
  std::ostringstream out;
  out << "Qubit,Probability\n";
  for (const auto& [n, p] : curve) {
    out << n << ',' << formatNumber(p) << '\n';
  }
  return out.str();
}

std::string formatFeasibilityJson(const std::vector<std::pair<std::size_t, double>>& curve) {
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& [n, p] : curve) {
    doc.push_back({{"n_t", n}, {"probability", p}});
  }
  return doc.dump(2) + "\n";
}

} // namespace aodsort
