#include "aodsort/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "aodsort/config_io.hpp"
#include "aodsort/montecarlo.hpp"
#include "aodsort/plan_io.hpp"

namespace aodsort {

namespace {

/// Operational error: bad input, unreadable file, invalid config.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw UsageError("cannot read '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void writeFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text) || !out.flush()) {
    throw UsageError("cannot write '" + path + "'");
  }
}

struct CommonOptions {
  std::string configPath;
  std::vector<std::string> overrides;
};

void addCommon(CLI::App* app, CommonOptions& common) {
  app->add_option("--config", common.configPath,
                  std::string("JSON planner config (default: $") + kConfigEnvVar + ")");
  app->add_option("--set", common.overrides,
                  "Override KEY=VALUE; planner keys n_h n_v k combo_budget allow_row_gap_motion "
                  "allow_col_gap_motion allow_multiple_moves allow_empty_onto_occupied cost "
                  "cost.<field>; instance keys n_t ratio fill seed")
      ->take_all();
}

PlannerConfig resolveConfig(const CommonOptions& common, InstanceSpec* instance) {
  PlannerConfig config;
  std::string path = common.configPath;
  if (path.empty()) {
    if (const char* env = std::getenv(kConfigEnvVar); env != nullptr && *env != '\0') {
      path = env;
    }
  }
  if (!path.empty()) {
    config = loadConfigFile(path);
  }
  for (const auto& assignment : common.overrides) {
    applyOverride(config, instance, assignment);
  }
  return config;
}

std::string summary(const Plan& plan, std::size_t vacancies) {
  std::ostringstream out;
  out << "moves: " << plan.moveCount() << "\n"
      << "initial vacancies: " << vacancies << "\n"
      << "total distance (um): " << formatNumber(plan.totalDistance) << "\n"
      << "total time (us): " << formatNumber(plan.totalTime) << "\n";
  return out.str();
}

std::vector<std::size_t> resolveSizes(const std::vector<std::size_t>& sizes,
                                      const InstanceSpec& instance) {
  if (!sizes.empty()) {
    return sizes;
  }
  if (instance.targetAtoms > 0) {
    return {instance.targetAtoms};
  }
  throw UsageError("no target sizes given (use --sizes or --set n_t=N)");
}

} // namespace

int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Parallel AOD atom rearrangement planner"};
  app.name("aodsort");
  app.require_subcommand(1);

  CommonOptions common;
  std::string algorithmName = "greedy";
  std::string outPath;
  std::string format = "csv";

  // plan
  auto* planCmd = app.add_subcommand(
      "plan", "Plan one instance, read from a grid file or generated from n_t/ratio/fill/seed");
  std::string gridPath;
  std::string gridOut;
  std::optional<std::uint64_t> planSeed;
  planCmd->add_option("grid", gridPath, "Grid file ('#target: ro co h w' header, 0/1 rows)");
  planCmd->add_option("--seed", planSeed, "Instance seed for generated grids");
  planCmd->add_option("--out", outPath, "Plan file (default: standard output)");
  planCmd->add_option("--write-grid", gridOut, "Also write the input grid to this file");
  planCmd->add_option("--algorithm", algorithmName, "greedy or sequential")
      ->check(CLI::IsMember({"greedy", "sequential"}));
  addCommon(planCmd, common);

  // validate
  auto* validateCmd =
      app.add_subcommand("validate", "Replay a plan file on a grid file and report violations");
  std::string planPath;
  validateCmd->add_option("grid", gridPath, "Grid file")->required();
  validateCmd->add_option("plan", planPath, "Plan file")->required();
  addCommon(validateCmd, common);

  // bench
  auto* benchCmd = app.add_subcommand("bench", "Monte Carlo sweep over seeded random instances");
  std::vector<std::size_t> sizes;
  std::uint64_t masterSeed = 0;
  std::size_t trials = 1000;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  double ratio = 1.5;
  double fill = 0.5;
  bool noTiming = false;
  benchCmd->add_option("--sizes", sizes, "Target atom counts n_t")->delimiter(',');
  benchCmd->add_option("--seed", masterSeed, "Master seed");
  benchCmd->add_option("--trials", trials, "Trials per size")->check(CLI::PositiveNumber);
  benchCmd->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  benchCmd->add_option("--ratio", ratio, "Total-to-target side ratio r");
  benchCmd->add_option("--fill", fill, "Filling ratio f");
  benchCmd->add_option("--out", outPath, "Output file (default: standard output)");
  benchCmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  benchCmd->add_option("--algorithm", algorithmName, "greedy or sequential")
      ->check(CLI::IsMember({"greedy", "sequential"}));
  benchCmd->add_flag("--no-timing", noTiming, "Report planner wall time as 0 (reproducible output)");
  addCommon(benchCmd, common);

  // feasibility
  auto* feasibilityCmd = app.add_subcommand(
      "feasibility", "Probability that a random array holds enough atoms, per n_t");
  feasibilityCmd->add_option("--sizes", sizes, "Target atom counts n_t")->delimiter(',');
  feasibilityCmd->add_option("--ratio", ratio, "Total-to-target side ratio r");
  feasibilityCmd->add_option("--fill", fill, "Filling ratio f");
  feasibilityCmd->add_option("--out", outPath, "Output file (default: standard output)");
  feasibilityCmd->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  feasibilityCmd->add_option("--set", common.overrides, "Instance override n_t/ratio/fill")
      ->take_all();

  app.footer(std::string("Environment: ") + kConfigEnvVar +
             " names the default config file.\nExit status: 0 success, 1 planning failure or "
             "validation violations, 2 usage, I/O, parse or config error.");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    if (auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front()) {
      err << sub->help();
    } else {
      err << app.help();
    }
    return kExitUsage;
  }

  try {
    if (planCmd->parsed()) {
      InstanceSpec instance;
      const PlannerConfig config = resolveConfig(common, &instance);
      if (planSeed) {
        instance.seed = *planSeed;
      }
      GridFile input{OccupancyGrid(1, 1), TargetRegion{}};
      if (!gridPath.empty()) {
        try {
          input = parseGridText(readFile(gridPath));
        } catch (const ConfigError& e) {
          throw UsageError(gridPath + ": " + e.what());
        }
      } else if (instance.targetAtoms > 0) {
        instance.check();
        auto [grid, region] = randomGrid(instance);
        input = GridFile{std::move(grid), region};
      } else {
        throw UsageError("plan needs a grid file or --set n_t=N");
      }
      if (!gridOut.empty()) {
        writeFile(gridOut, formatGridText(input.grid, input.region));
      }
      const std::size_t vacancies = countTargetVacancies(input.grid, input.region);
      const Algorithm algorithm = algorithmFromString(algorithmName);
      const PlanResult result = runPlanner(algorithm, input.grid, input.region, config);
      if (!result) {
        err << "planning failed: " << toString(result.failure()) << "\n";
        return kExitFailure;
      }
      const std::string text = serializePlan(result.plan().moves, input.grid.rows(),
                                             input.grid.cols(), input.region, config.cost);
      if (outPath.empty()) {
        out << text;
        err << summary(result.plan(), vacancies);
      } else {
        writeFile(outPath, text);
        out << summary(result.plan(), vacancies);
      }
      return kExitOk;
    }

    if (validateCmd->parsed()) {
      const PlannerConfig config = resolveConfig(common, nullptr);
      GridFile input{OccupancyGrid(1, 1), TargetRegion{}};
      try {
        input = parseGridText(readFile(gridPath));
      } catch (const ConfigError& e) {
        throw UsageError(gridPath + ": " + e.what());
      }
      PlanFile planFile;
      try {
        planFile = parsePlan(readFile(planPath));
      } catch (const PlanParseError& e) {
        throw UsageError(planPath + ": " + e.what());
      }
      if (planFile.gridRows != input.grid.rows() || planFile.gridCols != input.grid.cols()) {
        throw UsageError("plan grid size does not match the grid file");
      }
      if (!(planFile.region == input.region)) {
        throw UsageError("plan target region does not match the grid file");
      }
      const ReplayReport report = replayPlan(input.grid, input.region, planFile.moves, config);
      for (const auto& issue : report.issues) {
        for (const auto& v : issue.violations) {
          out << "move " << issue.moveIndex << ": " << toString(v.kind) << ": " << v.detail << "\n";
        }
      }
      out << "moves: " << planFile.moves.size() << "\n"
          << "invalid moves: " << report.issues.size() << "\n"
          << "final vacancies: " << report.finalVacancies << "\n";
      return report.clean() ? kExitOk : kExitFailure;
    }

    if (benchCmd->parsed()) {
      InstanceSpec instance;
      instance.ratio = ratio;
      instance.fillRatio = fill;
      const PlannerConfig config = resolveConfig(common, &instance);
      BenchOptions options;
      options.ratio = instance.ratio;
      options.fillRatio = instance.fillRatio;
      options.masterSeed = benchCmd->count("--seed") > 0 ? masterSeed : instance.seed;
      options.trials = trials;
      options.workers = workers;
      options.algorithm = algorithmFromString(algorithmName);
      options.measureWallTime = !noTiming;
      const auto stats = runTrials(resolveSizes(sizes, instance), config, options);
      for (const auto& s : stats) {
        if (s.noProgress > 0) {
          err << "warning: n_t=" << s.targetAtoms << ": " << s.noProgress
              << " trial(s) ended with no-progress despite enough atoms\n";
        }
      }
      if (options.algorithm == Algorithm::Sequential) {
        err << "note: sequential is a nearest-pair single-trap reference planner\n";
      }
      const std::string text = format == "json" ? formatStatsJson(stats) : formatStatsCsv(stats);
      if (outPath.empty()) {
        out << text;
      } else {
        writeFile(outPath, text);
      }
      return kExitOk;
    }

    if (feasibilityCmd->parsed()) {
      InstanceSpec instance;
      instance.ratio = ratio;
      instance.fillRatio = fill;
      PlannerConfig unused;
      for (const auto& assignment : common.overrides) {
        applyOverride(unused, &instance, assignment);
      }
      const auto curve =
          feasibilityCurve(instance.ratio, instance.fillRatio, resolveSizes(sizes, instance));
      const std::string text =
          format == "json" ? formatFeasibilityJson(curve) : formatFeasibilityCsv(curve);
      if (outPath.empty()) {
        out << text;
      } else {
        writeFile(outPath, text);
      }
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

} // namespace aodsort
