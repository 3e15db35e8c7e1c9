#include <memory>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "aodsort/config_io.hpp"
#include "aodsort/cost.hpp"
#include "aodsort/montecarlo.hpp"
#include "aodsort/plan_io.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace aodsort {
namespace {

OccupancyGrid toGrid(const py::handle& occupancy) {
  if (!py::isinstance<py::sequence>(occupancy) || py::isinstance<py::str>(occupancy)) {
    throw py::type_error("occupancy must be a 2-D sequence of booleans");
  }
  const auto rows = py::reinterpret_borrow<py::sequence>(occupancy);
  if (rows.size() == 0) {
    throw py::value_error("occupancy has no rows");
  }
  std::vector<std::vector<bool>> cells;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const py::object row = rows[r];
    if (!py::isinstance<py::sequence>(row) || py::isinstance<py::str>(row)) {
      throw py::type_error("occupancy row " + std::to_string(r) + " is not a sequence");
    }
    const auto seq = py::reinterpret_borrow<py::sequence>(row);
    std::vector<bool> line;
    for (std::size_t c = 0; c < seq.size(); ++c) {
      const py::object cell = seq[c];
      long value = -1;
      try {
        value = py::int_(cell).cast<long>();
      } catch (const py::error_already_set&) {
      }
      if (value != 0 && value != 1) {
        throw py::value_error("occupancy[" + std::to_string(r) + "][" + std::to_string(c) +
                              "] must be 0/1 or a boolean");
      }
      line.push_back(value == 1);
    }
    if (!cells.empty() && line.size() != cells.front().size()) {
      throw py::value_error("occupancy is not rectangular (row " + std::to_string(r) + ")");
    }
    if (line.empty()) {
      throw py::value_error("occupancy has empty rows");
    }
    cells.push_back(std::move(line));
  }
  OccupancyGrid grid(static_cast<int>(cells.size()), static_cast<int>(cells.front().size()));
  for (std::size_t r = 0; r < cells.size(); ++r) {
    for (std::size_t c = 0; c < cells[r].size(); ++c) {
      grid.setOccupied(static_cast<int>(r), static_cast<int>(c), cells[r][c]);
    }
  }
  return grid;
}

TargetRegion toRegion(const std::vector<int>& region, const OccupancyGrid& grid) {
  if (region.size() != 4) {
    throw py::value_error("region must be (row_offset, col_offset, height, width)");
  }
  const TargetRegion out{region[0], region[1], region[2], region[3]};
  if (!out.fitsIn(grid)) {
    throw py::value_error("region does not fit in the occupancy grid");
  }
  return out;
}

std::string dumps(const py::handle& obj) {
  return py::module_::import("json").attr("dumps")(obj).cast<std::string>();
}

py::object loads(const std::string& text) { return py::module_::import("json").attr("loads")(text); }

PlannerConfig toConfig(const py::object& config) {
  if (config.is_none()) {
    return PlannerConfig{};
  }
  if (!py::isinstance<py::dict>(config)) {
    throw py::type_error("config must be a dict");
  }
  return parseConfigJson(dumps(config));
}

std::vector<CompositeMove> toMoves(const py::object& moves, const OccupancyGrid& grid,
                                   const TargetRegion& region) {
  py::object list = moves;
  if (py::isinstance<py::dict>(moves)) {
    list = moves.attr("get")("moves");
  }
  json doc;
  doc["format"] = kPlanFormat;
  doc["grid"] = {{"rows", grid.rows()}, {"cols", grid.cols()}};
  doc["target"] = {{"row_offset", region.rowOffset}, {"col_offset", region.colOffset},
                   {"height", region.height}, {"width", region.width}};
  doc["moves"] = json::parse(dumps(list));
  return parsePlan(doc.dump()).moves;
}

/// The plan document for a successful run, or nullopt.
std::optional<std::string> planText(const OccupancyGrid& grid, const TargetRegion& region,
                                    const PlannerConfig& config, Algorithm algorithm) {
  std::optional<PlanResult> result;
  {
    py::gil_scoped_release release;
    result.emplace(runPlanner(algorithm, grid, region, config));
  }
  if (!result->ok()) {
    return std::nullopt;
  }
  return serializePlan(result->plan().moves, grid.rows(), grid.cols(), region, config.cost);
}

py::object planMoves(const OccupancyGrid& grid, const TargetRegion& region,
                     const PlannerConfig& config, Algorithm algorithm) {
  const auto text = planText(grid, region, config, algorithm);
  if (!text) {
    return py::none();
  }
  return loads(*text)["moves"];
}

py::dict validateMoves(const OccupancyGrid& grid, const TargetRegion& region,
                       const std::vector<CompositeMove>& moves, const PlannerConfig& config) {
  std::optional<ReplayReport> report;
  {
    py::gil_scoped_release release;
    report.emplace(replayPlan(grid, region, moves, config));
  }
  py::list issues;
  for (const auto& issue : report->issues) {
    for (const auto& v : issue.violations) {
      py::dict entry;
      entry["move"] = issue.moveIndex;
      entry["kind"] = std::string(toString(v.kind));
      entry["detail"] = v.detail;
      issues.append(entry);
    }
  }
  py::dict out;
  out["issues"] = issues;
  out["moves"] = moves.size();
  out["invalid_moves"] = report->issues.size();
  out["final_vacancies"] = report->finalVacancies;
  out["ok"] = report->clean();
  return out;
}

/// Configured planner; the config is fixed at construction.
class Planner {
public:
  Planner(const py::object& config, const std::string& algorithm)
      : config_(toConfig(config)), algorithm_(algorithmFromString(algorithm)) {}

  py::object plan(const py::object& occupancy, const std::vector<int>& region) const {
    const auto grid = toGrid(occupancy);
    return planMoves(grid, toRegion(region, grid), config_, algorithm_);
  }

  py::object planDocument(const py::object& occupancy, const std::vector<int>& region) const {
    const auto grid = toGrid(occupancy);
    const auto text = planText(grid, toRegion(region, grid), config_, algorithm_);
    return text ? py::object(py::str(*text)) : py::none();
  }

  py::dict validate(const py::object& occupancy, const std::vector<int>& region,
                    const py::object& moves) const {
    const auto grid = toGrid(occupancy);
    const auto r = toRegion(region, grid);
    return validateMoves(grid, r, toMoves(moves, grid, r), config_);
  }

  py::object config() const { return loads(configToJson(config_)); }
  std::string algorithm() const { return std::string(toString(algorithm_)); }

private:
  const PlannerConfig config_;
  const Algorithm algorithm_;
};

} // namespace
} // namespace aodsort

PYBIND11_MODULE(_aodsort, m) {
  using namespace aodsort;
  m.doc() = "Parallel AOD atom rearrangement planner";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) {
        std::rethrow_exception(p);
      }
    } catch (const PlanParseError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  py::class_<Planner>(m, "Planner")
      .def(py::init<const py::object&, const std::string&>(), py::arg("config") = py::none(),
           py::arg("algorithm") = "greedy")
      .def("plan", &Planner::plan, py::arg("occupancy"), py::arg("region"),
           "List of moves in the plan-file schema, or None when planning fails.")
      .def("plan_document", &Planner::planDocument, py::arg("occupancy"), py::arg("region"),
           "Plan file text as written by the command-line tool, or None.")
      .def("validate", &Planner::validate, py::arg("occupancy"), py::arg("region"),
           py::arg("moves"))
      .def_property_readonly("config", &Planner::config)
      .def_property_readonly("algorithm", &Planner::algorithm);

  m.def(
      "plan",
      [](const py::object& occupancy, const std::vector<int>& region, const py::object& config,
         const std::string& algorithm) {
        return Planner(config, algorithm).plan(occupancy, region);
      },
      py::arg("occupancy"), py::arg("region"), py::arg("config") = py::none(),
      py::arg("algorithm") = "greedy");

  m.def(
      "plan_document",
      [](const py::object& occupancy, const std::vector<int>& region, const py::object& config,
         const std::string& algorithm) {
        return Planner(config, algorithm).planDocument(occupancy, region);
      },
      py::arg("occupancy"), py::arg("region"), py::arg("config") = py::none(),
      py::arg("algorithm") = "greedy");

  m.def(
      "validate",
      [](const py::object& occupancy, const std::vector<int>& region, const py::object& moves,
         const py::object& config) {
        return Planner(config, "greedy").validate(occupancy, region, moves);
      },
      py::arg("occupancy"), py::arg("region"), py::arg("moves"), py::arg("config") = py::none());

  m.def(
      "run_trials",
      [](const std::vector<std::size_t>& sizes, std::size_t trials, double ratio, double fill,
         std::uint64_t seed, unsigned workers, const std::string& algorithm,
         const py::object& config, bool timing) {
        const PlannerConfig planner = toConfig(config);
        BenchOptions options;
        options.ratio = ratio;
        options.fillRatio = fill;
        options.masterSeed = seed;
        options.trials = trials;
        options.workers = workers;
        options.algorithm = algorithmFromString(algorithm);
        options.measureWallTime = timing;
        std::vector<TrialStats> stats;
        {
          py::gil_scoped_release release;
          stats = runTrials(sizes, planner, options);
        }
        return loads(formatStatsJson(stats));
      },
      py::arg("sizes"), py::arg("trials") = 1000, py::arg("ratio") = 1.5, py::arg("fill") = 0.5,
      py::arg("seed") = 0, py::arg("workers") = 1, py::arg("algorithm") = "greedy",
      py::arg("config") = py::none(), py::arg("timing") = true,
      "Monte Carlo statistics per size, in the bench JSON layout.");

  m.def(
      "feasibility",
      [](const std::vector<std::size_t>& sizes, double ratio, double fill) {
        return feasibilityCurve(ratio, fill, sizes);
      },
      py::arg("sizes"), py::arg("ratio") = 1.5, py::arg("fill") = 0.5);

  m.def(
      "random_instance",
      [](std::size_t targetAtoms, double ratio, double fill, std::uint64_t seed) {
        InstanceSpec spec{targetAtoms, ratio, fill, seed};
        spec.check();
        const auto [grid, region] = randomGrid(spec);
        std::vector<std::vector<bool>> occupancy(static_cast<std::size_t>(grid.rows()));
        for (int r = 0; r < grid.rows(); ++r) {
          for (int c = 0; c < grid.cols(); ++c) {
            occupancy[static_cast<std::size_t>(r)].push_back(grid.occupied(r, c));
          }
        }
        return py::make_tuple(occupancy, py::make_tuple(region.rowOffset, region.colOffset,
                                                        region.height, region.width));
      },
      py::arg("n_t"), py::arg("ratio") = 1.5, py::arg("fill") = 0.5, py::arg("seed") = 0,
      "Seeded instance as (occupancy, region), identical to the command-line generator.");

  m.def(
      "make_config",
      [](const py::kwargs& kwargs) {
        return loads(configToJson(toConfig(py::dict(kwargs))));
      },
      "Full planner config with the given keys overridden; raises ValueError on bad keys.");

  m.attr("PLAN_FORMAT") = kPlanFormat;
  m.attr("__version__") = AODSORT_VERSION;
}
