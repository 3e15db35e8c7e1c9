#include "aodsort/move.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace aodsort {

namespace {

constexpr std::array<std::pair<ViolationKind, std::string_view>, 11> kViolationNames{{
    {ViolationKind::ToneLimit, "tone-limit"},
    {ViolationKind::TrapLimit, "trap-limit"},
    {ViolationKind::ToneCrossing, "tone-crossing"},
    {ViolationKind::OutOfBounds, "out-of-bounds"},
    {ViolationKind::PathCollision, "path-collision"},
    {ViolationKind::DropOccupied, "drop-occupied"},
    {ViolationKind::PickupDropConflict, "pickup-drop-conflict"},
    {ViolationKind::ReMoveForbidden, "re-move-forbidden"},
    {ViolationKind::EmptyOntoOccupied, "empty-onto-occupied"},
    {ViolationKind::NonLatticeEndpoint, "non-lattice-endpoint"},
    {ViolationKind::MotionForbidden, "motion-forbidden"},
}};

bool isEven(int v) { return (v & 1) == 0; }

std::string siteText(int doubledRow, int doubledCol) {
  std::ostringstream out;
  out << '(' << doubledRow / 2.0 << ", " << doubledCol / 2.0 << ')';
  return out.str();
}

std::vector<int> startCoordinates(const std::vector<ToneTrajectory>& tones) {
  std::vector<int> coords;
  coords.reserve(tones.size());
  for (const auto& tone : tones) {
    coords.push_back(tone.start());
  }
  return coords;
}

} // namespace

std::string_view toString(ViolationKind kind) {
  for (const auto& [k, name] : kViolationNames) {
    if (k == kind) {
      return name;
    }
  }
  return "unknown";
}

ViolationKind violationKindFromString(std::string_view name) {
  for (const auto& [k, n] : kViolationNames) {
    if (n == name) {
      return k;
    }
  }
  throw std::invalid_argument("unknown violation kind '" + std::string(name) + "'");
}

void CompositeMove::checkShape() const {
  if (rowTones.empty() || colTones.empty()) {
    throw std::invalid_argument("a move needs at least one tone on each axis");
  }
  const std::size_t length = rowTones.front().path.size();
  if (length < 2) {
    throw std::invalid_argument("tone paths need at least two waypoints");
  }
  for (const auto& tone : rowTones) {
    if (tone.axis != Axis::Row) {
      throw std::invalid_argument("row tone tagged with the column axis");
    }
    if (tone.path.size() != length) {
      throw std::invalid_argument("tone paths differ in length");
    }
  }
  for (const auto& tone : colTones) {
    if (tone.axis != Axis::Col) {
      throw std::invalid_argument("column tone tagged with the row axis");
    }
    if (tone.path.size() != length) {
      throw std::invalid_argument("tone paths differ in length");
    }
  }
}

bool CompositeMove::operator<(const CompositeMove& other) const {
  const auto lhsRows = startCoordinates(rowTones);
  const auto rhsRows = startCoordinates(other.rowTones);
  if (lhsRows != rhsRows) {
    return lhsRows < rhsRows;
  }
  const auto lhsCols = startCoordinates(colTones);
  const auto rhsCols = startCoordinates(other.colTones);
  if (lhsCols != rhsCols) {
    return lhsCols < rhsCols;
  }
  const auto paths = [](const CompositeMove& m) {
    std::vector<std::vector<int>> all;
    for (const auto& t : m.rowTones) {
      all.push_back(t.path);
    }
    for (const auto& t : m.colTones) {
      all.push_back(t.path);
    }
    return all;
  };
  return paths(*this) < paths(other);
}

std::vector<TrapPosition> trapGrid(const CompositeMove& move, std::size_t waypoint) {
  if (waypoint >= move.waypoints()) {
    throw std::out_of_range("waypoint " + std::to_string(waypoint) + " outside move with " +
                            std::to_string(move.waypoints()) + " waypoints");
  }
  std::vector<TrapPosition> traps;
  traps.reserve(move.trapCount());
  for (const auto& row : move.rowTones) {
    for (const auto& col : move.colTones) {
      traps.push_back({row.path[waypoint], col.path[waypoint]});
    }
  }
  return traps;
}

std::vector<double> substepDistancesSites(const CompositeMove& move) {
  std::vector<double> distances;
  const std::size_t steps = move.substeps();
  distances.reserve(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    int longest = 0;
    for (const auto* tones : {&move.rowTones, &move.colTones}) {
      for (const auto& tone : *tones) {
        longest = std::max(longest, std::abs(tone.path[i + 1] - tone.path[i]));
      }
    }
    distances.push_back(longest / 2.0);
  }
  return distances;
}

double moveDistanceSites(const CompositeMove& move) {
  const auto distances = substepDistancesSites(move);
  return std::accumulate(distances.begin(), distances.end(), 0.0);
}

std::vector<TrapIndex> carriedTraps(const OccupancyGrid& grid, const CompositeMove& move) {
  std::vector<TrapIndex> carried;
  for (std::size_t i = 0; i < move.rowTones.size(); ++i) {
    const int r = move.rowTones[i].start();
    for (std::size_t j = 0; j < move.colTones.size(); ++j) {
      const int c = move.colTones[j].start();
      if (isEven(r) && isEven(c) && grid.inBounds(r / 2, c / 2) && grid.occupied(r / 2, c / 2)) {
        carried.push_back({i, j});
      }
    }
  }
  return carried;
}

std::vector<MoveViolation> validateMove(const OccupancyGrid& grid, const CompositeMove& move,
                                        const PlannerConfig& config) {
  move.checkShape();
  std::vector<MoveViolation> violations;
  const auto report = [&](ViolationKind kind, std::string detail) {
    violations.push_back({kind, std::move(detail)});
  };

  const std::size_t nRows = move.rowTones.size();
  const std::size_t nCols = move.colTones.size();
  const std::size_t last = move.waypoints() - 1;

  if (nRows > static_cast<std::size_t>(config.maxRowTones) ||
      nCols > static_cast<std::size_t>(config.maxColTones)) {
    report(ViolationKind::ToneLimit, std::to_string(nRows) + " row tones / " +
                                         std::to_string(nCols) + " column tones exceed " +
                                         std::to_string(config.maxRowTones) + " / " +
                                         std::to_string(config.maxColTones));
  }
  if (nRows * nCols > static_cast<std::size_t>(config.maxTraps)) {
    report(ViolationKind::TrapLimit, std::to_string(nRows * nCols) + " traps exceed " +
                                         std::to_string(config.maxTraps));
  }

  bool geometryOk = true;
  const auto checkAxis = [&](const std::vector<ToneTrajectory>& tones, int extent,
                             bool gapAllowed, const char* name) {
    const int maxCoord = 2 * (extent - 1);
    for (std::size_t w = 0; w <= last; ++w) {
      for (std::size_t t = 0; t + 1 < tones.size(); ++t) {
        if (tones[t].path[w] >= tones[t + 1].path[w]) {
          report(ViolationKind::ToneCrossing,
                 std::string(name) + " tones " + std::to_string(t) + " and " +
                     std::to_string(t + 1) + " not strictly ordered at waypoint " +
                     std::to_string(w));
          geometryOk = false;
        }
      }
    }
    for (std::size_t t = 0; t < tones.size(); ++t) {
      const auto& path = tones[t].path;
      for (std::size_t w = 0; w <= last; ++w) {
        if (path[w] < 0 || path[w] > maxCoord) {
          report(ViolationKind::OutOfBounds, std::string(name) + " tone " + std::to_string(t) +
                                                 " at coordinate " + std::to_string(path[w]) +
                                                 " (waypoint " + std::to_string(w) + ")");
          geometryOk = false;
          break;
        }
      }
      if (!isEven(path.front()) || !isEven(path.back())) {
        report(ViolationKind::NonLatticeEndpoint,
               std::string(name) + " tone " + std::to_string(t) + " starts or ends between sites");
        geometryOk = false;
      }
      if (!gapAllowed &&
          std::any_of(path.begin(), path.end(), [](int v) { return !isEven(v); })) {
        report(ViolationKind::MotionForbidden, std::string(name) + " tone " + std::to_string(t) +
                                                   " enters a gap but gap motion is disabled");
      }
    }
  };
  checkAxis(move.rowTones, grid.rows(), config.allowRowGapMotion, "row");
  checkAxis(move.colTones, grid.cols(), config.allowColGapMotion, "column");

  if (!geometryOk) {
    // Occupancy rules need lattice endpoints inside the grid.
    return violations;
  }

  std::vector<std::uint8_t> carried(nRows * nCols, 0);
  OccupancyGrid effective = grid;
  for (std::size_t i = 0; i < nRows; ++i) {
    for (std::size_t j = 0; j < nCols; ++j) {
      const int r = move.rowTones[i].start() / 2;
      const int c = move.colTones[j].start() / 2;
      if (grid.occupied(r, c)) {
        carried[i * nCols + j] = 1;
        effective.setOccupied(r, c, false);
      }
    }
  }

  // (6) lattice points crossed by each trap segment.
  for (std::size_t i = 0; i < nRows; ++i) {
    const auto& rowPath = move.rowTones[i].path;
    for (std::size_t j = 0; j < nCols; ++j) {
      const auto& colPath = move.colTones[j].path;
      for (std::size_t s = 0; s < last; ++s) {
        const int r0 = rowPath[s];
        const int c0 = colPath[s];
        const int dr = rowPath[s + 1] - r0;
        const int dc = colPath[s + 1] - c0;
        if ((dr == 0 && !isEven(r0)) || (dc == 0 && !isEven(c0))) {
          continue;
        }
        const int g = std::gcd(std::abs(dr), std::abs(dc));
        const int stepR = g == 0 ? 0 : dr / g;
        const int stepC = g == 0 ? 0 : dc / g;
        for (int k = 0; k <= g; ++k) {
          const int r = r0 + k * stepR;
          const int c = c0 + k * stepC;
          if (!isEven(r) || !isEven(c)) {
            continue;
          }
          const bool isMoveStart = s == 0 && k == 0;
          const bool isMoveEnd = s + 1 == last && k == g;
          if (isMoveStart || isMoveEnd) {
            continue;
          }
          if (effective.occupied(r / 2, c / 2)) {
            report(ViolationKind::PathCollision,
                   "trap (" + std::to_string(i) + ", " + std::to_string(j) + ") crosses occupied " +
                       siteText(r, c) + " during substep " + std::to_string(s));
            break;
          }
        }
      }
    }
  }

  std::map<std::pair<int, int>, std::size_t> dropOwners;
  for (std::size_t i = 0; i < nRows; ++i) {
    for (std::size_t j = 0; j < nCols; ++j) {
      const int startR = move.rowTones[i].start() / 2;
      const int startC = move.colTones[j].start() / 2;
      const int endR = move.rowTones[i].end() / 2;
      const int endC = move.colTones[j].end() / 2;
      const std::string trap = "trap (" + std::to_string(i) + ", " + std::to_string(j) + ")";
      if (!dropOwners.emplace(std::pair{endR, endC}, i * nCols + j).second) {
        report(ViolationKind::PickupDropConflict,
               trap + " shares its drop site " + siteText(2 * endR, 2 * endC));
      }
      if (carried[i * nCols + j]) {
        if (effective.occupied(endR, endC)) {
          report(ViolationKind::DropOccupied,
                 trap + " drops onto occupied " + siteText(2 * endR, 2 * endC));
        }
        if (!config.allowMultipleMoves && grid.moved(startR, startC)) {
          report(ViolationKind::ReMoveForbidden,
                 trap + " picks up already moved atom at " + siteText(2 * startR, 2 * startC));
        }
      } else if (!config.allowEmptyOntoOccupied && effective.occupied(endR, endC)) {
        report(ViolationKind::EmptyOntoOccupied,
               trap + " is empty and ends on occupied " + siteText(2 * endR, 2 * endC));
      }
    }
  }
  return violations;
}

OccupancyGrid applyMoveUnchecked(const OccupancyGrid& grid, const CompositeMove& move) {
  OccupancyGrid next = grid;
  const auto carried = carriedTraps(grid, move);
  for (const auto& [i, j] : carried) {
    next.setOccupied(move.rowTones[i].start() / 2, move.colTones[j].start() / 2, false);
  }
  for (const auto& [i, j] : carried) {
    const int r = move.rowTones[i].end() / 2;
    const int c = move.colTones[j].end() / 2;
    next.setOccupied(r, c, true);
    next.setMoved(r, c, true);
  }
  return next;
}

OccupancyGrid applyMove(const OccupancyGrid& grid, const CompositeMove& move,
                        const PlannerConfig& config) {
  const auto violations = validateMove(grid, move, config);
  if (!violations.empty()) {
    throw std::logic_error("applyMove on invalid move: " +
                           std::string(toString(violations.front().kind)) + ": " +
                           violations.front().detail);
  }
  return applyMoveUnchecked(grid, move);
}

} // namespace aodsort
