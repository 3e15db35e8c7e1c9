#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "aodsort/config.hpp"
#include "aodsort/grid.hpp"

namespace aodsort {

enum class Axis { Row, Col };

/// Coordinates of one AOD tone over the waypoints of a move, in half-site
/// units: 2k is site k, 2k+1 is the gap between sites k and k+1.
struct ToneTrajectory {
  Axis axis = Axis::Row;
  std::vector<int> path;

  int start() const { return path.front(); }
  int end() const { return path.back(); }
  bool operator==(const ToneTrajectory&) const = default;
};

/// One simultaneous rearrangement step. Traps sit at the Cartesian product
/// of row-tone and column-tone coordinates at every waypoint.
struct CompositeMove {
  std::vector<ToneTrajectory> rowTones;
  std::vector<ToneTrajectory> colTones;

  std::size_t waypoints() const { return rowTones.empty() ? 0 : rowTones.front().path.size(); }
  std::size_t substeps() const { return waypoints() == 0 ? 0 : waypoints() - 1; }
  std::size_t trapCount() const { return rowTones.size() * colTones.size(); }

  /// Throws std::invalid_argument when the type invariants do not hold
  /// (empty axes, short or ragged paths, wrong axis tags).
  void checkShape() const;

  bool operator==(const CompositeMove&) const = default;
  /// Lexicographic order over start coordinates, then full paths.
  bool operator<(const CompositeMove& other) const;
};

/// Half-site coordinate pair of a trap.
struct TrapPosition {
  int row;
  int col;
  bool operator==(const TrapPosition&) const = default;
  auto operator<=>(const TrapPosition&) const = default;
};

/// Trap (i, j) is formed by row tone i and column tone j.
struct TrapIndex {
  std::size_t rowTone;
  std::size_t colTone;
  bool operator==(const TrapIndex&) const = default;
  auto operator<=>(const TrapIndex&) const = default;
};

enum class ViolationKind {
  ToneLimit,
  TrapLimit,
  ToneCrossing,
  OutOfBounds,
  PathCollision,
  DropOccupied,
  PickupDropConflict,
  ReMoveForbidden,
  EmptyOntoOccupied,
  NonLatticeEndpoint,
  MotionForbidden,
};

std::string_view toString(ViolationKind kind);
ViolationKind violationKindFromString(std::string_view name);

struct MoveViolation {
  ViolationKind kind;
  std::string detail;
};

/// All trap coordinates at a waypoint, row-tone major.
std::vector<TrapPosition> trapGrid(const CompositeMove& move, std::size_t waypoint);

/// Sum over substeps of the largest single-tone displacement, in sites.
double moveDistanceSites(const CompositeMove& move);
/// Per-substep largest displacement, in sites.
std::vector<double> substepDistancesSites(const CompositeMove& move);

/// Traps whose pickup site holds an atom.
std::vector<TrapIndex> carriedTraps(const OccupancyGrid& grid, const CompositeMove& move);

std::vector<MoveViolation> validateMove(const OccupancyGrid& grid, const CompositeMove& move,
                                        const PlannerConfig& config);

/// Picks up every carried atom and drops it at the trap's final site, marking
/// it moved. Throws std::logic_error if the move is invalid for `config`.
OccupancyGrid applyMove(const OccupancyGrid& grid, const CompositeMove& move,
                        const PlannerConfig& config = PlannerConfig{});

/// applyMove without the validity check; the caller vouches for the move.
OccupancyGrid applyMoveUnchecked(const OccupancyGrid& grid, const CompositeMove& move);

} // namespace aodsort
