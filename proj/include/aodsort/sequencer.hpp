#pragma once

#include <vector>

#include "aodsort/config.hpp"
#include "aodsort/cost.hpp"
#include "aodsort/grid.hpp"
#include "aodsort/move.hpp"
#include "aodsort/plan.hpp"

namespace aodsort {

/// Greedy parallel rearrangement planner.
///
/// Every iteration pools the candidates of four suggesters, executes the one
/// with the best net-filled-sites-per-microsecond ratio after growing it with
/// two optimisation passes, and stops once the target region is full. Atoms
/// are only ever carried from outside the region onto region vacancies (the
/// in-line compactification move is the one exception: it may shift atoms
/// that already sit inside the region along their line).

/// Single-axis in-line moves that pack the atoms of a row or column into the
/// region's span on that line. At most one candidate per line.
std::vector<CompositeMove> suggestCompactification(const OccupancyGrid& grid,
                                                   const TargetRegion& region,
                                                   const PlannerConfig& config);

/// Moves one row (column) perpendicular to itself into a region row (column),
/// travelling in the gaps between columns (rows). At most one candidate per
/// source line.
std::vector<CompositeMove> suggestLateral(const OccupancyGrid& grid, const TargetRegion& region,
                                          const PlannerConfig& config);

/// Shifts one row (column) along its own direction while travelling in the
/// adjacent gap, then drops onto the same or a neighbouring line.
std::vector<CompositeMove> suggestLengthwise(const OccupancyGrid& grid,
                                             const TargetRegion& region,
                                             const PlannerConfig& config);

/// Multi row/column moves. Source/target line pairs are ranked by atom
/// surplus and vacancy deficit; the first `comboBudget` pairs seed a move
/// that is then grown with compatible lines. Sorted by descending fitness.
std::vector<CompositeMove> suggestComplex(const OccupancyGrid& grid, const TargetRegion& region,
                                          const PlannerConfig& config);

/// Adds the (source, target) row or column pair that improves fitness most,
/// repeatedly, while the move stays valid.
CompositeMove optimizeAddTones(const CompositeMove& move, const OccupancyGrid& grid,
                               const TargetRegion& region, const PlannerConfig& config);

/// Adds one row and one column tone jointly to fill vacancies that share no
/// line with the vacancies the move already serves.
CompositeMove optimizeIndependentSites(const CompositeMove& move, const OccupancyGrid& grid,
                                       const TargetRegion& region, const PlannerConfig& config);

/// Strict candidate order used for selection: higher fitness, then lower
/// time demand, then lexicographically smaller tones. Fitness and time are
/// compared with a relative tolerance so that a uniform rescaling of the cost
/// cannot reorder candidates through rounding.
bool betterCandidate(const CompositeMove& a, const Fitness& fa, const CompositeMove& b,
                     const Fitness& fb);

PlanResult plan(const OccupancyGrid& grid, const TargetRegion& region,
                const PlannerConfig& config);

} // namespace aodsort
