#pragma once

#include "aodsort/config.hpp"
#include "aodsort/grid.hpp"
#include "aodsort/plan.hpp"

namespace aodsort {

/// Single-trap reference planner. Each move carries the usable atom closest
/// (Manhattan distance) to any region vacancy onto that vacancy, on the
/// cheapest valid route: a straight line when nothing is in the way,
/// otherwise half-step into the gaps, travel, half-step back. Ties go to the
/// lower atom index, then the lower vacancy index (row-major).
PlanResult planSequential(const OccupancyGrid& grid, const TargetRegion& region,
                          const PlannerConfig& config);

} // namespace aodsort
