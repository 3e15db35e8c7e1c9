#pragma once

#include <span>
#include <vector>

#include "aodsort/config.hpp"
#include "aodsort/grid.hpp"
#include "aodsort/move.hpp"

namespace aodsort {

/// Move distance in micrometres.
double moveDistance(const CompositeMove& move, double sitePitch);

/// Execution time of a move in microseconds.
double timeDemand(const CostParams& params, const CompositeMove& move);

/// Same as timeDemand, from per-substep distances given in sites.
double timeDemandFromSubsteps(const CostParams& params, std::span<const double> substepSites);

/// Net target sites gained per microsecond of execution time.
struct Fitness {
  long netFilled = 0;
  double cost = 0.0;
  double value = 0.0;
};

/// Change in target vacancies if the move were executed: carried drops
/// inside the region minus carried pickups inside the region.
long netFilled(const OccupancyGrid& grid, const TargetRegion& region, const CompositeMove& move);

Fitness fitness(const OccupancyGrid& grid, const TargetRegion& region, const CompositeMove& move,
                const CostParams& params);

} // namespace aodsort
