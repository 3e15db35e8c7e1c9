#include "aodsort/cost.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace aodsort {

void CostParams::check() const {
  const bool finite = std::isfinite(constantOffset) && std::isfinite(perSubstepOffset) &&
                      std::isfinite(linearFactor) && std::isfinite(sqrtFactor) &&
                      std::isfinite(sitePitch);
  if (!finite || constantOffset < 0 || perSubstepOffset < 0 || linearFactor < 0 ||
      sqrtFactor < 0) {
    throw ConfigError("cost parameters must be finite and non-negative");
  }
  if (!(sitePitch > 0)) {
    throw ConfigError("site pitch must be positive");
  }
}

CostParams presetTm() {
  CostParams p;
  p.constantOffset = 120.0;
  p.perSubstepOffset = 0.0;
  p.linearFactor = 1.0 / 0.13;
  p.sqrtFactor = 0.0;
  p.sitePitch = 1.0;
  return p;
}

CostParams presetTm2() {
  CostParams p = presetTm();
  p.linearFactor = 1.0 / 0.55;
  return p;
}

CostParams costPreset(const std::string& name) {
  if (name == "tm") {
    return presetTm();
  }
  if (name == "tm2") {
    return presetTm2();
  }
  throw ConfigError("unknown cost preset '" + name + "' (expected tm or tm2)");
}

double moveDistance(const CompositeMove& move, double sitePitch) {
  return moveDistanceSites(move) * sitePitch;
}

double timeDemandFromSubsteps(const CostParams& params, std::span<const double> substepSites) {
  // Substep distances are half-site multiples, so the plain sum is exact and
  // routes with the same total get bit-identical times.
  const double total = std::accumulate(substepSites.begin(), substepSites.end(), 0.0);
  double t = params.constantOffset +
             params.perSubstepOffset * static_cast<double>(substepSites.size()) +
             params.linearFactor * (total * params.sitePitch);
  if (params.sqrtFactor != 0.0) {
    std::vector<double> sorted(substepSites.begin(), substepSites.end());
    std::sort(sorted.begin(), sorted.end());
    double roots = 0.0;
    for (const double sites : sorted) {
      roots += std::sqrt(sites * params.sitePitch);
    }
    t += params.sqrtFactor * roots;
  }
  return t;
}

double timeDemand(const CostParams& params, const CompositeMove& move) {
  return timeDemandFromSubsteps(params, substepDistancesSites(move));
}

long netFilled(const OccupancyGrid& grid, const TargetRegion& region, const CompositeMove& move) {
  long net = 0;
  for (const auto& [i, j] : carriedTraps(grid, move)) {
    if (region.contains(move.rowTones[i].end() / 2, move.colTones[j].end() / 2)) {
      ++net;
    }
    if (region.contains(move.rowTones[i].start() / 2, move.colTones[j].start() / 2)) {
      --net;
    }
  }
  return net;
}

Fitness fitness(const OccupancyGrid& grid, const TargetRegion& region, const CompositeMove& move,
                const CostParams& params) {
  Fitness f;
  f.netFilled = netFilled(grid, region, move);
  f.cost = timeDemand(params, move);
  f.value = f.cost > 0 ? static_cast<double>(f.netFilled) / f.cost : 0.0;
  return f;
}

} // namespace aodsort
