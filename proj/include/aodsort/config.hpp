#pragma once

#include <cstddef>
#include <string>

namespace aodsort {

/// Generalized time-demand parameters:
/// t = constantOffset + perSubstepOffset * substeps
///     + sum_i (linearFactor * d_i + sqrtFactor * sqrt(d_i)),
/// with d_i the longest tone displacement of substep i in micrometres.
struct CostParams {
  double constantOffset = 120.0;      // us
  double perSubstepOffset = 0.0;      // us
  double linearFactor = 1.0 / 0.55;   // us per um
  double sqrtFactor = 0.0;            // us per sqrt(um)
  double sitePitch = 1.0;             // um per site

  void check() const;
  bool operator==(const CostParams&) const = default;
};

/// 120 us + d / (0.13 um/us)
CostParams presetTm();
/// 120 us + d / (0.55 um/us)
CostParams presetTm2();
/// Looks up "tm" or "tm2"; throws ConfigError otherwise.
CostParams costPreset(const std::string& name);

struct PlannerConfig {
  int maxColTones = 16;   // n_h, horizontal AOD
  int maxRowTones = 16;   // n_v, vertical AOD
  int maxTraps = 256;     // k
  bool allowRowGapMotion = true;
  bool allowColGapMotion = true;
  std::size_t comboBudget = 64;
  CostParams cost = presetTm2();
  bool allowMultipleMoves = false;
  bool allowEmptyOntoOccupied = true;

  void check() const;
  bool operator==(const PlannerConfig&) const = default;
};

} // namespace aodsort
