#pragma once

#include <string>
#include <string_view>

#include "aodsort/config.hpp"
#include "aodsort/grid.hpp"

namespace aodsort {

/// Environment variable naming the config file used when none is given.
inline constexpr const char* kConfigEnvVar = "AODSORT_CONFIG";

/// Parses a JSON config object. Keys:
///   n_h, n_v, k, combo_budget                      integers >= 1
///   allow_row_gap_motion, allow_col_gap_motion,
///   allow_multiple_moves, allow_empty_onto_occupied booleans
///   cost   "tm" | "tm2" | {constant_offset, per_substep_offset,
///                          linear_factor, sqrt_factor, site_pitch}
/// Missing keys keep their defaults; unknown keys are rejected.
PlannerConfig parseConfigJson(const std::string& text);
PlannerConfig loadConfigFile(const std::string& path);
std::string configToJson(const PlannerConfig& config);

/// Applies one KEY=VALUE override. Planner keys are the config file keys,
/// with cost fields addressed as cost.<field>. Instance keys are n_t,
/// ratio, fill and seed; they are rejected when `instance` is null.
void applyOverride(PlannerConfig& config, InstanceSpec* instance, std::string_view assignment);

} // namespace aodsort
