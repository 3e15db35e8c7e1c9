#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "aodsort/config.hpp"
#include "aodsort/grid.hpp"
#include "aodsort/move.hpp"
#include "aodsort/plan.hpp"

namespace aodsort {

inline constexpr const char* kPlanFormat = "aodsort-plan/1";

/// Malformed plan text. The message names the offending line or field,
/// e.g. "moves[2].cols[0][1]: expected an integer".
class PlanParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct PlanFile {
  int gridRows = 0;
  int gridCols = 0;
  TargetRegion region;
  std::vector<CompositeMove> moves;
};

/// JSON document:
///   {"format": "aodsort-plan/1",
///    "grid": {"rows": R, "cols": C},
///    "target": {"row_offset", "col_offset", "height", "width"},
///    "moves": [{"rows": [[y0, y1, ...], ...], "cols": [[x0, ...], ...],
///               "distance_um": d, "cost_us": t}, ...],
///    "move_count": n, "total_distance_um": D, "total_time_us": T}
/// Coordinates are in half-site units (2k = site k). Per-move and total
/// figures are informational and recomputed on load.
std::string serializePlan(const std::vector<CompositeMove>& moves, int gridRows, int gridCols,
                          const TargetRegion& region, const CostParams& cost);

PlanFile parsePlan(const std::string& text);

} // namespace aodsort
