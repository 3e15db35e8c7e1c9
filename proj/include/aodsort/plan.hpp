#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "aodsort/config.hpp"
#include "aodsort/grid.hpp"
#include "aodsort/move.hpp"

namespace aodsort {

struct Plan {
  std::vector<CompositeMove> moves;
  double totalTime = 0.0;      // us, under the planning cost
  double totalDistance = 0.0;  // um

  std::size_t moveCount() const { return moves.size(); }
  bool operator==(const Plan&) const = default;
};

enum class PlanFailure { InsufficientAtoms, NoProgress };

std::string_view toString(PlanFailure failure);

/// Either a plan or the reason no plan was produced.
class PlanResult {
public:
  PlanResult(Plan plan) : plan_(std::move(plan)) {}
  PlanResult(PlanFailure failure) : failure_(failure) {}

  bool ok() const { return plan_.has_value(); }
  explicit operator bool() const { return ok(); }

  const Plan& plan() const { return plan_.value(); }
  Plan& plan() { return plan_.value(); }
  PlanFailure failure() const { return failure_.value(); }

private:
  std::optional<Plan> plan_;
  std::optional<PlanFailure> failure_;
};

/// Totals of `moves` under `cost`.
Plan makePlan(std::vector<CompositeMove> moves, const CostParams& cost);

/// Result of replaying a move list from an initial grid.
struct ReplayReport {
  struct MoveIssue {
    std::size_t moveIndex;
    std::vector<MoveViolation> violations;
  };
  std::vector<MoveIssue> issues;
  OccupancyGrid finalGrid;
  std::size_t finalVacancies = 0;

  bool clean() const { return issues.empty() && finalVacancies == 0; }
};

/// Validates each move against the grid state left by its predecessors.
/// Invalid moves are reported and skipped.
ReplayReport replayPlan(const OccupancyGrid& initial, const TargetRegion& region,
                        const std::vector<CompositeMove>& moves, const PlannerConfig& config);

} // namespace aodsort
