#include "aodsort/plan.hpp"

#include "aodsort/cost.hpp"

namespace aodsort {

std::string_view toString(PlanFailure failure) {
  switch (failure) {
  case PlanFailure::InsufficientAtoms:
    return "insufficient-atoms";
  case PlanFailure::NoProgress:
    return "no-progress";
  }
  return "unknown";
}

Plan makePlan(std::vector<CompositeMove> moves, const CostParams& cost) {
  Plan plan;
  plan.moves = std::move(moves);
  for (const auto& move : plan.moves) {
    plan.totalTime += timeDemand(cost, move);
    plan.totalDistance += moveDistance(move, cost.sitePitch);
  }
  return plan;
}

ReplayReport replayPlan(const OccupancyGrid& initial, const TargetRegion& region,
                        const std::vector<CompositeMove>& moves, const PlannerConfig& config) {
  ReplayReport report{{}, initial, 0};
  for (std::size_t i = 0; i < moves.size(); ++i) {
    auto violations = validateMove(report.finalGrid, moves[i], config);
    if (!violations.empty()) {
      report.issues.push_back({i, std::move(violations)});
      continue;
    }
    report.finalGrid = applyMoveUnchecked(report.finalGrid, moves[i]);
  }
  report.finalVacancies = countTargetVacancies(report.finalGrid, region);
  return report;
}

} // namespace aodsort
