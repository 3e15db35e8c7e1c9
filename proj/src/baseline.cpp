#include "aodsort/baseline.hpp"

#include <cstdlib>
#include <limits>
#include <optional>
#include <set>
#include <utility>

#include "pair_move.hpp"

namespace aodsort {

namespace {

struct Site {
  int r;
  int c;
};

} // namespace

PlanResult planSequential(const OccupancyGrid& grid, const TargetRegion& region,
                          const PlannerConfig& config) {
  config.check();
  if (!region.fitsIn(grid)) {
    throw ConfigError("target region does not fit into the grid");
  }
  if (totalAtoms(grid) < region.area()) {
    return PlanFailure::InsufficientAtoms;
  }

  OccupancyGrid state = grid;
  std::vector<CompositeMove> moves;
  while (true) {
    const detail::SiteRules rules(state, region, config);
    std::vector<Site> atoms;
    std::vector<Site> vacancies;
    for (int r = 0; r < state.rows(); ++r) {
      for (int c = 0; c < state.cols(); ++c) {
        if (rules.usable(r, c)) {
          atoms.push_back({r, c});
        } else if (rules.vacancy(r, c)) {
          vacancies.push_back({r, c});
        }
      }
    }
    if (vacancies.empty()) {
      break;
    }

    std::set<std::pair<std::size_t, std::size_t>> unroutable;
    std::optional<CompositeMove> chosen;
    while (!chosen) {
      int bestDistance = std::numeric_limits<int>::max();
      std::pair<std::size_t, std::size_t> best{atoms.size(), vacancies.size()};
      for (std::size_t a = 0; a < atoms.size(); ++a) {
        for (std::size_t v = 0; v < vacancies.size(); ++v) {
          const int d = std::abs(atoms[a].r - vacancies[v].r) + std::abs(atoms[a].c - vacancies[v].c);
          if (d < bestDistance && !unroutable.contains({a, v})) {
            bestDistance = d;
            best = {a, v};
          }
        }
      }
      if (best.first == atoms.size()) {
        return PlanFailure::NoProgress;
      }
      const Site& atom = atoms[best.first];
      const Site& vacancy = vacancies[best.second];
      detail::PairMove pairs;
      pairs.rows = {{atom.r, vacancy.r}};
      pairs.cols = {{atom.c, vacancy.c}};
      chosen = detail::routePairMove(pairs, state, config);
      if (!chosen) {
        unroutable.insert(best);
      }
    }
    state = applyMoveUnchecked(state, *chosen);
    moves.push_back(std::move(*chosen));
  }
  return makePlan(std::move(moves), config.cost);
}

} // namespace aodsort
