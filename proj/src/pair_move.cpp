#include "pair_move.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <tuple>

#include "aodsort/cost.hpp"

namespace aodsort::detail {

namespace {

int maxTravel(const std::vector<LinePair>& pairs) {
  int longest = 0;
  for (const auto& p : pairs) {
    longest = std::max(longest, std::abs(p.to - p.from));
  }
  return longest;
}

bool isRouteIndependent(ViolationKind kind) {
  switch (kind) {
  case ViolationKind::ToneLimit:
  case ViolationKind::TrapLimit:
  case ViolationKind::DropOccupied:
  case ViolationKind::PickupDropConflict:
  case ViolationKind::ReMoveForbidden:
  case ViolationKind::EmptyOntoOccupied:
    return true;
  default:
    return false;
  }
}

enum class Order { RowsFirst, ColsFirst };

struct RouteShape {
  Order order;
  int rowDepart;
  int colDepart;
  int rowArrive;
  int colArrive;
};

constexpr std::array<int, 3> kOffsets{0, -1, 1};

/// Doubled coordinates of one tone at the five template waypoints.
std::array<int, 5> toneWaypoints(const LinePair& p, int depart, int arrive, bool travelsFirst) {
  const int a = 2 * p.from;
  const int b = 2 * p.to;
  if (travelsFirst) {
    return {a, a + depart, b + arrive, b + arrive, b};
  }
  return {a, a + depart, a + depart, b + arrive, b};
}

bool offsetsInBounds(const std::vector<LinePair>& pairs, int depart, int arrive, int extent) {
  const int maxCoord = 2 * (extent - 1);
  return std::all_of(pairs.begin(), pairs.end(), [&](const LinePair& p) {
    const int x = 2 * p.from + depart;
    const int y = 2 * p.to + arrive;
    return x >= 0 && x <= maxCoord && y >= 0 && y <= maxCoord;
  });
}

} // namespace

int PairMove::maxRowTravel() const { return maxTravel(rows); }
int PairMove::maxColTravel() const { return maxTravel(cols); }

int insertionIndex(const std::vector<LinePair>& pairs, LinePair pair) {
  const auto fromIt = std::lower_bound(pairs.begin(), pairs.end(), pair.from,
                                       [](const LinePair& p, int v) { return p.from < v; });
  const auto idx = static_cast<std::size_t>(fromIt - pairs.begin());
  if (fromIt != pairs.end() && fromIt->from == pair.from) {
    return -1;
  }
  if (idx > 0 && pairs[idx - 1].to >= pair.to) {
    return -1;
  }
  if (idx < pairs.size() && pairs[idx].to <= pair.to) {
    return -1;
  }
  return static_cast<int>(idx);
}

double estimateDistanceSites(int rowTravel, int colTravel) {
  return 1.0 + rowTravel + colTravel;
}

std::optional<CompositeMove> routePairMove(const PairMove& pairs, const OccupancyGrid& grid,
                                           const PlannerConfig& config) {
  if (pairs.rows.empty() || pairs.cols.empty()) {
    return std::nullopt;
  }

  struct Option {
    double cost;
    bool needsCollisionCheck;
    std::size_t id;
    RouteShape shape;
  };
  std::vector<Option> options;
  options.reserve(162);

  // Per-axis substep maxima depend only on that axis's offsets and on
  // whether the axis travels first.
  struct AxisProfile {
    bool inBounds = false;
    std::array<int, 4> longest{};
  };
  const auto profile = [](const std::vector<LinePair>& axisPairs, int depart, int arrive,
                          bool travelsFirst, int extent) {
    AxisProfile result;
    result.inBounds = offsetsInBounds(axisPairs, depart, arrive, extent);
    if (!result.inBounds) {
      return result;
    }
    for (const auto& p : axisPairs) {
      const auto w = toneWaypoints(p, depart, arrive, travelsFirst);
      for (std::size_t s = 0; s < 4; ++s) {
        result.longest[s] = std::max(result.longest[s], std::abs(w[s + 1] - w[s]));
      }
    }
    return result;
  };
  std::array<AxisProfile, 18> rowProfiles;
  std::array<AxisProfile, 18> colProfiles;
  const auto profileIndex = [](int depart, int arrive, bool travelsFirst) {
    return static_cast<std::size_t>((depart + 1) * 6 + (arrive + 1) * 2 + (travelsFirst ? 1 : 0));
  };
  for (const int depart : kOffsets) {
    for (const int arrive : kOffsets) {
      for (const bool first : {false, true}) {
        const auto idx = profileIndex(depart, arrive, first);
        rowProfiles[idx] = profile(pairs.rows, depart, arrive, first, grid.rows());
        colProfiles[idx] = profile(pairs.cols, depart, arrive, first, grid.cols());
      }
    }
  }

  std::size_t id = 0;
  for (const Order order : {Order::RowsFirst, Order::ColsFirst}) {
    for (const int rd : kOffsets) {
      for (const int cd : kOffsets) {
        for (const int ra : kOffsets) {
          for (const int ca : kOffsets) {
            const RouteShape shape{order, rd, cd, ra, ca};
            ++id;
            if (!config.allowRowGapMotion && (rd != 0 || ra != 0)) {
              continue;
            }
            if (!config.allowColGapMotion && (cd != 0 || ca != 0)) {
              continue;
            }
            const bool rowsFirst = order == Order::RowsFirst;
            const auto& rowProfile = rowProfiles[profileIndex(rd, ra, rowsFirst)];
            const auto& colProfile = colProfiles[profileIndex(cd, ca, !rowsFirst)];
            if (!rowProfile.inBounds || !colProfile.inBounds) {
              continue;
            }
            std::array<int, 4> longest{};
            for (std::size_t s = 0; s < 4; ++s) {
              longest[s] = std::max(rowProfile.longest[s], colProfile.longest[s]);
            }
            // Travel on one axis is only gap-safe while the other axis sits
            // on an odd coordinate.
            const bool firstTravelSafe = longest[1] == 0 || (rowsFirst ? cd != 0 : rd != 0);
            const bool secondTravelSafe = longest[2] == 0 || (rowsFirst ? ra != 0 : ca != 0);
            std::array<double, 4> substeps{};
            std::size_t count = 0;
            for (const int l : longest) {
              if (l != 0) {
                substeps[count++] = l / 2.0;
              }
            }
            count = std::max<std::size_t>(count, 1);
            options.push_back({timeDemandFromSubsteps(config.cost,
                                                      std::span<const double>(substeps.data(), count)),
                               !(firstTravelSafe && secondTravelSafe), id, shape});
          }
        }
      }
    }
  }
  std::sort(options.begin(), options.end(), [](const Option& a, const Option& b) {
    return std::tie(a.cost, a.needsCollisionCheck, a.id) <
           std::tie(b.cost, b.needsCollisionCheck, b.id);
  });

  constexpr int kMaxUncheckedAttempts = 6;
  int attempts = 0;
  for (const auto& option : options) {
    if (option.needsCollisionCheck && ++attempts > kMaxUncheckedAttempts) {
      continue;
    }
    const auto& shape = option.shape;
    const bool rowsFirst = shape.order == Order::RowsFirst;
    std::vector<std::array<int, 5>> rowPaths;
    std::vector<std::array<int, 5>> colPaths;
    for (const auto& p : pairs.rows) {
      rowPaths.push_back(toneWaypoints(p, shape.rowDepart, shape.rowArrive, rowsFirst));
    }
    for (const auto& p : pairs.cols) {
      colPaths.push_back(toneWaypoints(p, shape.colDepart, shape.colArrive, !rowsFirst));
    }
    std::vector<std::size_t> kept{0};
    for (std::size_t w = 1; w < 5; ++w) {
      const auto moves = [&](const std::vector<std::array<int, 5>>& paths) {
        return std::any_of(paths.begin(), paths.end(),
                           [&](const auto& path) { return path[w] != path[kept.back()]; });
      };
      if (moves(rowPaths) || moves(colPaths)) {
        kept.push_back(w);
      }
    }
    if (kept.size() == 1) {
      kept.push_back(4);
    }
    CompositeMove move;
    for (const auto& path : rowPaths) {
      ToneTrajectory tone{Axis::Row, {}};
      for (const auto w : kept) {
        tone.path.push_back(path[w]);
      }
      move.rowTones.push_back(std::move(tone));
    }
    for (const auto& path : colPaths) {
      ToneTrajectory tone{Axis::Col, {}};
      for (const auto w : kept) {
        tone.path.push_back(path[w]);
      }
      move.colTones.push_back(std::move(tone));
    }
    const auto violations = validateMove(grid, move, config);
    if (violations.empty()) {
      return move;
    }
    if (std::any_of(violations.begin(), violations.end(),
                    [](const MoveViolation& v) { return isRouteIndependent(v.kind); })) {
      return std::nullopt;
    }
  }
  return std::nullopt;
}

PairMove toPairMove(const CompositeMove& move) {
  PairMove pairs;
  for (const auto& tone : move.rowTones) {
    pairs.rows.push_back({tone.start() / 2, tone.end() / 2});
  }
  for (const auto& tone : move.colTones) {
    pairs.cols.push_back({tone.start() / 2, tone.end() / 2});
  }
  return pairs;
}

SiteRules::SiteRules(const OccupancyGrid& grid, const TargetRegion& region,
                     const PlannerConfig& config)
    : rows_(grid.rows()), cols_(grid.cols()),
      allowEmptyOntoOccupied_(config.allowEmptyOntoOccupied) {
  const auto n = static_cast<std::size_t>(rows_) * static_cast<std::size_t>(cols_);
  occupied_.assign(n, 0);
  usable_.assign(n, 0);
  vacancy_.assign(n, 0);
  std::size_t i = 0;
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c, ++i) {
      const bool occ = grid.occupied(r, c);
      const bool inRegion = region.contains(r, c);
      occupied_[i] = occ ? 1 : 0;
      usable_[i] = occ && !inRegion && (config.allowMultipleMoves || !grid.moved(r, c)) ? 1 : 0;
      vacancy_[i] = !occ && inRegion ? 1 : 0;
    }
  }
}

int SiteRules::evaluate(const PairMove& pairs) const {
  int fills = 0;
  for (const auto& r : pairs.rows) {
    for (const auto& c : pairs.cols) {
      switch (trap(r.from, c.from, r.to, c.to)) {
      case Trap::Conflict:
        return -1;
      case Trap::Fills:
        ++fills;
        break;
      case Trap::Empty:
        break;
      }
    }
  }
  return fills;
}

} // namespace aodsort::detail
