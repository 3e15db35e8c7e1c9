#pragma once

// Internal building blocks shared by the greedy sequencer and the sequential
// baseline: moves described as (source line -> target line) pairs per axis,
// the router that turns them into waypoint paths, and a per-state lookup of
// which sites may be picked up or dropped onto.

#include <compare>
#include <optional>
#include <vector>

#include "aodsort/config.hpp"
#include "aodsort/grid.hpp"
#include "aodsort/move.hpp"

namespace aodsort::detail {

struct LinePair {
  int from;
  int to;
  auto operator<=>(const LinePair&) const = default;
};

/// Rows and columns mapped monotonically: both `from` and `to` strictly
/// increase along each vector.
struct PairMove {
  std::vector<LinePair> rows;
  std::vector<LinePair> cols;

  int maxRowTravel() const;
  int maxColTravel() const;
  std::size_t trapCount() const { return rows.size() * cols.size(); }
};

/// Position at which `pair` keeps both sides strictly increasing, or -1 if
/// no such position exists (or either line is already used).
int insertionIndex(const std::vector<LinePair>& pairs, LinePair pair);

/// Rough distance in sites used to rank candidates before routing: a
/// half-step off the lattice, travel on each axis, a half-step back.
double estimateDistanceSites(int rowTravel, int colTravel);

/// Cheapest valid waypoint route for the pairs, trying half-step offsets in
/// {-1, 0, +1} per axis at departure and arrival and both travel orders.
/// Returns nullopt when every route violates some rule.
std::optional<CompositeMove> routePairMove(const PairMove& pairs, const OccupancyGrid& grid,
                                           const PlannerConfig& config);

/// Start and end line of every tone of a move.
PairMove toPairMove(const CompositeMove& move);

/// Pickup/drop rules for one grid state. An atom is usable when it sits
/// outside the region and may still be moved; a vacancy is an empty region
/// site.
class SiteRules {
public:
  SiteRules(const OccupancyGrid& grid, const TargetRegion& region, const PlannerConfig& config);

  bool occupied(int r, int c) const { return at(occupied_, r, c); }
  bool usable(int r, int c) const { return at(usable_, r, c); }
  bool vacancy(int r, int c) const { return at(vacancy_, r, c); }

  /// Outcome of a trap from (sr, sc) to (tr, tc).
  enum class Trap { Conflict, Empty, Fills };
  Trap trap(int sr, int sc, int tr, int tc) const {
    if (occupied(sr, sc)) {
      return usable(sr, sc) && vacancy(tr, tc) ? Trap::Fills : Trap::Conflict;
    }
    if (!allowEmptyOntoOccupied_ && occupied(tr, tc)) {
      return Trap::Conflict;
    }
    return Trap::Empty;
  }

  /// Number of filling traps, or -1 if any trap conflicts.
  int evaluate(const PairMove& pairs) const;

  int rows() const { return rows_; }
  int cols() const { return cols_; }

private:
  bool at(const std::vector<std::uint8_t>& v, int r, int c) const {
    return v[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) +
             static_cast<std::size_t>(c)] != 0;
  }

  int rows_;
  int cols_;
  bool allowEmptyOntoOccupied_;
  std::vector<std::uint8_t> occupied_;
  std::vector<std::uint8_t> usable_;
  std::vector<std::uint8_t> vacancy_;
};

} // namespace aodsort::detail
