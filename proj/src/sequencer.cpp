#include "aodsort/sequencer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <tuple>

#include "pair_move.hpp"

namespace aodsort {

using detail::LinePair;
using detail::PairMove;
using detail::SiteRules;

namespace {

constexpr double kRelativeTolerance = 1e-9;

int compareWithTolerance(double a, double b) {
  const double tol = kRelativeTolerance * std::max(std::abs(a), std::abs(b));
  if (a > b + tol) {
    return 1;
  }
  if (a < b - tol) {
    return -1;
  }
  return 0;
}

/// Time of the generic half-step / travel / travel / half-step shape.
double estimateTime(const CostParams& cost, int rowTravel, int colTravel) {
  std::array<double, 4> substeps{0.5};
  std::size_t n = 1;
  if (rowTravel > 0) {
    substeps[n++] = rowTravel;
  }
  if (colTravel > 0) {
    substeps[n++] = colTravel;
  }
  substeps[n++] = 0.5;
  return timeDemandFromSubsteps(cost, std::span<const double>(substeps.data(), n));
}

struct Scored {
  CompositeMove move;
  Fitness fit;
};

bool better(const Scored& a, const Scored& b) {
  return betterCandidate(a.move, a.fit, b.move, b.fit);
}

std::optional<Scored> scorePairs(const PairMove& pairs, const OccupancyGrid& grid,
                                 const TargetRegion& region, const PlannerConfig& config) {
  auto move = detail::routePairMove(pairs, grid, config);
  if (!move) {
    return std::nullopt;
  }
  const Fitness fit = fitness(grid, region, *move, config.cost);
  return Scored{std::move(*move), fit};
}

bool withinLimits(const PlannerConfig& config, std::size_t rowTones, std::size_t colTones) {
  return rowTones <= static_cast<std::size_t>(config.maxRowTones) &&
         colTones <= static_cast<std::size_t>(config.maxColTones) &&
         rowTones * colTones <= static_cast<std::size_t>(config.maxTraps);
}

// ---------------------------------------------------------------------------
// Compactification

/// A row (alongCols) or column of the grid seen as a 1-D array.
struct Line {
  const OccupancyGrid& grid;
  bool alongCols;
  int index;

  int length() const { return alongCols ? grid.cols() : grid.rows(); }
  bool occupied(int pos) const {
    return alongCols ? grid.occupied(index, pos) : grid.occupied(pos, index);
  }
  bool moved(int pos) const { return alongCols ? grid.moved(index, pos) : grid.moved(pos, index); }
};

/// Order-preserving placement of `atoms` into [lo, hi) with displacement at
/// most `reach`; fixed atoms keep their position. Empty result if infeasible.
std::vector<int> placeInSpan(const std::vector<int>& atoms, const std::vector<bool>& fixed, int lo,
                             int hi, int reach) {
  std::vector<int> pos(atoms.size());
  int prev = lo - 1;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const int low = std::max({prev + 1, atoms[i] - reach, lo});
    const int high = std::min(atoms[i] + reach, hi - 1);
    const int p = fixed[i] ? atoms[i] : low;
    if (p < low || p > high) {
      return {};
    }
    pos[i] = p;
    prev = p;
  }
  // Pull atoms back toward their origin where the packing leaves room.
  int next = hi;
  for (std::size_t k = atoms.size(); k-- > 0;) {
    const int upper = std::min({next - 1, hi - 1, atoms[k] + reach});
    pos[k] = std::clamp(atoms[k], pos[k], std::max(pos[k], upper));
    next = pos[k];
  }
  return pos;
}

std::optional<Scored> compactLine(const Line& line, int lo, int hi, const OccupancyGrid& grid,
                                  const TargetRegion& region, const PlannerConfig& config) {
  std::vector<int> left;
  std::vector<int> inside;
  std::vector<int> right;
  for (int p = 0; p < line.length(); ++p) {
    if (!line.occupied(p)) {
      continue;
    }
    (p < lo ? left : (p < hi ? inside : right)).push_back(p);
  }
  const int vacancies = (hi - lo) - static_cast<int>(inside.size());
  if (vacancies == 0 || (left.empty() && right.empty())) {
    return std::nullopt;
  }
  const auto isFixed = [&](int p) { return !config.allowMultipleMoves && line.moved(p); };
  const std::size_t toneLimit =
      static_cast<std::size_t>(std::min(line.alongCols ? config.maxColTones : config.maxRowTones,
                                        config.maxTraps));

  std::optional<Scored> best;
  for (int nLeft = 0; nLeft <= std::min<int>(vacancies, static_cast<int>(left.size())); ++nLeft) {
    if (nLeft > 0 && isFixed(left[left.size() - static_cast<std::size_t>(nLeft)])) {
      break;
    }
    for (int nRight = 0;
         nRight <= std::min<int>(vacancies - nLeft, static_cast<int>(right.size())); ++nRight) {
      if (nLeft + nRight == 0) {
        continue;
      }
      if (nRight > 0 && isFixed(right[static_cast<std::size_t>(nRight - 1)])) {
        break;
      }
      std::vector<int> atoms(left.end() - nLeft, left.end());
      atoms.insert(atoms.end(), inside.begin(), inside.end());
      atoms.insert(atoms.end(), right.begin(), right.begin() + nRight);
      std::vector<bool> fixed;
      fixed.reserve(atoms.size());
      for (const int a : atoms) {
        fixed.push_back(isFixed(a));
      }
      // Smallest feasible reach by bisection; feasibility is monotone in it.
      int low = 1;
      int high = line.length();
      if (placeInSpan(atoms, fixed, lo, hi, high).empty()) {
        continue;
      }
      while (low < high) {
        const int mid = (low + high) / 2;
        if (placeInSpan(atoms, fixed, lo, hi, mid).empty()) {
          low = mid + 1;
        } else {
          high = mid;
        }
      }
      const auto placed = placeInSpan(atoms, fixed, lo, hi, low);
      CompositeMove move;
      std::vector<ToneTrajectory> movers;
      for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (placed[i] != atoms[i]) {
          movers.push_back({line.alongCols ? Axis::Col : Axis::Row, {2 * atoms[i], 2 * placed[i]}});
        }
      }
      if (movers.empty() || movers.size() > toneLimit) {
        continue;
      }
      ToneTrajectory fixedTone{line.alongCols ? Axis::Row : Axis::Col,
                               {2 * line.index, 2 * line.index}};
      if (line.alongCols) {
        move.rowTones.push_back(std::move(fixedTone));
        move.colTones = std::move(movers);
      } else {
        move.colTones.push_back(std::move(fixedTone));
        move.rowTones = std::move(movers);
      }
      Scored candidate{std::move(move), {}};
      candidate.fit = fitness(grid, region, candidate.move, config.cost);
      if (candidate.fit.netFilled <= 0) {
        continue;
      }
      if (!best || better(candidate, *best)) {
        best = std::move(candidate);
      }
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Growing pair moves

struct Addition {
  bool isRow;
  LinePair pair;
  int fills;
  double estimate;
};

struct Growth {
  const OccupancyGrid& grid;
  const TargetRegion& region;
  const PlannerConfig& config;
  const SiteRules& rules;

  double estimateValue(int fills, int rowTravel, int colTravel) const {
    return fills / estimateTime(config.cost, rowTravel, colTravel);
  }

  /// Best few single-line additions ranked by estimated fitness.
  std::vector<Addition> rankAdditions(const PairMove& pm, std::size_t keep) const {
    std::vector<Addition> ranked;
    const int rowTravel = pm.maxRowTravel();
    const int colTravel = pm.maxColTravel();
    int fills = rules.evaluate(pm);
    const auto consider = [&](Addition a) {
      auto pos = std::lower_bound(ranked.begin(), ranked.end(), a, [](const auto& x, const auto& y) {
        const int cmp = compareWithTolerance(x.estimate, y.estimate);
        if (cmp != 0) {
          return cmp > 0;
        }
        return std::tie(x.isRow, x.pair) > std::tie(y.isRow, y.pair);
      });
      ranked.insert(pos, a);
      if (ranked.size() > keep) {
        ranked.pop_back();
      }
    };

    if (withinLimits(config, pm.rows.size() + 1, pm.cols.size())) {
      for (int s = 0; s < grid.rows(); ++s) {
        for (int t = region.rowOffset; t < region.rowEnd(); ++t) {
          const LinePair pair{s, t};
          if (detail::insertionIndex(pm.rows, pair) < 0) {
            continue;
          }
          int added = 0;
          bool ok = true;
          for (const auto& c : pm.cols) {
            const auto outcome = rules.trap(s, c.from, t, c.to);
            if (outcome == SiteRules::Trap::Conflict) {
              ok = false;
              break;
            }
            added += outcome == SiteRules::Trap::Fills ? 1 : 0;
          }
          if (ok && added > 0) {
            consider({true, pair, added,
                      estimateValue(fills + added, std::max(rowTravel, std::abs(t - s)),
                                    colTravel)});
          }
        }
      }
    }
    if (withinLimits(config, pm.rows.size(), pm.cols.size() + 1)) {
      for (int s = 0; s < grid.cols(); ++s) {
        for (int t = region.colOffset; t < region.colEnd(); ++t) {
          const LinePair pair{s, t};
          if (detail::insertionIndex(pm.cols, pair) < 0) {
            continue;
          }
          int added = 0;
          bool ok = true;
          for (const auto& r : pm.rows) {
            const auto outcome = rules.trap(r.from, s, r.to, t);
            if (outcome == SiteRules::Trap::Conflict) {
              ok = false;
              break;
            }
            added += outcome == SiteRules::Trap::Fills ? 1 : 0;
          }
          if (ok && added > 0) {
            consider({false, pair, added,
                      estimateValue(fills + added, rowTravel,
                                    std::max(colTravel, std::abs(t - s)))});
          }
        }
      }
    }
    return ranked;
  }

  static PairMove withAddition(const PairMove& pm, const Addition& a) {
    PairMove next = pm;
    auto& pairs = a.isRow ? next.rows : next.cols;
    const int idx = detail::insertionIndex(pairs, a.pair);
    pairs.insert(pairs.begin() + idx, a.pair);
    return next;
  }

  /// Greedy line additions accepted on exact fitness.
  Scored addTones(PairMove pm, Scored current) const {
    constexpr std::size_t kTried = 3;
    while (true) {
      bool accepted = false;
      for (const auto& addition : rankAdditions(pm, kTried)) {
        PairMove next = withAddition(pm, addition);
        auto scored = scorePairs(next, grid, region, config);
        if (scored && compareWithTolerance(scored->fit.value, current.fit.value) > 0) {
          pm = std::move(next);
          current = std::move(*scored);
          accepted = true;
          break;
        }
      }
      if (!accepted) {
        return current;
      }
    }
  }

  /// Vacancies on lines the move does not target, filled by one extra row
  /// tone and one extra column tone each.
  Scored addIndependent(PairMove pm, Scored current) const {
    struct Atom {
      int r;
      int c;
    };
    std::vector<Atom> atoms;
    for (int r = 0; r < grid.rows(); ++r) {
      for (int c = 0; c < grid.cols(); ++c) {
        if (rules.usable(r, c)) {
          atoms.push_back({r, c});
        }
      }
    }
    const auto targetsRow = [&](int t) {
      return std::any_of(pm.rows.begin(), pm.rows.end(), [t](const LinePair& p) { return p.to == t; });
    };
    const auto targetsCol = [&](int t) {
      return std::any_of(pm.cols.begin(), pm.cols.end(), [t](const LinePair& p) { return p.to == t; });
    };

    for (int t = region.rowOffset; t < region.rowEnd(); ++t) {
      for (int u = region.colOffset; u < region.colEnd(); ++u) {
        if (!rules.vacancy(t, u) || targetsRow(t) || targetsCol(u)) {
          continue;
        }
        if (!withinLimits(config, pm.rows.size() + 1, pm.cols.size() + 1)) {
          return current;
        }
        const int fills = rules.evaluate(pm);
        const int rowTravel = pm.maxRowTravel();
        const int colTravel = pm.maxColTravel();
        const int maxGain = 1 + static_cast<int>(pm.rows.size() + pm.cols.size());
        std::optional<std::tuple<double, int, int, int>> bestSource; // estimate, gain, r, c
        for (const auto& atom : atoms) {
          const int rt = std::max(rowTravel, std::abs(t - atom.r));
          const int ct = std::max(colTravel, std::abs(u - atom.c));
          if (bestSource &&
              compareWithTolerance(estimateValue(fills + maxGain, rt, ct),
                                   std::get<0>(*bestSource)) <= 0) {
            continue;
          }
          if (detail::insertionIndex(pm.rows, {atom.r, t}) < 0 ||
              detail::insertionIndex(pm.cols, {atom.c, u}) < 0) {
            continue;
          }
          int gain = 1;
          bool ok = true;
          for (const auto& c : pm.cols) {
            const auto outcome = rules.trap(atom.r, c.from, t, c.to);
            if (outcome == SiteRules::Trap::Conflict) {
              ok = false;
              break;
            }
            gain += outcome == SiteRules::Trap::Fills ? 1 : 0;
          }
          for (const auto& r : pm.rows) {
            if (!ok) {
              break;
            }
            const auto outcome = rules.trap(r.from, atom.c, r.to, u);
            if (outcome == SiteRules::Trap::Conflict) {
              ok = false;
              break;
            }
            gain += outcome == SiteRules::Trap::Fills ? 1 : 0;
          }
          if (!ok) {
            continue;
          }
          const double estimate = estimateValue(fills + gain, rt, ct);
          if (!bestSource || compareWithTolerance(estimate, std::get<0>(*bestSource)) > 0) {
            bestSource = std::tuple{estimate, gain, atom.r, atom.c};
          }
        }
        if (!bestSource) {
          continue;
        }
        PairMove next = pm;
        const LinePair rowPair{std::get<2>(*bestSource), t};
        const LinePair colPair{std::get<3>(*bestSource), u};
        next.rows.insert(next.rows.begin() + detail::insertionIndex(next.rows, rowPair), rowPair);
        next.cols.insert(next.cols.begin() + detail::insertionIndex(next.cols, colPair), colPair);
        auto scored = scorePairs(next, grid, region, config);
        if (scored && compareWithTolerance(scored->fit.value, current.fit.value) > 0) {
          pm = std::move(next);
          current = std::move(*scored);
        }
      }
    }
    return current;
  }
};

/// Pair form of a move if every carried atom follows the pickup/drop rules
/// of the pair planner.
std::optional<PairMove> asGrowablePairs(const CompositeMove& move, const SiteRules& rules) {
  PairMove pm = detail::toPairMove(move);
  if (rules.evaluate(pm) < 0) {
    return std::nullopt;
  }
  return pm;
}

// ---------------------------------------------------------------------------
// Single-line moves

/// Transposed view helpers: for `rowsMove` the moving line is a row.
struct Orientation {
  bool rowsMove;
  const SiteRules& rules;
  const TargetRegion& region;

  int lines() const { return rowsMove ? rules.rows() : rules.cols(); }
  int along() const { return rowsMove ? rules.cols() : rules.rows(); }
  int regionLineStart() const { return rowsMove ? region.rowOffset : region.colOffset; }
  int regionLineEnd() const { return rowsMove ? region.rowEnd() : region.colEnd(); }
  bool usable(int line, int pos) const {
    return rowsMove ? rules.usable(line, pos) : rules.usable(pos, line);
  }
  bool vacancy(int line, int pos) const {
    return rowsMove ? rules.vacancy(line, pos) : rules.vacancy(pos, line);
  }
  PairMove makePairs(LinePair linePair, const std::vector<LinePair>& positions) const {
    PairMove pm;
    if (rowsMove) {
      pm.rows = {linePair};
      pm.cols = positions;
    } else {
      pm.cols = {linePair};
      pm.rows = positions;
    }
    return pm;
  }
  std::size_t toneLimit(const PlannerConfig& config) const {
    return static_cast<std::size_t>(
        std::min(rowsMove ? config.maxColTones : config.maxRowTones, config.maxTraps));
  }
  double estimate(const PlannerConfig& config, int fills, int lineTravel, int posTravel) const {
    return rowsMove ? fills / estimateTime(config.cost, lineTravel, posTravel)
                    : fills / estimateTime(config.cost, posTravel, lineTravel);
  }
};

std::vector<LinePair> selectShifted(const Orientation& o, int source, int target, int shift,
                                    std::size_t limit) {
  std::vector<LinePair> selected;
  for (int p = 0; p < o.along() && selected.size() < limit; ++p) {
    const int q = p + shift;
    if (q < 0 || q >= o.along()) {
      continue;
    }
    if (o.usable(source, p) && o.vacancy(target, q)) {
      selected.push_back({p, q});
    }
  }
  return selected;
}

int countShifted(const Orientation& o, int source, int target, int shift, int limit) {
  int count = 0;
  for (int p = std::max(0, -shift); p < std::min(o.along(), o.along() - shift) && count < limit;
       ++p) {
    if (o.usable(source, p) && o.vacancy(target, p + shift)) {
      ++count;
    }
  }
  return count;
}

void emitScored(std::vector<CompositeMove>& out, const PairMove& pairs, const OccupancyGrid& grid,
                const TargetRegion& region, const PlannerConfig& config) {
  auto scored = scorePairs(pairs, grid, region, config);
  if (scored && scored->fit.netFilled > 0) {
    out.push_back(std::move(scored->move));
  }
}

} // namespace

bool betterCandidate(const CompositeMove& a, const Fitness& fa, const CompositeMove& b,
                     const Fitness& fb) {
  const int byValue = compareWithTolerance(fa.value, fb.value);
  if (byValue != 0) {
    return byValue > 0;
  }
  const int byCost = compareWithTolerance(fa.cost, fb.cost);
  if (byCost != 0) {
    return byCost < 0;
  }
  return a < b;
}

std::vector<CompositeMove> suggestCompactification(const OccupancyGrid& grid,
                                                   const TargetRegion& region,
                                                   const PlannerConfig& config) {
  std::vector<CompositeMove> out;
  for (int r = region.rowOffset; r < region.rowEnd(); ++r) {
    if (auto best = compactLine(Line{grid, true, r}, region.colOffset, region.colEnd(), grid,
                                region, config)) {
      out.push_back(std::move(best->move));
    }
  }
  for (int c = region.colOffset; c < region.colEnd(); ++c) {
    if (auto best = compactLine(Line{grid, false, c}, region.rowOffset, region.rowEnd(), grid,
                                region, config)) {
      out.push_back(std::move(best->move));
    }
  }
  return out;
}

std::vector<CompositeMove> suggestLateral(const OccupancyGrid& grid, const TargetRegion& region,
                                          const PlannerConfig& config) {
  std::vector<CompositeMove> out;
  const SiteRules rules(grid, region, config);
  for (const bool rowsMove : {true, false}) {
    // A row travelling across rows needs its column tones parked in gaps.
    if (rowsMove ? !config.allowColGapMotion : !config.allowRowGapMotion) {
      continue;
    }
    const Orientation o{rowsMove, rules, region};
    const int limit = static_cast<int>(o.toneLimit(config));
    for (int s = 0; s < o.lines(); ++s) {
      double bestEstimate = -1.0;
      int bestTravel = 0;
      int bestTarget = 0;
      int bestShift = 0;
      for (int t = o.regionLineStart(); t < o.regionLineEnd(); ++t) {
        if (t == s) {
          continue;
        }
        for (const int shift : {0, -1, 1}) {
          const int fills = countShifted(o, s, t, shift, limit);
          if (fills == 0) {
            continue;
          }
          const double estimate = o.estimate(config, fills, std::abs(t - s), 0);
          const int cmp = compareWithTolerance(estimate, bestEstimate);
          if (cmp > 0 || (cmp == 0 && std::abs(t - s) < bestTravel)) {
            bestEstimate = estimate;
            bestTravel = std::abs(t - s);
            bestTarget = t;
            bestShift = shift;
          }
        }
      }
      if (bestEstimate > 0) {
        const auto selected = selectShifted(o, s, bestTarget, bestShift, o.toneLimit(config));
        emitScored(out, o.makePairs({s, bestTarget}, selected), grid, region, config);
      }
    }
  }
  return out;
}

std::vector<CompositeMove> suggestLengthwise(const OccupancyGrid& grid,
                                             const TargetRegion& region,
                                             const PlannerConfig& config) {
  std::vector<CompositeMove> out;
  const SiteRules rules(grid, region, config);
  for (const bool rowsMove : {true, false}) {
    // The half-steps off the line are taken on the line's own axis.
    if (rowsMove ? !config.allowRowGapMotion : !config.allowColGapMotion) {
      continue;
    }
    const Orientation o{rowsMove, rules, region};
    for (int s = std::max(0, o.regionLineStart() - 1);
         s < std::min(o.lines(), o.regionLineEnd() + 1); ++s) {
      std::vector<int> sources;
      for (int p = 0; p < o.along(); ++p) {
        if (o.usable(s, p)) {
          sources.push_back(p);
        }
      }
      if (sources.empty()) {
        continue;
      }
      const int limit = static_cast<int>(o.toneLimit(config));
      std::vector<int> matches(static_cast<std::size_t>(2 * o.along() - 1));
      double bestEstimate = -1.0;
      int bestTravel = 0;
      int bestTarget = 0;
      int bestShift = 0;
      for (int t = s - 1; t <= s + 1; ++t) {
        if (t < o.regionLineStart() || t >= o.regionLineEnd()) {
          continue;
        }
        std::fill(matches.begin(), matches.end(), 0);
        for (int q = 0; q < o.along(); ++q) {
          if (!o.vacancy(t, q)) {
            continue;
          }
          for (const int p : sources) {
            ++matches[static_cast<std::size_t>(q - p + o.along() - 1)];
          }
        }
        for (int shift = -(o.along() - 1); shift < o.along(); ++shift) {
          const int fills =
              std::min(limit, matches[static_cast<std::size_t>(shift + o.along() - 1)]);
          if (fills == 0 || (shift == 0 && t == s)) {
            continue;
          }
          const double estimate = o.estimate(config, fills, 0, std::abs(shift));
          const int cmp = compareWithTolerance(estimate, bestEstimate);
          if (cmp > 0 || (cmp == 0 && std::abs(shift) < bestTravel)) {
            bestEstimate = estimate;
            bestTravel = std::abs(shift);
            bestTarget = t;
            bestShift = shift;
          }
        }
      }
      if (bestEstimate > 0) {
        const auto selected =
            selectShifted(o, s, bestTarget, bestShift, o.toneLimit(config));
        emitScored(out, o.makePairs({s, bestTarget}, selected), grid, region, config);
      }
    }
  }
  return out;
}

std::vector<CompositeMove> suggestComplex(const OccupancyGrid& grid, const TargetRegion& region,
                                          const PlannerConfig& config) {
  const SiteRules rules(grid, region, config);
  std::vector<int> usableInRow(static_cast<std::size_t>(grid.rows()), 0);
  std::vector<int> usableInCol(static_cast<std::size_t>(grid.cols()), 0);
  std::vector<int> vacantInRow(static_cast<std::size_t>(grid.rows()), 0);
  std::vector<int> vacantInCol(static_cast<std::size_t>(grid.cols()), 0);
  for (int r = 0; r < grid.rows(); ++r) {
    for (int c = 0; c < grid.cols(); ++c) {
      if (rules.usable(r, c)) {
        ++usableInRow[static_cast<std::size_t>(r)];
        ++usableInCol[static_cast<std::size_t>(c)];
      }
      if (rules.vacancy(r, c)) {
        ++vacantInRow[static_cast<std::size_t>(r)];
        ++vacantInCol[static_cast<std::size_t>(c)];
      }
    }
  }

  // Seed combinations: (source line, target line) on one axis, ranked by
  // min(surplus, deficit), then by travel.
  struct Combo {
    int score;
    int travel;
    bool isRow;
    int source;
    int target;
  };
  std::vector<Combo> combos;
  for (int c = 0; c < grid.cols(); ++c) {
    for (int u = region.colOffset; u < region.colEnd(); ++u) {
      const int score = std::min(usableInCol[static_cast<std::size_t>(c)],
                                 vacantInCol[static_cast<std::size_t>(u)]);
      if (score > 0) {
        combos.push_back({score, std::abs(u - c), false, c, u});
      }
    }
  }
  for (int r = 0; r < grid.rows(); ++r) {
    for (int t = region.rowOffset; t < region.rowEnd(); ++t) {
      const int score = std::min(usableInRow[static_cast<std::size_t>(r)],
                                 vacantInRow[static_cast<std::size_t>(t)]);
      if (score > 0) {
        combos.push_back({score, std::abs(t - r), true, r, t});
      }
    }
  }
  const std::size_t budget = std::min(config.comboBudget, combos.size());
  std::partial_sort(combos.begin(), combos.begin() + static_cast<std::ptrdiff_t>(budget),
                    combos.end(), [](const Combo& a, const Combo& b) {
                      return std::tie(b.score, a.travel, a.isRow, a.source, a.target) <
                             std::tie(a.score, b.travel, b.isRow, b.source, b.target);
                    });

  const Growth growth{grid, region, config, rules};
  struct Seed {
    double estimate;
    PairMove pairs;
  };
  std::vector<Seed> seeds;
  for (std::size_t k = 0; k < budget; ++k) {
    const Combo& combo = combos[k];
    // Perpendicular pairs that each carry one atom through the seed line.
    std::vector<LinePair> options;
    const int perpendicular = combo.isRow ? grid.cols() : grid.rows();
    const int regionStart = combo.isRow ? region.colOffset : region.rowOffset;
    const int regionEnd = combo.isRow ? region.colEnd() : region.rowEnd();
    for (int s = 0; s < perpendicular; ++s) {
      for (int t = regionStart; t < regionEnd; ++t) {
        const bool fills = combo.isRow
                               ? rules.usable(combo.source, s) && rules.vacancy(combo.target, t)
                               : rules.usable(s, combo.source) && rules.vacancy(t, combo.target);
        if (fills) {
          options.push_back({s, t});
        }
      }
    }
    std::stable_sort(options.begin(), options.end(), [](const LinePair& a, const LinePair& b) {
      return std::abs(a.to - a.from) < std::abs(b.to - b.from);
    });
    const std::size_t limit = static_cast<std::size_t>(
        std::min(combo.isRow ? config.maxColTones : config.maxRowTones, config.maxTraps));
    std::vector<LinePair> chain;
    std::vector<LinePair> bestChain;
    double bestEstimate = -1.0;
    int travel = 0;
    for (const auto& option : options) {
      if (chain.size() >= limit) {
        break;
      }
      const int idx = detail::insertionIndex(chain, option);
      if (idx < 0) {
        continue;
      }
      chain.insert(chain.begin() + idx, option);
      travel = std::max(travel, std::abs(option.to - option.from));
      const int fills = static_cast<int>(chain.size());
      const double estimate = combo.isRow
                                  ? growth.estimateValue(fills, combo.travel, travel)
                                  : growth.estimateValue(fills, travel, combo.travel);
      if (compareWithTolerance(estimate, bestEstimate) > 0) {
        bestEstimate = estimate;
        bestChain = chain;
      }
    }
    if (bestChain.empty()) {
      continue;
    }
    PairMove pm;
    if (combo.isRow) {
      pm.rows = {{combo.source, combo.target}};
      pm.cols = bestChain;
    } else {
      pm.cols = {{combo.source, combo.target}};
      pm.rows = bestChain;
    }
    seeds.push_back({bestEstimate, std::move(pm)});
  }

  std::stable_sort(seeds.begin(), seeds.end(), [](const Seed& a, const Seed& b) {
    return compareWithTolerance(a.estimate, b.estimate) > 0;
  });

  constexpr std::size_t kGrownSeeds = 3;
  std::vector<Scored> scored;
  for (std::size_t k = 0; k < seeds.size(); ++k) {
    auto base = scorePairs(seeds[k].pairs, grid, region, config);
    if (!base || base->fit.netFilled <= 0) {
      continue;
    }
    // One emission per combination: the grown move replaces its seed.
    if (k < kGrownSeeds) {
      scored.push_back(growth.addTones(seeds[k].pairs, *base));
    } else {
      scored.push_back(std::move(*base));
    }
  }
  std::sort(scored.begin(), scored.end(), better);
  std::vector<CompositeMove> out;
  out.reserve(scored.size());
  for (auto& s : scored) {
    if (out.empty() || !(out.back() == s.move)) {
      out.push_back(std::move(s.move));
    }
  }
  return out;
}

CompositeMove optimizeAddTones(const CompositeMove& move, const OccupancyGrid& grid,
                               const TargetRegion& region, const PlannerConfig& config) {
  const SiteRules rules(grid, region, config);
  const auto pairs = asGrowablePairs(move, rules);
  if (!pairs) {
    return move;
  }
  const Growth growth{grid, region, config, rules};
  Scored current{move, fitness(grid, region, move, config.cost)};
  return growth.addTones(*pairs, std::move(current)).move;
}

CompositeMove optimizeIndependentSites(const CompositeMove& move, const OccupancyGrid& grid,
                                       const TargetRegion& region, const PlannerConfig& config) {
  const SiteRules rules(grid, region, config);
  const auto pairs = asGrowablePairs(move, rules);
  if (!pairs) {
    return move;
  }
  const Growth growth{grid, region, config, rules};
  Scored current{move, fitness(grid, region, move, config.cost)};
  return growth.addIndependent(*pairs, std::move(current)).move;
}

PlanResult plan(const OccupancyGrid& grid, const TargetRegion& region,
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
  std::size_t vacancies = countTargetVacancies(state, region);
  while (vacancies > 0) {
    std::vector<Scored> pool;
    const auto collect = [&](std::vector<CompositeMove> suggestions) {
      for (auto& m : suggestions) {
        Fitness fit = fitness(state, region, m, config.cost);
        if (fit.netFilled > 0) {
          pool.push_back({std::move(m), fit});
        }
      }
    };
    collect(suggestCompactification(state, region, config));
    collect(suggestLateral(state, region, config));
    collect(suggestLengthwise(state, region, config));
    collect(suggestComplex(state, region, config));
    std::sort(pool.begin(), pool.end(), better);

    std::optional<CompositeMove> chosen;
    for (const auto& candidate : pool) {
      CompositeMove grown = optimizeAddTones(candidate.move, state, region, config);
      grown = optimizeIndependentSites(grown, state, region, config);
      if (validateMove(state, grown, config).empty()) {
        chosen = std::move(grown);
        break;
      }
      if (validateMove(state, candidate.move, config).empty()) {
        chosen = candidate.move;
        break;
      }
    }
    if (!chosen) {
      return PlanFailure::NoProgress;
    }
    state = applyMoveUnchecked(state, *chosen);
    moves.push_back(std::move(*chosen));
    const std::size_t remaining = countTargetVacancies(state, region);
    if (remaining >= vacancies) {
      return PlanFailure::NoProgress;
    }
    vacancies = remaining;
  }
  return makePlan(std::move(moves), config.cost);
}

} // namespace aodsort
