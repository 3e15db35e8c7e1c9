#include "aodsort/grid.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <string_view>

namespace aodsort {

OccupancyGrid::OccupancyGrid(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1) {
    throw ConfigError("grid dimensions must be positive, got " + std::to_string(rows) +
                      "x" + std::to_string(cols));
  }
  occupied_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0);
  moved_.assign(occupied_.size(), 0);
}

OccupancyGrid OccupancyGrid::fromStrings(const std::vector<std::string>& lines) {
  if (lines.empty()) {
    throw ConfigError("grid has no rows");
  }
  OccupancyGrid grid(static_cast<int>(lines.size()), static_cast<int>(lines.front().size()));
  for (int r = 0; r < grid.rows(); ++r) {
    const auto& line = lines[static_cast<std::size_t>(r)];
    if (static_cast<int>(line.size()) != grid.cols()) {
      throw ConfigError("grid row " + std::to_string(r) + " has " +
                        std::to_string(line.size()) + " columns, expected " +
                        std::to_string(grid.cols()));
    }
    for (int c = 0; c < grid.cols(); ++c) {
      const char ch = line[static_cast<std::size_t>(c)];
      if (ch != '0' && ch != '1') {
        throw ConfigError("grid row " + std::to_string(r) + " column " + std::to_string(c) +
                          ": expected '0' or '1', got '" + std::string(1, ch) + "'");
      }
      grid.setOccupied(r, c, ch == '1');
    }
  }
  return grid;
}

void OccupancyGrid::setOccupied(int row, int col, bool value) {
  occupied_[index(row, col)] = value ? 1 : 0;
  if (!value) {
    moved_[index(row, col)] = 0;
  }
}

void OccupancyGrid::setMoved(int row, int col, bool value) {
  if (value && !occupied(row, col)) {
    throw std::logic_error("cannot mark empty site (" + std::to_string(row) + ", " +
                           std::to_string(col) + ") as moved");
  }
  moved_[index(row, col)] = value ? 1 : 0;
}

std::size_t OccupancyGrid::atomCount() const {
  return static_cast<std::size_t>(std::count(occupied_.begin(), occupied_.end(), 1));
}

std::vector<std::string> OccupancyGrid::toStrings() const {
  std::vector<std::string> lines;
  lines.reserve(static_cast<std::size_t>(rows_));
  for (int r = 0; r < rows_; ++r) {
    std::string line(static_cast<std::size_t>(cols_), '0');
    for (int c = 0; c < cols_; ++c) {
      if (occupied(r, c)) {
        line[static_cast<std::size_t>(c)] = '1';
      }
    }
    lines.push_back(std::move(line));
  }
  return lines;
}

namespace {

int ceilSqrt(std::size_t n) {
  auto root = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
  while (root * root > n) {
    --root;
  }
  while (root * root < n) {
    ++root;
  }
  return static_cast<int>(root);
}

} // namespace

int InstanceSpec::totalSide() const {
  // The epsilon absorbs representation error in products like sqrt(n) * 1.1.
  const double side = std::sqrt(static_cast<double>(targetAtoms)) * ratio;
  return static_cast<int>(std::ceil(side - 1e-9));
}

int InstanceSpec::targetSide() const { return ceilSqrt(targetAtoms); }

void InstanceSpec::check() const {
  if (targetAtoms == 0) {
    throw ConfigError("target atom count must be positive");
  }
  if (!(ratio >= 1.0) || !std::isfinite(ratio)) {
    throw ConfigError("ratio must be a finite value >= 1");
  }
  if (!(fillRatio >= 0.0 && fillRatio <= 1.0)) {
    throw ConfigError("fill ratio must lie in [0, 1]");
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

TargetRegion centeredRegion(int gridRows, int gridCols, int height, int width) {
  if (height < 1 || width < 1 || height > gridRows || width > gridCols) {
    throw ConfigError("target region does not fit into the grid");
  }
  return TargetRegion{(gridRows - height) / 2, (gridCols - width) / 2, height, width};
}

std::pair<OccupancyGrid, TargetRegion> randomGrid(const InstanceSpec& spec) {
  spec.check();
  const int side = std::max(spec.totalSide(), spec.targetSide());
  OccupancyGrid grid(side, side);
  std::mt19937_64 engine(spec.seed);
  constexpr double scale = 1.0 / 9007199254740992.0; // 2^-53
  for (int r = 0; r < side; ++r) {
    for (int c = 0; c < side; ++c) {
      const double u = static_cast<double>(engine() >> 11) * scale;
      grid.setOccupied(r, c, u < spec.fillRatio);
    }
  }
  const int target = spec.targetSide();
  return {std::move(grid), centeredRegion(side, side, target, target)};
}

std::size_t countTargetVacancies(const OccupancyGrid& grid, const TargetRegion& region) {
  std::size_t vacancies = 0;
  for (int r = region.rowOffset; r < region.rowEnd(); ++r) {
    for (int c = region.colOffset; c < region.colEnd(); ++c) {
      if (!grid.occupied(r, c)) {
        ++vacancies;
      }
    }
  }
  return vacancies;
}

GridFile parseGridText(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> rows;
  bool haveTarget = false;
  TargetRegion region;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    if (line.front() == '#') {
      constexpr std::string_view key = "#target:";
      if (line.compare(0, key.size(), key) == 0) {
        std::istringstream fields(line.substr(key.size()));
        if (!(fields >> region.rowOffset >> region.colOffset >> region.height >> region.width)) {
          throw ConfigError("line " + std::to_string(lineNo) +
                            ": expected four integers after '#target:'");
        }
        haveTarget = true;
      }
      continue;
    }
    rows.push_back(line);
  }
  if (!haveTarget) {
    throw ConfigError("grid text lacks a '#target:' header");
  }
  OccupancyGrid grid = OccupancyGrid::fromStrings(rows);
  if (!region.fitsIn(grid)) {
    throw ConfigError("target region lies outside the " + std::to_string(grid.rows()) + "x" +
                      std::to_string(grid.cols()) + " grid");
  }
  return GridFile{std::move(grid), region};
}

std::string formatGridText(const OccupancyGrid& grid, const TargetRegion& region) {
  std::ostringstream out;
  out << "#target: " << region.rowOffset << ' ' << region.colOffset << ' ' << region.height
      << ' ' << region.width << '\n';
  for (const auto& row : grid.toStrings()) {
    out << row << '\n';
  }
  return out.str();
}

} // namespace aodsort
