#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace aodsort {

/// Raised for invalid user-supplied parameters (instance specs, configs).
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Occupancy of the stationary trap array. `moved` marks atoms that have
/// already been transported; a moved site is always occupied.
class OccupancyGrid {
public:
  OccupancyGrid(int rows, int cols);

  /// Builds a grid from rows of '0'/'1' characters.
  static OccupancyGrid fromStrings(const std::vector<std::string>& lines);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  bool inBounds(int row, int col) const {
    return row >= 0 && row < rows_ && col >= 0 && col < cols_;
  }

  bool occupied(int row, int col) const { return occupied_[index(row, col)] != 0; }
  bool moved(int row, int col) const { return moved_[index(row, col)] != 0; }

  /// Clearing occupancy also clears the moved mark.
  void setOccupied(int row, int col, bool value);
  /// Marking a site as moved requires it to be occupied.
  void setMoved(int row, int col, bool value);

  std::size_t atomCount() const;

  std::vector<std::string> toStrings() const;

  bool operator==(const OccupancyGrid& other) const = default;

private:
  std::size_t index(int row, int col) const {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(col);
  }

  int rows_;
  int cols_;
  std::vector<std::uint8_t> occupied_;
  std::vector<std::uint8_t> moved_;
};

/// Rectangular subarray that has to end up fully occupied.
struct TargetRegion {
  int rowOffset = 0;
  int colOffset = 0;
  int height = 1;
  int width = 1;

  int rowEnd() const { return rowOffset + height; }
  int colEnd() const { return colOffset + width; }
  std::size_t area() const {
    return static_cast<std::size_t>(height) * static_cast<std::size_t>(width);
  }
  bool contains(int row, int col) const {
    return row >= rowOffset && row < rowEnd() && col >= colOffset && col < colEnd();
  }
  bool containsRow(int row) const { return row >= rowOffset && row < rowEnd(); }
  bool containsCol(int col) const { return col >= colOffset && col < colEnd(); }
  bool fitsIn(const OccupancyGrid& grid) const {
    return rowOffset >= 0 && colOffset >= 0 && height >= 1 && width >= 1 &&
           rowEnd() <= grid.rows() && colEnd() <= grid.cols();
  }

  bool operator==(const TargetRegion&) const = default;
};

/// Parameters of a square random instance: the target holds `targetAtoms`
/// sites, the whole array has side ceil(sqrt(targetAtoms) * ratio).
struct InstanceSpec {
  std::size_t targetAtoms = 0;
  double ratio = 1.5;
  double fillRatio = 0.5;
  std::uint64_t seed = 0;

  int totalSide() const;
  int targetSide() const;
  void check() const;
};

/// splitmix64 finalizer; the seed-splitting primitive used across the project.
std::uint64_t splitmix64(std::uint64_t x);

/// Random occupancy drawn from std::mt19937_64 seeded with spec.seed. Site
/// (r, c) is visited in row-major order and is occupied iff the top 53 bits
/// of the next draw, read as a fraction in [0, 1), are below fillRatio.
std::pair<OccupancyGrid, TargetRegion> randomGrid(const InstanceSpec& spec);

/// Square region of the given side placed in the middle of the grid; an odd
/// leftover is put after the region, i.e. the region leans to lower indices.
TargetRegion centeredRegion(int gridRows, int gridCols, int height, int width);

std::size_t countTargetVacancies(const OccupancyGrid& grid, const TargetRegion& region);

inline std::size_t totalAtoms(const OccupancyGrid& grid) { return grid.atomCount(); }

/// Text format: optional "#target: ro co h w" header followed by one line of
/// '0'/'1' characters per row.
struct GridFile {
  OccupancyGrid grid;
  TargetRegion region;
};

GridFile parseGridText(const std::string& text);
std::string formatGridText(const OccupancyGrid& grid, const TargetRegion& region);

} // namespace aodsort
