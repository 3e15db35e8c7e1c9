#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "aodsort/grid.hpp"
#include "aodsort/move.hpp"

namespace testing {

inline std::string fixturePath(const std::string& name) {
  return std::string(AODSORT_FIXTURE_DIR) + "/" + name;
}

inline std::string readText(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline aodsort::GridFile sample10() { return aodsort::parseGridText(readText(fixturePath("sample10.grid"))); }

/// Rows {0,1,8} -> {2,4,7}, columns {1,3,6,8} -> {2,3,6,7}: a diagonal
/// half-step into the gaps, row travel, column travel, half-step in.
inline aodsort::CompositeMove sampleMove() {
  using aodsort::Axis;
  const std::vector<std::pair<int, int>> rows{{0, 2}, {1, 4}, {8, 7}};
  const std::vector<std::pair<int, int>> cols{{1, 2}, {3, 3}, {6, 6}, {8, 7}};
  aodsort::CompositeMove move;
  for (const auto& [s, t] : rows) {
    move.rowTones.push_back({Axis::Row, {2 * s, 2 * s + 1, 2 * t + 1, 2 * t + 1, 2 * t}});
  }
  for (const auto& [s, t] : cols) {
    move.colTones.push_back({Axis::Col, {2 * s, 2 * s + 1, 2 * s + 1, 2 * t + 1, 2 * t}});
  }
  return move;
}

/// Single-trap move along the given waypoints (site units doubled).
inline aodsort::CompositeMove singleTrap(std::vector<int> rowPath, std::vector<int> colPath) {
  aodsort::CompositeMove move;
  move.rowTones.push_back({aodsort::Axis::Row, std::move(rowPath)});
  move.colTones.push_back({aodsort::Axis::Col, std::move(colPath)});
  return move;
}

} // namespace testing
