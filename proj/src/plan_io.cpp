#include "aodsort/plan_io.hpp"

#include <json.hpp>

#include "aodsort/cost.hpp"

namespace aodsort {

using nlohmann::json;

std::string serializePlan(const std::vector<CompositeMove>& moves, int gridRows, int gridCols,
                          const TargetRegion& region, const CostParams& cost) {
  json doc;
  doc["format"] = kPlanFormat;
  doc["grid"] = {{"rows", gridRows}, {"cols", gridCols}};
  doc["target"] = {{"row_offset", region.rowOffset},
                   {"col_offset", region.colOffset},
                   {"height", region.height},
                   {"width", region.width}};
  json list = json::array();
  const Plan totals = makePlan(moves, cost);
  for (const auto& move : moves) {
    json rows = json::array();
    for (const auto& tone : move.rowTones) {
      rows.push_back(tone.path);
    }
    json cols = json::array();
    for (const auto& tone : move.colTones) {
      cols.push_back(tone.path);
    }
    list.push_back({{"rows", std::move(rows)},
                    {"cols", std::move(cols)},
                    {"distance_um", moveDistance(move, cost.sitePitch)},
                    {"cost_us", timeDemand(cost, move)}});
  }
  doc["moves"] = std::move(list);
  doc["move_count"] = moves.size();
  doc["total_distance_um"] = totals.totalDistance;
  doc["total_time_us"] = totals.totalTime;
  return doc.dump(1) + "\n";
}

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw PlanParseError(where + ": " + what);
}

const json& field(const json& object, const std::string& where, const char* key) {
  if (!object.is_object()) {
    fail(where, "expected an object");
  }
  const auto it = object.find(key);
  if (it == object.end()) {
    fail(where, std::string("missing field '") + key + "'");
  }
  return *it;
}

int integer(const json& value, const std::string& where) {
  if (!value.is_number_integer()) {
    fail(where, "expected an integer");
  }
  const auto v = value.get<long long>();
  if (v < -1'000'000'000 || v > 1'000'000'000) {
    fail(where, "integer out of range");
  }
  return static_cast<int>(v);
}

std::vector<ToneTrajectory> tones(const json& value, const std::string& where, Axis axis) {
  if (!value.is_array()) {
    fail(where, "expected an array of tone paths");
  }
  std::vector<ToneTrajectory> result;
  for (std::size_t i = 0; i < value.size(); ++i) {
    const std::string at = where + "[" + std::to_string(i) + "]";
    if (!value[i].is_array()) {
      fail(at, "expected an array of coordinates");
    }
    ToneTrajectory tone{axis, {}};
    for (std::size_t w = 0; w < value[i].size(); ++w) {
      tone.path.push_back(integer(value[i][w], at + "[" + std::to_string(w) + "]"));
    }
    result.push_back(std::move(tone));
  }
  return result;
}

} // namespace

PlanFile parsePlan(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw PlanParseError(std::string("plan is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    fail("plan", "expected a JSON object");
  }
  const json& format = field(doc, "plan", "format");
  if (!format.is_string() || format.get<std::string>() != kPlanFormat) {
    fail("format", std::string("expected \"") + kPlanFormat + "\"");
  }
  PlanFile file;
  const json& grid = field(doc, "plan", "grid");
  file.gridRows = integer(field(grid, "grid", "rows"), "grid.rows");
  file.gridCols = integer(field(grid, "grid", "cols"), "grid.cols");
  const json& target = field(doc, "plan", "target");
  file.region.rowOffset = integer(field(target, "target", "row_offset"), "target.row_offset");
  file.region.colOffset = integer(field(target, "target", "col_offset"), "target.col_offset");
  file.region.height = integer(field(target, "target", "height"), "target.height");
  file.region.width = integer(field(target, "target", "width"), "target.width");

  const json& moves = field(doc, "plan", "moves");
  if (!moves.is_array()) {
    fail("moves", "expected an array");
  }
  for (std::size_t i = 0; i < moves.size(); ++i) {
    const std::string at = "moves[" + std::to_string(i) + "]";
    CompositeMove move;
    move.rowTones = tones(field(moves[i], at, "rows"), at + ".rows", Axis::Row);
    move.colTones = tones(field(moves[i], at, "cols"), at + ".cols", Axis::Col);
    try {
      move.checkShape();
    } catch (const std::invalid_argument& e) {
      fail(at, e.what());
    }
    file.moves.push_back(std::move(move));
  }
  return file;
}

} // namespace aodsort
