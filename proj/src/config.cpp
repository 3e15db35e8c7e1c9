#include "aodsort/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "aodsort/config_io.hpp"
#include "aodsort/grid.hpp"

namespace aodsort {

using nlohmann::json;

void PlannerConfig::check() const {
  if (maxColTones < 1 || maxRowTones < 1) {
    throw ConfigError("tone limits n_h and n_v must be >= 1");
  }
  if (maxTraps < 1) {
    throw ConfigError("trap limit k must be >= 1");
  }
  if (comboBudget < 1) {
    throw ConfigError("combo_budget must be >= 1");
  }
  cost.check();
}

namespace {

const char* const kCostFields[] = {"constant_offset", "per_substep_offset", "linear_factor",
                                   "sqrt_factor", "site_pitch"};

double& costField(CostParams& cost, std::string_view name) {
  if (name == "constant_offset") {
    return cost.constantOffset;
  }
  if (name == "per_substep_offset") {
    return cost.perSubstepOffset;
  }
  if (name == "linear_factor") {
    return cost.linearFactor;
  }
  if (name == "sqrt_factor") {
    return cost.sqrtFactor;
  }
  if (name == "site_pitch") {
    return cost.sitePitch;
  }
  throw ConfigError("unknown cost field '" + std::string(name) + "'");
}

int positiveInt(const json& value, const std::string& key) {
  if (!value.is_number_integer() || value.get<long long>() < 1 ||
      value.get<long long>() > 1'000'000'000) {
    throw ConfigError("'" + key + "' must be a positive integer");
  }
  return value.get<int>();
}

bool boolean(const json& value, const std::string& key) {
  if (!value.is_boolean()) {
    throw ConfigError("'" + key + "' must be true or false");
  }
  return value.get<bool>();
}

CostParams costFromJson(const json& value) {
  if (value.is_string()) {
    return costPreset(value.get<std::string>());
  }
  if (!value.is_object()) {
    throw ConfigError("'cost' must be a preset name or an object");
  }
  CostParams cost;
  for (const auto& field : kCostFields) {
    if (!value.contains(field)) {
      throw ConfigError(std::string("cost object is missing '") + field + "'");
    }
  }
  for (const auto& [key, v] : value.items()) {
    if (!v.is_number()) {
      throw ConfigError("cost." + key + " must be a number");
    }
    costField(cost, key) = v.get<double>();
  }
  return cost;
}

void setKey(PlannerConfig& config, const std::string& key, const json& value) {
  if (key == "n_h") {
    config.maxColTones = positiveInt(value, key);
  } else if (key == "n_v") {
    config.maxRowTones = positiveInt(value, key);
  } else if (key == "k") {
    config.maxTraps = positiveInt(value, key);
  } else if (key == "combo_budget") {
    config.comboBudget = static_cast<std::size_t>(positiveInt(value, key));
  } else if (key == "allow_row_gap_motion") {
    config.allowRowGapMotion = boolean(value, key);
  } else if (key == "allow_col_gap_motion") {
    config.allowColGapMotion = boolean(value, key);
  } else if (key == "allow_multiple_moves") {
    config.allowMultipleMoves = boolean(value, key);
  } else if (key == "allow_empty_onto_occupied") {
    config.allowEmptyOntoOccupied = boolean(value, key);
  } else if (key == "cost") {
    config.cost = costFromJson(value);
  } else if (key.rfind("cost.", 0) == 0) {
    if (!value.is_number()) {
      throw ConfigError("'" + key + "' must be a number");
    }
    costField(config.cost, std::string_view(key).substr(5)) = value.get<double>();
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

/// Override values are read as JSON where possible so that numbers and
/// booleans keep their type; anything else is taken as a bare string.
json overrideValue(std::string_view text) {
  json parsed = json::parse(text, nullptr, false);
  if (parsed.is_discarded()) {
    return json(std::string(text));
  }
  return parsed;
}

template <typename T>
T parseNumber(std::string_view key, std::string_view text) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError("invalid value '" + std::string(text) + "' for " + std::string(key));
  }
  return value;
}

double parseDouble(std::string_view key, std::string_view text) {
  const json value = overrideValue(text);
  if (!value.is_number()) {
    throw ConfigError("invalid value '" + std::string(text) + "' for " + std::string(key));
  }
  return value.get<double>();
}

} // namespace

PlannerConfig parseConfigJson(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ConfigError("config must be a JSON object");
  }
  PlannerConfig config;
  for (const auto& [key, value] : doc.items()) {
    setKey(config, key, value);
  }
  config.check();
  return config;
}

PlannerConfig loadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot read config file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parseConfigJson(buffer.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::string configToJson(const PlannerConfig& config) {
  json doc;
  doc["n_h"] = config.maxColTones;
  doc["n_v"] = config.maxRowTones;
  doc["k"] = config.maxTraps;
  doc["combo_budget"] = config.comboBudget;
  doc["allow_row_gap_motion"] = config.allowRowGapMotion;
  doc["allow_col_gap_motion"] = config.allowColGapMotion;
  doc["allow_multiple_moves"] = config.allowMultipleMoves;
  doc["allow_empty_onto_occupied"] = config.allowEmptyOntoOccupied;
  doc["cost"] = {{"constant_offset", config.cost.constantOffset},
                 {"per_substep_offset", config.cost.perSubstepOffset},
                 {"linear_factor", config.cost.linearFactor},
                 {"sqrt_factor", config.cost.sqrtFactor},
                 {"site_pitch", config.cost.sitePitch}};
  return doc.dump(2);
}

void applyOverride(PlannerConfig& config, InstanceSpec* instance, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw ConfigError("override '" + std::string(assignment) + "' is not KEY=VALUE");
  }
  const std::string key(assignment.substr(0, eq));
  const std::string_view text = assignment.substr(eq + 1);

  if (key == "n_t" || key == "ratio" || key == "fill" || key == "seed") {
    if (instance == nullptr) {
      throw ConfigError("instance key '" + key + "' is not accepted here");
    }
    if (key == "n_t") {
      instance->targetAtoms = parseNumber<std::size_t>(key, text);
    } else if (key == "seed") {
      instance->seed = parseNumber<std::uint64_t>(key, text);
    } else if (key == "ratio") {
      instance->ratio = parseDouble(key, text);
    } else {
      instance->fillRatio = parseDouble(key, text);
    }
    return;
  }
  setKey(config, key, overrideValue(text));
  config.check();
}

} // namespace aodsort
