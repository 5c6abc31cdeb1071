#ifndef VNLAB_SCENARIO_HPP
#define VNLAB_SCENARIO_HPP

#include <filesystem>
#include <optional>
#include <vector>

#include "vnlab/export.hpp"

namespace vnlab {

enum class ScenarioKind { Action, Tower, Affine, Measurement };

struct Scenario {
  std::string name;
  ScenarioKind kind = ScenarioKind::Action;
  std::optional<GroupAction> action;
  TowerKind tower = TowerKind::II1;
  std::vector<std::size_t> levels;
  std::size_t depth = 1;
  std::optional<MeasurementScenario> measurement;
  std::vector<Vector> states;  // raw coefficients f(g, x), g-major over the positive-mass points
  std::vector<std::string> analyses;  // empty selects the defaults for the kind
  Tolerances tol;
  std::uint64_t seed = 1;
  Normalization normalization = Normalization::UnitMinimal;
  std::optional<int> expected_exit_code;
};

/// Validates and converts; every structural problem surfaces as SchemaError.
Scenario parse_scenario(const Json& doc);
/// Throws IOFailure for unreadable files and SchemaError for malformed JSON.
Scenario load_scenario(const std::filesystem::path& path);
/// The "expect": {"exit_code": k} field of a file, read before validation.
std::optional<int> expected_exit_code(const std::filesystem::path& path);

struct PresetInfo {
  std::string name;
  std::string syntax;
  std::string description;
};

std::vector<PresetInfo> list_presets();
/// "cyclic:3", "II1-tower", "II1-tower:2,3,4", "IIinf-tower:2,4",
/// "affine-analogue:2", "measurement:3". Throws SchemaError.
Scenario preset_scenario(const std::string& spec);

std::string_view to_string(ScenarioKind kind);
std::vector<std::string> default_analyses(ScenarioKind kind);

}  // namespace vnlab

#endif  // VNLAB_SCENARIO_HPP
