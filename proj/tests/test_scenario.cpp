#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "vnlab/pipeline.hpp"

using namespace vnlab;

namespace {

ErrorKind parse_error(const Json& doc) {
  try {
    parse_scenario(doc);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "parsed: " << doc.dump();
  return ErrorKind::NumericalFailure;
}

Json z2_doc() {
  return Json::parse(R"({"name": "z2", "points": ["a", "b"], "masses": ["1/2", "1/2"],
                         "group": {"preset": "cyclic", "n": 2}})");
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("vnlab_test_" + name);
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST(Fractions, ParseAndPrint) {
  EXPECT_EQ(parse_fraction("1/3"), Fraction(1, 3));
  EXPECT_EQ(parse_fraction("4/6"), Fraction(2, 3));
  EXPECT_EQ(parse_fraction("2"), Fraction(2));
  EXPECT_EQ(parse_fraction("0.25"), Fraction(1, 4));
  EXPECT_EQ(to_string(Fraction(2, 3)), "2/3");
  EXPECT_EQ(to_string(Fraction(5)), "5");
  for (const char* bad : {"", "abc", "1/0", "1/", "/2", "1/2/3"}) EXPECT_THROW(parse_fraction(bad), Error) << bad;
}

TEST(ScenarioParsing, ExplicitAction) {
  const Scenario s = parse_scenario(z2_doc());
  EXPECT_EQ(s.name, "z2");
  EXPECT_EQ(s.kind, ScenarioKind::Action);
  ASSERT_TRUE(s.action.has_value());
  EXPECT_EQ(s.action->group().order(), 2U);
  EXPECT_EQ(s.action->act(1, 0), 1U);
  EXPECT_EQ(s.action->space().exact_mass(0), Fraction(1, 2));
  EXPECT_EQ(s.seed, 1U);
}

TEST(ScenarioParsing, LabelledTablesAndStates) {
  Json doc = Json::parse(R"({
    "points": ["u", "v"], "masses": [1, "3"],
    "group": {"elements": ["e", "t"], "table": [["e", "t"], ["t", "e"]]},
    "action": [["u", "v"], ["v", "u"]],
    "states": [[[0.5, 0], [0.5, 0], [0, 0.5], [0.5, 0]]],
    "seed": 11, "normalization": "unit-total", "analyses": ["axioms", "algebra"],
    "expect": {"exit_code": 0}})");
  const Scenario s = parse_scenario(doc);
  EXPECT_EQ(s.action->space().exact_mass(1), Fraction(3));
  ASSERT_EQ(s.states.size(), 1U);
  EXPECT_EQ(s.states[0][2], Complex(0, 0.5));
  EXPECT_EQ(s.seed, 11U);
  EXPECT_EQ(s.normalization, Normalization::UnitTotal);
  EXPECT_EQ(s.analyses, (std::vector<std::string>{"axioms", "algebra"}));
  EXPECT_EQ(s.expected_exit_code, 0);
}

TEST(ScenarioParsing, SchemaErrors) {
  Json doc = z2_doc();
  doc["colour"] = "red";
  EXPECT_EQ(parse_error(doc), ErrorKind::SchemaError);

  doc = z2_doc();
  doc["masses"] = Json::array({"1/2"});
  EXPECT_EQ(parse_error(doc), ErrorKind::SchemaError);

  doc = z2_doc();
  doc["action"] = Json::parse(R"([["a", "b"], ["b", "z"]])");
  EXPECT_EQ(parse_error(doc), ErrorKind::SchemaError);

  doc = z2_doc();
  doc["analyses"] = Json::array({"astrology"});
  EXPECT_EQ(parse_error(doc), ErrorKind::SchemaError);

  doc = z2_doc();
  doc.erase("group");
  EXPECT_EQ(parse_error(doc), ErrorKind::SchemaError);

  doc = z2_doc();
  doc["normalization"] = "unit-maximal";
  EXPECT_EQ(parse_error(doc), ErrorKind::SchemaError);

  EXPECT_EQ(parse_error(Json::object()), ErrorKind::SchemaError);
  EXPECT_EQ(parse_error(Json::array()), ErrorKind::SchemaError);
}

TEST(ScenarioParsing, StructuralErrorsKeepTheirKind) {
  Json doc = z2_doc();
  doc["masses"] = Json::array({"1/2", "-1/2"});
  const ErrorKind k = parse_error(doc);
  EXPECT_EQ(exit_code_for(k), kExitSchema);
  // An action that is not a homomorphism.
  doc = Json::parse(R"({"points": ["a", "b", "c"], "masses": [1, 1, 1], "group": {"preset": "cyclic", "n": 3},
                        "action": [["a", "b", "c"], ["b", "a", "c"], ["c", "b", "a"]]})");
  EXPECT_EQ(exit_code_for(parse_error(doc)), kExitSchema);
}

TEST(Presets, ListedPresetsParse) {
  const auto presets = list_presets();
  EXPECT_GE(presets.size(), 5U);
  for (const auto& p : presets) {
    const Scenario s = preset_scenario(p.name);
    EXPECT_EQ(s.name, p.name);
    EXPECT_FALSE(default_analyses(s.kind).empty());
  }
  EXPECT_EQ(preset_scenario("cyclic:4").action->space().size(), 4U);
  EXPECT_EQ(preset_scenario("II1-tower:2,5").levels, (std::vector<std::size_t>{2, 5}));
  EXPECT_EQ(preset_scenario("measurement:3").measurement->n, 3U);
  for (const char* bad : {"cyclic:x", "cyclic:2,3", "mystery", "affine-analogue:1,2"})
    EXPECT_THROW(preset_scenario(bad), Error) << bad;
}

TEST(Files, LoadErrors) {
  try {
    load_scenario("/nonexistent/vnlab.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IOFailure);
    EXPECT_EQ(exit_code_for(e.kind()), kExitSchema);
  }
  const auto broken = temp_file("broken.json", "{\"points\": [");
  try {
    load_scenario(broken);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SchemaError);
  }
  EXPECT_FALSE(expected_exit_code(broken).has_value());
  std::filesystem::remove(broken);

  const auto named = temp_file("stem_name.json", R"({"preset": "cyclic:2", "expect": {"exit_code": 3}})");
  EXPECT_EQ(load_scenario(named).name, "vnlab_test_stem_name");
  EXPECT_EQ(expected_exit_code(named), 3);
  std::filesystem::remove(named);
}

TEST(Pipeline, ExitCodeMapping) {
  EXPECT_EQ(exit_code_for(ErrorKind::SchemaError), kExitSchema);
  EXPECT_EQ(exit_code_for(ErrorKind::InvalidStructure), kExitSchema);
  EXPECT_EQ(exit_code_for(ErrorKind::DimensionMismatch), kExitSchema);
  EXPECT_EQ(exit_code_for(ErrorKind::IOFailure), kExitSchema);
  EXPECT_EQ(exit_code_for(ErrorKind::CapExceeded), kExitCap);
  EXPECT_EQ(exit_code_for(ErrorKind::NumericalFailure), kExitNumerical);
  EXPECT_EQ(exit_code_for(ErrorKind::NotAFactor), kExitNumerical);
}

TEST(Pipeline, ReportIsDeterministic) {
  const Scenario s = preset_scenario("cyclic:2");
  const RunResult a = run_scenario(s);
  const RunResult b = run_scenario(s);
  EXPECT_EQ(a.exit_code, kExitOk);
  EXPECT_TRUE(a.failures.empty());
  EXPECT_EQ(a.report.dump(), b.report.dump());
  EXPECT_EQ(a.report["schema"], "report_v1");
  EXPECT_EQ(a.report["status"], "pass");
  EXPECT_FALSE(a.report["checks"].empty());
  for (const auto& c : a.report["checks"]) EXPECT_TRUE(c.contains("id"));

  RunOptions other;
  other.seed = 99;
  EXPECT_NE(run_scenario(s, other).report.dump(), a.report.dump());
}

TEST(Pipeline, OptionsOverrideScenario) {
  const Scenario s = preset_scenario("cyclic:3");
  RunOptions o;
  o.analyses = std::vector<std::string>{"axioms"};
  o.normalization = Normalization::UnitTotal;
  const RunResult r = run_scenario(s, o);
  EXPECT_EQ(r.exit_code, kExitOk);
  EXPECT_EQ(r.report["scenario"]["analyses"], Json::array({"axioms"}));
  EXPECT_EQ(r.report["scenario"]["normalization"], "unit-total");
}

TEST(Pipeline, CapIsEnforced) {
  RunOptions o;
  o.cap = 8;
  try {
    run_scenario(preset_scenario("cyclic:3"), o);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CapExceeded);
  }
  try {
    run_scenario(preset_scenario("cyclic:40"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(exit_code_for(e.kind()), kExitCap);
  }
}

TEST(Pipeline, ErrorReport) {
  const Json r = error_report("x.json", Error(ErrorKind::SchemaError, "bad"));
  EXPECT_EQ(r["status"], "error");
  EXPECT_EQ(r["error"]["exit_code"], kExitSchema);
  EXPECT_EQ(r["scenario"]["source"], "x.json");
}

TEST(Pipeline, StatesAreValidated) {
  Scenario s = parse_scenario(z2_doc());
  s.analyses = {"measurement"};
  s.states = {Vector::Ones(3)};
  EXPECT_THROW(run_scenario(s), Error);
  s.states = {Vector::Ones(4)};
  EXPECT_THROW(run_scenario(s), Error);
  Vector ok = Vector::Zero(4);
  ok[0] = std::sqrt(2.0);
  s.states = {ok};
  EXPECT_EQ(run_scenario(s).exit_code, kExitOk);
}

TEST(Export, MatrixAndSubset) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = Complex(1, -2);
  const Json j = to_json(m, SpaceTag::Hybrid);
  EXPECT_EQ(j["dimension"], 2);
  EXPECT_EQ(j["entries"].size(), 4U);
  EXPECT_EQ(j["entries"][1], Json::array({1.0, -2.0}));
  const MeasureSpace space({"a", "b", "c"}, {Fraction(1), Fraction(1), Fraction(1)});
  EXPECT_EQ(to_json(Subset(3, {0, 2}), space), Json::array({"a", "c"}));
}
