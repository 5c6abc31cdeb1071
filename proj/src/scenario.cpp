#include "vnlab/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <set>

namespace vnlab {
namespace {

[[noreturn]] void schema(const std::string& what) { throw Error(ErrorKind::SchemaError, what); }

void reject_unknown(const Json& obj, std::initializer_list<std::string_view> allowed, const std::string& where) {
  if (!obj.is_object()) schema(where + " must be an object");
  for (const auto& item : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      schema("unknown field '" + item.key() + "' in " + where);
    }
  }
}

template <typename T>
T get(const Json& obj, const std::string& key, const std::string& where) {
  try {
    return obj.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    schema("field '" + key + "' of " + where + " is missing or has the wrong type");
  }
}

std::size_t resolve_index(const Json& entry, const std::vector<std::string>& labels, const std::string& what) {
  if (entry.is_number_unsigned() || (entry.is_number_integer() && entry.get<std::int64_t>() >= 0)) {
    const auto i = entry.get<std::size_t>();
    if (i >= labels.size()) schema(what + " index " + std::to_string(i) + " out of range");
    return i;
  }
  if (entry.is_string()) {
    const auto it = std::find(labels.begin(), labels.end(), entry.get<std::string>());
    if (it == labels.end()) schema("unknown " + what + " '" + entry.get<std::string>() + "'");
    return static_cast<std::size_t>(it - labels.begin());
  }
  schema(what + " entries must be indices or labels");
}

FiniteGroup parse_group(const Json& g) {
  if (g.contains("preset")) {
    reject_unknown(g, {"preset", "n", "factors"}, "group");
    const auto preset = get<std::string>(g, "preset", "group");
    if (preset == "cyclic") return FiniteGroup::cyclic(get<std::size_t>(g, "n", "group"));
    if (preset == "symmetric") return FiniteGroup::symmetric(get<std::size_t>(g, "n", "group"));
    if (preset == "product") {
      const auto factors = get<std::vector<std::size_t>>(g, "factors", "group");
      if (factors.empty()) schema("product group needs at least one factor");
      FiniteGroup out = FiniteGroup::cyclic(factors.front());
      for (std::size_t i = 1; i < factors.size(); ++i) out = FiniteGroup::direct_product(out, FiniteGroup::cyclic(factors[i]));
      return out;
    }
    schema("unknown group preset '" + preset + "'");
  }
  reject_unknown(g, {"elements", "table"}, "group");
  const auto labels = get<std::vector<std::string>>(g, "elements", "group");
  const Json& rows = g.at("table");
  if (!rows.is_array() || rows.size() != labels.size()) schema("group table must have one row per element");
  std::vector<std::vector<std::size_t>> table;
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != labels.size()) schema("group table rows must have one entry per element");
    std::vector<std::size_t> r;
    for (const auto& e : row) r.push_back(resolve_index(e, labels, "group element"));
    table.push_back(std::move(r));
  }
  return FiniteGroup(labels, std::move(table));
}

MeasureSpace parse_space(const Json& doc) {
  const auto labels = get<std::vector<std::string>>(doc, "points", "scenario");
  const Json& masses = doc.at("masses");
  if (!masses.is_array() || masses.size() != labels.size()) schema("masses must list one value per point");
  bool exact = true;
  std::vector<Fraction> fractions;
  std::vector<double> reals;
  for (const auto& m : masses) {
    if (m.is_string()) {
      const Fraction f = parse_fraction(m.get<std::string>());
      fractions.push_back(f);
      reals.push_back(boost::rational_cast<double>(f));
    } else if (m.is_number_integer()) {
      fractions.emplace_back(m.get<std::int64_t>());
      reals.push_back(m.get<double>());
    } else if (m.is_number()) {
      exact = false;
      fractions.emplace_back(0);
      reals.push_back(m.get<double>());
    } else {
      schema("masses must be numbers or fraction strings");
    }
  }
  return exact ? MeasureSpace(labels, fractions) : MeasureSpace(labels, reals);
}

GroupAction parse_action(const Json& doc, const FiniteGroup& group, const MeasureSpace& space) {
  const Json* action = doc.contains("action") ? &doc.at("action") : nullptr;
  const auto n = space.size();
  if (action == nullptr || (action->is_string() && action->get<std::string>() == "rotation")) {
    if (group.order() != n) schema("rotation needs as many group elements as points");
    if (group.table() != FiniteGroup::cyclic(n).table()) schema("default rotation action needs a cyclic group");
    std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
    for (std::size_t g = 0; g < n; ++g)
      for (std::size_t x = 0; x < n; ++x) table[g][x] = (x + g) % n;
    return GroupAction(group, space, std::move(table));
  }
  if (action->is_string() && action->get<std::string>() == "regular") {
    if (group.order() != n) schema("regular action needs as many group elements as points");
    return GroupAction(group, space, group.table());
  }
  if (!action->is_array() || action->size() != group.order()) schema("action must have one row per group element");
  std::vector<std::vector<std::size_t>> table;
  for (const auto& row : *action) {
    if (!row.is_array() || row.size() != n) schema("action rows must have one entry per point");
    std::vector<std::size_t> r;
    for (const auto& e : row) r.push_back(resolve_index(e, space.labels(), "point"));
    table.push_back(std::move(r));
  }
  return GroupAction(group, space, std::move(table));
}

MeasurementScenario parse_measurement(const Json& m) {
  reject_unknown(m, {"N", "weights"}, "measurement");
  MeasurementScenario s;
  s.n = get<std::size_t>(m, "N", "measurement");
  if (m.contains("weights")) {
    s.weights = get<std::vector<double>>(m, "weights", "measurement");
  } else {
    s.weights.assign(s.n, 1.0 / static_cast<double>(s.n));
  }
  return s;
}

Normalization parse_normalization(const std::string& s) {
  if (s == "unit-minimal") return Normalization::UnitMinimal;
  if (s == "unit-total") return Normalization::UnitTotal;
  schema("normalization must be unit-minimal or unit-total");
}

const std::set<std::string>& known_analyses() {
  static const std::set<std::string> names{"axioms",         "algebra", "operators", "alpha",       "comparability",
                                           "classification", "measurement", "tower", "affine", "entangler"};
  return names;
}

std::vector<std::size_t> parse_levels(const std::string& text) {
  std::vector<std::size_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    const Fraction f = parse_fraction(piece);
    if (f.denominator() != 1 || f.numerator() <= 0) schema("levels must be positive integers");
    out.push_back(static_cast<std::size_t>(f.numerator()));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

std::string_view to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::Action: return "action";
    case ScenarioKind::Tower: return "tower";
    case ScenarioKind::Affine: return "affine";
    case ScenarioKind::Measurement: return "measurement";
  }
  return "unknown";
}

std::vector<std::string> default_analyses(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::Action:
      return {"axioms", "algebra", "operators", "alpha", "comparability", "classification", "measurement"};
    case ScenarioKind::Tower: return {"tower"};
    case ScenarioKind::Affine: return {"affine"};
    case ScenarioKind::Measurement: return {"entangler"};
  }
  return {};
}

Scenario parse_scenario(const Json& doc) {
  reject_unknown(doc, {"name", "description", "points", "masses", "group", "action", "preset", "levels", "depth",
                       "analyses", "tolerance", "seed", "normalization", "measurement", "states", "expect"},
                 "scenario");
  Scenario s;
  if (doc.contains("preset")) {
    s = preset_scenario(get<std::string>(doc, "preset", "scenario"));
    if (doc.contains("levels")) s.levels = get<std::vector<std::size_t>>(doc, "levels", "scenario");
    if (doc.contains("depth")) s.depth = get<std::size_t>(doc, "depth", "scenario");
  }
  if (doc.contains("name")) s.name = get<std::string>(doc, "name", "scenario");
  try {
    if (doc.contains("points")) {
      if (doc.contains("preset")) schema("a scenario is either a preset or an explicit action");
      if (!doc.contains("group")) schema("field 'group' is required with 'points'");
      const MeasureSpace space = parse_space(doc);
      const FiniteGroup group = parse_group(doc.at("group"));
      s.kind = ScenarioKind::Action;
      s.action = parse_action(doc, group, space);
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::SchemaError) throw;
    schema(std::string("invalid structure: ") + e.what());
  } catch (const nlohmann::json::exception& e) {
    schema(std::string("malformed field: ") + e.what());
  }
  if (!s.action && !doc.contains("preset")) schema("scenario needs 'points' or 'preset'");
  if (doc.contains("analyses")) {
    s.analyses = get<std::vector<std::string>>(doc, "analyses", "scenario");
    for (const auto& a : s.analyses)
      if (!known_analyses().count(a)) schema("unknown analysis '" + a + "'");
  }
  if (doc.contains("tolerance")) s.tol.eps = get<double>(doc, "tolerance", "scenario");
  if (doc.contains("seed")) s.seed = get<std::uint64_t>(doc, "seed", "scenario");
  if (doc.contains("normalization")) s.normalization = parse_normalization(get<std::string>(doc, "normalization", "scenario"));
  if (doc.contains("measurement")) s.measurement = parse_measurement(doc.at("measurement"));
  if (doc.contains("states")) {
    if (!s.action) schema("states need an explicit action");
    for (const auto& st : doc.at("states")) {
      if (!st.is_array()) schema("states must be arrays of [re, im] pairs");
      Vector v(static_cast<Eigen::Index>(st.size()));
      for (std::size_t i = 0; i < st.size(); ++i) {
        const auto pair = st[i].get<std::vector<double>>();
        if (pair.size() != 2) schema("state entries must be [re, im] pairs");
        v[static_cast<Eigen::Index>(i)] = Complex(pair[0], pair[1]);
      }
      s.states.push_back(std::move(v));
    }
  }
  if (doc.contains("expect")) {
    reject_unknown(doc.at("expect"), {"exit_code"}, "expect");
    s.expected_exit_code = get<int>(doc.at("expect"), "exit_code", "expect");
  }
  if (s.name.empty()) s.name = "unnamed";
  if (!(s.tol.eps > 0.0)) schema("tolerance must be positive");
  if (s.measurement) {
    try {
      s.measurement->validate();
    } catch (const Error& e) {
      schema(std::string("invalid measurement block: ") + e.what());
    }
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IOFailure, "cannot read " + path.string());
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    schema(path.string() + ": " + e.what());
  }
  Scenario s = parse_scenario(doc);
  if (!doc.contains("name")) s.name = path.stem().string();
  return s;
}

std::optional<int> expected_exit_code(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  const Json doc = Json::parse(in, nullptr, false);
  if (doc.is_discarded() || !doc.is_object() || !doc.contains("expect")) return std::nullopt;
  const Json& e = doc.at("expect");
  if (!e.is_object() || !e.contains("exit_code") || !e.at("exit_code").is_number_integer()) return std::nullopt;
  return e.at("exit_code").get<int>();
}

std::vector<PresetInfo> list_presets() {
  return {
      {"cyclic", "cyclic:n", "Z_n rotating n points of mass 1/n"},
      {"II1-tower", "II1-tower[:n1,n2,...]", "Z_n on n points of mass 1/n per level (default 2,3,4,6)"},
      {"IIinf-tower", "IIinf-tower[:n1,n2,...]", "Z_n on n points of mass 1 per level (default 2,4)"},
      {"affine-analogue", "affine-analogue[:depth]", "Z_2d on 2d points, masses alternating 1/(3d), 2/(3d)"},
      {"measurement", "measurement:N", "pointer entangler on C^N (x) C^N with uniform weights"},
  };
}

Scenario preset_scenario(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  Scenario s;
  s.name = spec;
  if (name == "cyclic") {
    const auto n = parse_levels(arg.empty() ? "3" : arg);
    if (n.size() != 1) schema("cyclic preset takes one size");
    s.kind = ScenarioKind::Action;
    s.action = cyclic_uniform(n[0], Fraction(1, static_cast<std::int64_t>(n[0])));
  } else if (name == "II1-tower" || name == "IIinf-tower") {
    s.kind = ScenarioKind::Tower;
    s.tower = name == "II1-tower" ? TowerKind::II1 : TowerKind::IIinf;
    s.levels = parse_levels(arg.empty() ? (s.tower == TowerKind::II1 ? "2,3,4,6" : "2,4") : arg);
    s.normalization = s.tower == TowerKind::II1 ? Normalization::UnitTotal : Normalization::UnitMinimal;
  } else if (name == "affine-analogue") {
    s.kind = ScenarioKind::Affine;
    const auto d = parse_levels(arg.empty() ? "1" : arg);
    if (d.size() != 1) schema("affine-analogue takes one depth");
    s.depth = d[0];
  } else if (name == "measurement") {
    s.kind = ScenarioKind::Measurement;
    const auto n = parse_levels(arg.empty() ? "2" : arg);
    if (n.size() != 1) schema("measurement preset takes one size");
    s.measurement = MeasurementScenario{n[0], std::vector<double>(n[0], 1.0 / static_cast<double>(n[0]))};
  } else {
    schema("unknown preset '" + name + "'");
  }
  return s;
}

}  // namespace vnlab
