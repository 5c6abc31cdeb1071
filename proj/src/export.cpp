#include "vnlab/export.hpp"

#include <charconv>

namespace vnlab {
namespace {

Json fractions(const std::vector<Fraction>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

std::string label_or_index(const std::vector<std::string>& labels, std::size_t i) {
  return i < labels.size() ? labels[i] : std::to_string(i);
}

std::string_view space_name(SpaceTag tag) {
  switch (tag) {
    case SpaceTag::X: return "X";
    case SpaceTag::G: return "G";
    case SpaceTag::Hybrid: return "hybrid";
  }
  return "unknown";
}

}  // namespace

std::string to_string(const Fraction& f) {
  if (f.denominator() == 1) return std::to_string(f.numerator());
  return std::to_string(f.numerator()) + "/" + std::to_string(f.denominator());
}

Fraction parse_fraction(const std::string& text) {
  auto parse_int = [&](std::string_view s) {
    std::int64_t v = 0;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end || s.empty()) throw Error(ErrorKind::SchemaError, "bad number '" + text + "'");
    return v;
  };
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const auto den = parse_int(std::string_view(text).substr(slash + 1));
    if (den == 0) throw Error(ErrorKind::SchemaError, "zero denominator in '" + text + "'");
    return Fraction(parse_int(std::string_view(text).substr(0, slash)), den);
  }
  const auto dot = text.find('.');
  if (dot == std::string::npos) return Fraction(parse_int(text));
  // Decimal literal: exact as digits over a power of ten.
  const std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  const auto places = text.size() - dot - 1;
  if (places > 15) throw Error(ErrorKind::SchemaError, "too many decimals in '" + text + "'");
  std::int64_t den = 1;
  for (std::size_t i = 0; i < places; ++i) den *= 10;
  return Fraction(parse_int(digits), den);
}

Json to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const Matrix& m, SpaceTag tag) {
  Json entries = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) entries.push_back(to_json(m(i, j)));
  return {{"space", space_name(tag)}, {"dimension", m.rows()}, {"entries", std::move(entries)}};
}

Json to_json(const AlphaFunction& alpha, const HybridSpace& hs) {
  Json out = Json::array();
  for (std::size_t g = 0; g < hs.group_order(); ++g)
    for (std::size_t x = 0; x < hs.points(); ++x)
      out.push_back({{"element", hs.group().label(g)},
                     {"point", hs.space().label(x)},
                     {"re", alpha(g, x).real()},
                     {"im", alpha(g, x).imag()}});
  return out;
}

Json to_json(const AlgebraReport& r) {
  return {{"ambient_dimension", r.ambient_dimension},
          {"dimension", r.dimension},
          {"is_factor", r.is_factor},
          {"center_dimension", r.center_dimension},
          {"generator_hash", r.generator_hash}};
}

Json to_json(const Comparison& c) {
  return {{"verdict", to_string(c.order)},
          {"segment_ranks", c.segment_ranks},
          {"witness_rank", projector_rank(c.witness.initial)}};
}

Json to_json(const Subset& s, const MeasureSpace& space) {
  Json out = Json::array();
  for (auto x : s.members()) out.push_back(space.label(x));
  return out;
}

Json to_json(const TypeReport& r) {
  Json out = {{"verdict", r.label()},
              {"normalization", to_string(r.normalization)},
              {"dimension_spectrum", fractions(r.dimension_spectrum)}};
  if (r.verdict == Verdict::In) out["n"] = r.n;
  if (r.verdict == Verdict::In || r.verdict == Verdict::IIIObstruction) out["normalization_constant"] = r.normalization_constant;
  if (!r.witnesses.empty()) {
    Json w = Json::array();
    for (const auto& x : r.witnesses) {
      Json rec = {{"element", label_or_index(r.element_labels, x.element)},
                  {"set", Json::array({label_or_index(r.point_labels, x.point)})},
                  {"measure", x.measure},
                  {"image_measure", x.image_measure}};
      if (x.exact_measure) rec["exact_measure"] = to_string(*x.exact_measure);
      if (x.exact_image_measure) rec["exact_image_measure"] = to_string(*x.exact_image_measure);
      w.push_back(std::move(rec));
    }
    out["witnesses"] = std::move(w);
  }
  if (r.demonstration) {
    const auto& d = *r.demonstration;
    auto set_labels = [&](const Subset& s) {
      Json a = Json::array();
      for (auto x : s.members()) a.push_back(label_or_index(r.point_labels, x));
      return a;
    };
    Json demo = {{"element", label_or_index(r.element_labels, d.element)},
                 {"spectral_set_p", set_labels(d.set_p)},
                 {"spectral_set_q", set_labels(d.set_q)},
                 {"measure_p", d.measure_p},
                 {"measure_q", d.measure_q},
                 {"ratio", d.ratio},
                 {"comparison", to_string(d.order)}};
    if (d.exact_ratio) demo["exact_ratio"] = to_string(*d.exact_ratio);
    out["demonstration"] = std::move(demo);
  }
  if (!r.levels.empty()) {
    Json levels = Json::array();
    for (const auto& l : r.levels) {
      levels.push_back({{"n", l.n},
                        {"spectrum", fractions(l.spectrum)},
                        {"mesh", to_string(l.mesh)},
                        {"identity_dimension", to_string(l.identity_dimension)}});
    }
    out["levels"] = std::move(levels);
  }
  if (!r.scaling.empty()) {
    Json table = Json::array();
    for (const auto& s : r.scaling) {
      table.push_back({{"element", label_or_index(r.element_labels, s.element)},
                       {"point", label_or_index(r.point_labels, s.point)},
                       {"factor", to_string(s.factor)}});
    }
    out["scaling"] = std::move(table);
  }
  if (!r.notes.empty()) out["notes"] = r.notes;
  return out;
}

Json to_json(const TracialReport& r) {
  return {{"pairs", r.pairs},
          {"seed", r.seed},
          {"commutator_residual", r.commutator_residual},
          {"trace_residual", r.trace_residual},
          {"unitary_residual", r.unitary_residual},
          {"skewed_violation", r.skewed_violation}};
}

Json to_json(const CorrelationReport& r) {
  return {{"samples", r.samples},
          {"seed", r.seed},
          {"mean_residual", r.mean_residual},
          {"second_moment_residual", r.second_moment_residual},
          {"generic_mean_gap", r.generic_mean_gap},
          {"commutator", r.commutator}};
}

}  // namespace vnlab
