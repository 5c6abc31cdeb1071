#include "vnlab/classifier.hpp"

#include <algorithm>
#include <set>

namespace vnlab {
namespace {

std::optional<Fraction> exact_mass(const MeasureSpace& space, std::size_t x) {
  if (!space.has_exact_masses()) return std::nullopt;
  return space.exact_mass(x);
}

void require_free_ergodic(const GroupAction& action) {
  if (auto v = is_free(action); !v) {
    throw Error(ErrorKind::NotFreeOrErgodic, "action is not free: element " + action.group().label(v.witness->element) +
                                                 " fixes a point of positive mass");
  }
  if (auto v = is_ergodic(action); !v) {
    throw Error(ErrorKind::NotFreeOrErgodic,
                "action is not ergodic: a proper invariant set of positive measure exists");
  }
}

// D of Pbar_{x} for every point, exact.
std::vector<Fraction> singleton_dimensions(const CrossedProduct& cp, const Factor& f, Normalization norm) {
  std::vector<Fraction> out;
  for (std::size_t x = 0; x < cp.space().points(); ++x) {
    out.push_back(exact_dimension(f, pbar(cp.space(), Subset::singleton(cp.space().points(), x)), norm));
  }
  return out;
}

double min_mass(const MeasureSpace& space) { return *std::min_element(space.masses().begin(), space.masses().end()); }

}  // namespace

std::string TypeReport::label() const {
  switch (verdict) {
    case Verdict::In: return "I_" + std::to_string(n);
    case Verdict::II1Approximant: return "II1_approximant";
    case Verdict::IIinfApproximant: return "IIinf_approximant";
    case Verdict::IIIObstruction: return "III_obstruction";
  }
  return "unknown";
}

std::vector<Fraction> subset_sums(const std::vector<Fraction>& values) {
  std::set<Fraction> sums{Fraction(0)};
  for (const auto& v : values) {
    std::set<Fraction> next = sums;
    for (const auto& s : sums) next.insert(s + v);
    sums = std::move(next);
  }
  return {sums.begin(), sums.end()};
}

Fraction mesh(const std::vector<Fraction>& sorted) {
  if (sorted.size() < 2) return Fraction(0);
  Fraction best = sorted[1] - sorted[0];
  for (std::size_t i = 2; i < sorted.size(); ++i) best = std::min(best, sorted[i] - sorted[i - 1]);
  return best;
}

GroupAction cyclic_uniform(std::size_t n, Fraction mass) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("x" + std::to_string(i));
  return GroupAction::cyclic_rotation(MeasureSpace(std::move(labels), std::vector<Fraction>(n, mass)));
}

TypeReport classify(const GroupAction& action, const Tolerances& tol, std::size_t cap) {
  require_free_ergodic(action);
  const CrossedProduct cp(action, tol, cap);
  const Factor f = Factor::from(cp.F());
  const auto& hs = cp.space();
  const auto& space = hs.space();
  TypeReport report;
  report.normalization = Normalization::UnitMinimal;
  report.normalization_constant = 1.0 / min_mass(space);
  report.element_labels = hs.group().labels();
  report.point_labels = space.labels();

  const auto invariance = is_measure_invariant(hs.action());
  if (invariance) {
    report.verdict = Verdict::In;
    report.dimension_spectrum = subset_sums(singleton_dimensions(cp, f, Normalization::UnitMinimal));
    const Fraction total = exact_dimension(f, Matrix::Identity(hs.dimension(), hs.dimension()), Normalization::UnitMinimal);
    if (total.denominator() != 1) throw Error(ErrorKind::NumericalFailure, "D(I) is not an integer");
    report.n = static_cast<std::size_t>(total.numerator());
    return report;
  }

  report.verdict = Verdict::IIIObstruction;
  const auto& group = hs.group();
  for (std::size_t g = 1; g < group.order(); ++g) {
    for (std::size_t x = 0; x < hs.points(); ++x) {
      const auto y = hs.action().act(g, x);
      const bool differs = space.has_exact_masses() ? space.exact_mass(x) != space.exact_mass(y) : space.mass(x) != space.mass(y);
      if (!differs) continue;
      report.witnesses.push_back({g, x, space.mass(x), space.mass(y), exact_mass(space, x), exact_mass(space, y)});
      if (space.has_exact_masses()) report.scaling.push_back({g, x, space.exact_mass(y) / space.exact_mass(x)});
    }
  }

  // Prefer a witness whose image is heavier, so the ratio reads >= 1.
  const auto& w = *std::max_element(report.witnesses.begin(), report.witnesses.end(), [](const auto& a, const auto& b) {
    return a.image_measure / a.measure < b.image_measure / b.measure;
  });
  DemonstrationPair demo;
  demo.element = w.element;
  demo.p = pbar(hs, Subset::singleton(hs.points(), w.point));
  // Conjugation by Ubar_h moves Pbar_S to Pbar_{h^-1 S}; h = g^-1 lands on gx.
  const Matrix u = ubar(hs, group.inverse(w.element));
  demo.q = u * demo.p * u.adjoint();
  demo.set_p = spectral_set(cp, demo.p);
  demo.set_q = spectral_set(cp, demo.q);
  demo.measure_p = space.measure(demo.set_p);
  demo.measure_q = space.measure(demo.set_q);
  demo.ratio = demo.measure_q / demo.measure_p;
  if (space.has_exact_masses()) demo.exact_ratio = *space.exact_measure(demo.set_q) / *space.exact_measure(demo.set_p);
  demo.order = compare(f, demo.p, demo.q).order;
  report.demonstration = std::move(demo);
  report.notes.push_back(
      "equivalent projectors with spectral-set measures in ratio != 1: D(P) = c mu(S_P) admits only c = 0 or c = infinity");
  return report;
}

TypeReport tower_analysis(TowerKind kind, const std::vector<std::size_t>& levels, std::size_t cap) {
  if (!std::is_sorted(levels.begin(), levels.end()) || std::adjacent_find(levels.begin(), levels.end()) != levels.end()) {
    throw Error(ErrorKind::InvalidStructure, "tower levels must be strictly increasing");
  }
  TypeReport report;
  report.verdict = kind == TowerKind::II1 ? Verdict::II1Approximant : Verdict::IIinfApproximant;
  report.normalization = kind == TowerKind::II1 ? Normalization::UnitTotal : Normalization::UnitMinimal;
  for (auto n : levels) {
    if (n == 0) throw Error(ErrorKind::InvalidStructure, "tower level 0");
    if (n * n > cap) {
      throw Error(ErrorKind::CapExceeded, "tower level " + std::to_string(n) + " needs hybrid dimension " +
                                              std::to_string(n * n) + " > cap " + std::to_string(cap));
    }
  }
  for (auto n : levels) {
    const Fraction mass = kind == TowerKind::II1 ? Fraction(1, static_cast<std::int64_t>(n)) : Fraction(1);
    const CrossedProduct cp(cyclic_uniform(n, mass), {}, cap);
    const Factor f = Factor::from(cp.F());
    TowerLevel level;
    level.n = n;
    level.spectrum = subset_sums(singleton_dimensions(cp, f, report.normalization));
    level.mesh = mesh(level.spectrum);
    level.identity_dimension = exact_dimension(f, Matrix::Identity(cp.space().dimension(), cp.space().dimension()),
                                               report.normalization);
    report.levels.push_back(std::move(level));
  }
  if (!report.levels.empty()) report.dimension_spectrum = report.levels.back().spectrum;
  report.notes.push_back(kind == TowerKind::II1
                             ? "finite truncations of a type II1 factor: D(I) = 1 and the spectrum mesh shrinks as 1/n"
                             : "finite truncations of a type IIinf factor: D(I) = n grows without bound");
  return report;
}

TypeReport affine_analogue(std::size_t depth, std::size_t cap) {
  if (depth == 0) throw Error(ErrorKind::InvalidStructure, "depth must be positive");
  const std::size_t n = 2 * depth;
  if (n * n > cap) throw Error(ErrorKind::CapExceeded, "affine analogue of depth " + std::to_string(depth) + " exceeds cap");
  std::vector<std::string> labels;
  std::vector<Fraction> masses;
  for (std::size_t k = 0; k < n; ++k) {
    labels.push_back("x" + std::to_string(k));
    masses.emplace_back(static_cast<std::int64_t>(1 + k % 2), static_cast<std::int64_t>(3 * depth));
  }
  TypeReport report = classify(GroupAction::cyclic_rotation(MeasureSpace(labels, masses)), {}, cap);
  report.notes.push_back("odd rotations rescale singleton measures by 2 or 1/2");
  return report;
}

}  // namespace vnlab
