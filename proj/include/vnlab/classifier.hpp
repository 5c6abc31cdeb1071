#ifndef VNLAB_CLASSIFIER_HPP
#define VNLAB_CLASSIFIER_HPP

#include <optional>
#include <vector>

#include "vnlab/projectors.hpp"

namespace vnlab {

// Finite matrices cannot be of type II or III. The *_approximant and
// *_obstruction verdicts report the finite mechanism behind each type.
enum class Verdict { In, II1Approximant, IIinfApproximant, IIIObstruction };

/// A singleton {x} with mu(g{x}) != mu({x}).
struct ObstructionWitness {
  std::size_t element = 0;
  std::size_t point = 0;
  double measure = 0.0;        // mu({x})
  double image_measure = 0.0;  // mu({gx})
  std::optional<Fraction> exact_measure;
  std::optional<Fraction> exact_image_measure;
};

/// Pbar_{x} and its conjugate by Ubar_{g^-1}, i.e. Pbar_{gx}: Murray-von Neumann
/// equivalent, yet their spectral sets carry different measures.
struct DemonstrationPair {
  std::size_t element = 0;
  Matrix p;
  Matrix q;
  Subset set_p;
  Subset set_q;
  double measure_p = 0.0;
  double measure_q = 0.0;
  std::optional<Fraction> exact_ratio;  // mu(S_q) / mu(S_p)
  double ratio = 0.0;
  Order order = Order::Equivalent;
};

struct TowerLevel {
  std::size_t n = 0;
  std::vector<Fraction> spectrum;
  Fraction mesh;
  Fraction identity_dimension;
};

/// kappa_g(x) = mu(gx) / mu(x).
struct ScalingEntry {
  std::size_t element = 0;
  std::size_t point = 0;
  Fraction factor;
};

struct TypeReport {
  Verdict verdict = Verdict::In;
  std::size_t n = 0;  // for I_n
  Normalization normalization = Normalization::UnitMinimal;
  std::vector<Fraction> dimension_spectrum;
  double normalization_constant = 1.0;
  std::vector<ObstructionWitness> witnesses;
  std::optional<DemonstrationPair> demonstration;
  std::vector<TowerLevel> levels;
  std::vector<ScalingEntry> scaling;
  std::vector<std::string> notes;
  // Labels for the indices above (positive-mass points only).
  std::vector<std::string> element_labels;
  std::vector<std::string> point_labels;

  /// "I_3", "II1_approximant", "IIinf_approximant" or "III_obstruction".
  std::string label() const;
};

/// Free, ergodic action → I_n (invariant measure) or III_obstruction.
/// Throws NotFreeOrErgodic naming the failing axiom.
TypeReport classify(const GroupAction& action, const Tolerances& tol = {}, std::size_t cap = kDefaultHybridCap);

enum class TowerKind { II1, IIinf };

/// Z_n rotating n points of mass 1/n (II1) or mass 1 (IIinf), one level per n.
/// Levels must increase. Throws CapExceeded when a level is too large.
TypeReport tower_analysis(TowerKind kind, const std::vector<std::size_t>& levels, std::size_t cap = kDefaultHybridCap);

/// Z_{2d} rotating 2d points with masses alternating 1/(3d), 2/(3d): every
/// odd rotation scales point masses by 2 or 1/2.
TypeReport affine_analogue(std::size_t depth, std::size_t cap = kDefaultHybridCap);

/// Z_n rotating n points, every point of mass `mass`.
GroupAction cyclic_uniform(std::size_t n, Fraction mass);

/// All sums of sub-multisets of `values` (the spectrum of an additive D).
std::vector<Fraction> subset_sums(const std::vector<Fraction>& values);
/// Smallest gap between consecutive entries of a sorted list.
Fraction mesh(const std::vector<Fraction>& sorted);

}  // namespace vnlab

#endif  // VNLAB_CLASSIFIER_HPP
