#ifndef VNLAB_BASE_SPACE_HPP
#define VNLAB_BASE_SPACE_HPP

#include <optional>
#include <string>
#include <vector>

#include "vnlab/types.hpp"

namespace vnlab {

/// A subset of a finite point set, stored as a membership mask.
class Subset {
 public:
  Subset() = default;
  explicit Subset(std::size_t universe) : bits_(universe, false) {}
  Subset(std::size_t universe, std::initializer_list<std::size_t> members);

  static Subset singleton(std::size_t universe, std::size_t point);
  static Subset full(std::size_t universe);
  /// Subset whose membership is the binary expansion of `mask` (point i <-> bit i).
  static Subset from_mask(std::size_t universe, std::uint64_t mask);

  std::size_t universe() const { return bits_.size(); }
  bool contains(std::size_t point) const { return bits_.at(point); }
  void insert(std::size_t point) { bits_.at(point) = true; }
  void erase(std::size_t point) { bits_.at(point) = false; }
  std::size_t count() const;
  bool empty() const { return count() == 0; }
  std::vector<std::size_t> members() const;

  Subset operator|(const Subset& other) const;
  Subset operator&(const Subset& other) const;
  Subset operator~() const;
  /// Symmetric difference.
  Subset operator^(const Subset& other) const;
  bool operator==(const Subset& other) const = default;
  bool is_subset_of(const Subset& other) const;

 private:
  void check_universe(const Subset& other) const;
  std::vector<bool> bits_;
};

/// Finite point set with nonnegative point masses; every subset is measurable.
class MeasureSpace {
 public:
  MeasureSpace(std::vector<std::string> labels, std::vector<double> masses);
  /// Exact masses are kept alongside their double conversion.
  MeasureSpace(std::vector<std::string> labels, std::vector<Fraction> masses);

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }
  double mass(std::size_t i) const { return masses_.at(i); }
  const std::vector<double>& masses() const { return masses_; }
  bool has_exact_masses() const { return exact_.has_value(); }
  Fraction exact_mass(std::size_t i) const;

  double measure(const Subset& s) const;
  std::optional<Fraction> exact_measure(const Subset& s) const;
  double total_mass() const;
  std::optional<Fraction> exact_total_mass() const;

  /// Points of positive mass, in increasing order.
  std::vector<std::size_t> support() const;

 private:
  void validate() const;
  std::vector<std::string> labels_;
  std::vector<double> masses_;
  std::optional<std::vector<Fraction>> exact_;
};

/// Finite group given by its Cayley table; element 0 is the identity.
class FiniteGroup {
 public:
  FiniteGroup(std::vector<std::string> labels, std::vector<std::vector<std::size_t>> table);

  static FiniteGroup cyclic(std::size_t n);
  static FiniteGroup trivial() { return cyclic(1); }
  static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
  /// Symmetric group on `n` letters, elements in lexicographic permutation order.
  static FiniteGroup symmetric(std::size_t n);

  std::size_t order() const { return labels_.size(); }
  static constexpr std::size_t identity() { return 0; }
  std::size_t multiply(std::size_t a, std::size_t b) const { return table_[a][b]; }
  std::size_t inverse(std::size_t a) const { return inverse_[a]; }
  const std::string& label(std::size_t a) const { return labels_.at(a); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<std::vector<std::size_t>>& table() const { return table_; }
  bool is_abelian() const;

  /// A small generating set, chosen greedily in element order.
  std::vector<std::size_t> generators() const;

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::size_t> inverse_;
};

/// Evidence attached to a failed axiom: a group element and a subset of X.
struct ActionWitness {
  std::size_t element = 0;
  Subset set;
};

struct AxiomVerdict {
  bool holds = true;
  std::optional<ActionWitness> witness;
  explicit operator bool() const { return holds; }
};

/// Left action of a finite group on a finite measure space by point bijections.
class GroupAction {
 public:
  /// `table[g][x]` is the image of point x under element g.
  GroupAction(FiniteGroup group, MeasureSpace space, std::vector<std::vector<std::size_t>> table);

  /// Z_n acting on the n points of `space` by rotation x_k -> x_{k+g}.
  static GroupAction cyclic_rotation(MeasureSpace space);

  const FiniteGroup& group() const { return group_; }
  const MeasureSpace& space() const { return space_; }
  std::size_t act(std::size_t g, std::size_t x) const { return table_[g][x]; }
  Subset act(std::size_t g, const Subset& s) const;
  const std::vector<std::vector<std::size_t>>& table() const { return table_; }

  /// Orbit partition of the positive-mass support.
  std::vector<std::vector<std::size_t>> support_orbits() const;

  /// Same action on the positive-mass points only. Throws ZeroMassDivision if
  /// some element moves a positive-mass point onto a zero-mass one.
  GroupAction restricted_to_support() const;

 private:
  void validate() const;
  FiniteGroup group_;
  MeasureSpace space_;
  std::vector<std::vector<std::size_t>> table_;
};

AxiomVerdict is_free(const GroupAction& a);
AxiomVerdict is_ergodic(const GroupAction& a);
AxiomVerdict is_measure_invariant(const GroupAction& a);

/// kappa_g(x) = mu(gx) / mu(x). Entries where both masses vanish lie outside
/// the derivative's domain and are NaN. Throws ZeroMassDivision when mu(x) = 0
/// but mu(gx) > 0.
RealVector radon_nikodym(const GroupAction& a, std::size_t g);

}  // namespace vnlab

#endif  // VNLAB_BASE_SPACE_HPP
