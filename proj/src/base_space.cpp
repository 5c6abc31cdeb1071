#include "vnlab/base_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace vnlab {

// ---------------------------------------------------------------- Subset

Subset::Subset(std::size_t universe, std::initializer_list<std::size_t> members) : bits_(universe, false) {
  for (auto m : members) insert(m);
}

Subset Subset::singleton(std::size_t universe, std::size_t point) {
  Subset s(universe);
  s.insert(point);
  return s;
}

Subset Subset::full(std::size_t universe) {
  Subset s(universe);
  s.bits_.assign(universe, true);
  return s;
}

Subset Subset::from_mask(std::size_t universe, std::uint64_t mask) {
  Subset s(universe);
  for (std::size_t i = 0; i < universe && i < 64; ++i) s.bits_[i] = ((mask >> i) & 1u) != 0;
  return s;
}

std::size_t Subset::count() const { return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true)); }

std::vector<std::size_t> Subset::members() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) out.push_back(i);
  return out;
}

void Subset::check_universe(const Subset& other) const {
  if (other.universe() != universe()) throw Error(ErrorKind::DimensionMismatch, "subsets of different point sets");
}

Subset Subset::operator|(const Subset& other) const {
  check_universe(other);
  Subset s(universe());
  for (std::size_t i = 0; i < universe(); ++i) s.bits_[i] = bits_[i] || other.bits_[i];
  return s;
}

Subset Subset::operator&(const Subset& other) const {
  check_universe(other);
  Subset s(universe());
  for (std::size_t i = 0; i < universe(); ++i) s.bits_[i] = bits_[i] && other.bits_[i];
  return s;
}

Subset Subset::operator~() const {
  Subset s(universe());
  for (std::size_t i = 0; i < universe(); ++i) s.bits_[i] = !bits_[i];
  return s;
}

Subset Subset::operator^(const Subset& other) const {
  check_universe(other);
  Subset s(universe());
  for (std::size_t i = 0; i < universe(); ++i) s.bits_[i] = bits_[i] != other.bits_[i];
  return s;
}

bool Subset::is_subset_of(const Subset& other) const {
  check_universe(other);
  for (std::size_t i = 0; i < universe(); ++i)
    if (bits_[i] && !other.bits_[i]) return false;
  return true;
}

// ---------------------------------------------------------------- MeasureSpace

MeasureSpace::MeasureSpace(std::vector<std::string> labels, std::vector<double> masses)
    : labels_(std::move(labels)), masses_(std::move(masses)) {
  validate();
}

MeasureSpace::MeasureSpace(std::vector<std::string> labels, std::vector<Fraction> masses)
    : labels_(std::move(labels)), exact_(std::move(masses)) {
  masses_.reserve(exact_->size());
  for (const auto& m : *exact_) masses_.push_back(boost::rational_cast<double>(m));
  validate();
}

void MeasureSpace::validate() const {
  if (labels_.size() != masses_.size()) {
    throw Error(ErrorKind::InvalidStructure, "point labels and masses differ in length");
  }
  if (labels_.empty()) throw Error(ErrorKind::InvalidStructure, "measure space has no points");
  for (double m : masses_) {
    if (!(m >= 0.0) || !std::isfinite(m)) throw Error(ErrorKind::InvalidStructure, "point masses must be finite and nonnegative");
  }
  if (!(total_mass() > 0.0)) throw Error(ErrorKind::InvalidStructure, "total mass must be positive");
}

Fraction MeasureSpace::exact_mass(std::size_t i) const {
  if (!exact_) throw Error(ErrorKind::InvalidStructure, "masses were not given exactly");
  return exact_->at(i);
}

double MeasureSpace::measure(const Subset& s) const {
  if (s.universe() != size()) throw Error(ErrorKind::DimensionMismatch, "subset of a different point set");
  double total = 0.0;
  for (std::size_t i = 0; i < size(); ++i)
    if (s.contains(i)) total += masses_[i];
  return total;
}

std::optional<Fraction> MeasureSpace::exact_measure(const Subset& s) const {
  if (!exact_) return std::nullopt;
  if (s.universe() != size()) throw Error(ErrorKind::DimensionMismatch, "subset of a different point set");
  Fraction total(0);
  for (std::size_t i = 0; i < size(); ++i)
    if (s.contains(i)) total += (*exact_)[i];
  return total;
}

double MeasureSpace::total_mass() const { return std::accumulate(masses_.begin(), masses_.end(), 0.0); }

std::optional<Fraction> MeasureSpace::exact_total_mass() const {
  if (!exact_) return std::nullopt;
  return std::accumulate(exact_->begin(), exact_->end(), Fraction(0));
}

std::vector<std::size_t> MeasureSpace::support() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (masses_[i] > 0.0) out.push_back(i);
  return out;
}

// ---------------------------------------------------------------- FiniteGroup

FiniteGroup::FiniteGroup(std::vector<std::string> labels, std::vector<std::vector<std::size_t>> table)
    : labels_(std::move(labels)), table_(std::move(table)) {
  const std::size_t n = labels_.size();
  if (n == 0) throw Error(ErrorKind::InvalidStructure, "group has no elements");
  if (table_.size() != n) throw Error(ErrorKind::InvalidStructure, "Cayley table has wrong number of rows");
  for (const auto& row : table_) {
    if (row.size() != n) throw Error(ErrorKind::InvalidStructure, "Cayley table row has wrong length");
    for (auto v : row)
      if (v >= n) throw Error(ErrorKind::InvalidStructure, "Cayley table entry out of range");
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (table_[0][a] != a || table_[a][0] != a) {
      throw Error(ErrorKind::InvalidStructure, "element 0 is not a two-sided identity");
    }
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]]) {
          throw Error(ErrorKind::InvalidStructure, "Cayley table is not associative at (" + labels_[a] + ", " +
                                                       labels_[b] + ", " + labels_[c] + ")");
        }
  inverse_.assign(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (table_[a][b] == 0 && table_[b][a] == 0) {
        inverse_[a] = b;
        break;
      }
    }
    if (inverse_[a] == n) throw Error(ErrorKind::InvalidStructure, "element " + labels_[a] + " has no inverse");
  }
}

FiniteGroup FiniteGroup::cyclic(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidStructure, "cyclic group of order 0");
  std::vector<std::string> labels;
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a) {
    labels.push_back(std::to_string(a));
    for (std::size_t b = 0; b < n; ++b) table[a][b] = (a + b) % n;
  }
  return FiniteGroup(std::move(labels), std::move(table));
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const std::size_t na = a.order(), nb = b.order(), n = na * nb;
  std::vector<std::string> labels(n);
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = "(" + a.label(i / nb) + "," + b.label(i % nb) + ")";
    for (std::size_t j = 0; j < n; ++j) {
      table[i][j] = a.multiply(i / nb, j / nb) * nb + b.multiply(i % nb, j % nb);
    }
  }
  return FiniteGroup(std::move(labels), std::move(table));
}

FiniteGroup FiniteGroup::symmetric(std::size_t n) {
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  const std::size_t m = perms.size();
  std::vector<std::string> labels(m);
  for (std::size_t i = 0; i < m; ++i) {
    std::string s = "[";
    for (auto v : perms[i]) s += std::to_string(v);
    labels[i] = s + "]";
  }
  std::vector<std::vector<std::size_t>> table(m, std::vector<std::size_t>(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<std::size_t> c(n);
      for (std::size_t k = 0; k < n; ++k) c[k] = perms[i][perms[j][k]];  // (ij)(k) = i(j(k))
      table[i][j] = static_cast<std::size_t>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  }
  return FiniteGroup(std::move(labels), std::move(table));
}

bool FiniteGroup::is_abelian() const {
  for (std::size_t a = 0; a < order(); ++a)
    for (std::size_t b = 0; b < order(); ++b)
      if (table_[a][b] != table_[b][a]) return false;
  return true;
}

std::vector<std::size_t> FiniteGroup::generators() const {
  std::vector<std::size_t> gens;
  std::vector<bool> reached(order(), false);
  reached[0] = true;
  std::size_t reached_count = 1;
  for (std::size_t candidate = 1; candidate < order() && reached_count < order(); ++candidate) {
    if (reached[candidate]) continue;
    gens.push_back(candidate);
    // Close the reached set under right multiplication by every generator.
    std::vector<std::size_t> frontier;
    for (std::size_t a = 0; a < order(); ++a)
      if (reached[a]) frontier.push_back(a);
    while (!frontier.empty()) {
      std::vector<std::size_t> next;
      for (auto a : frontier) {
        for (auto g : gens) {
          const auto b = multiply(a, g);
          if (!reached[b]) {
            reached[b] = true;
            ++reached_count;
            next.push_back(b);
          }
        }
      }
      frontier = std::move(next);
    }
  }
  return gens;
}

// ---------------------------------------------------------------- GroupAction

GroupAction::GroupAction(FiniteGroup group, MeasureSpace space, std::vector<std::vector<std::size_t>> table)
    : group_(std::move(group)), space_(std::move(space)), table_(std::move(table)) {
  validate();
}

void GroupAction::validate() const {
  const std::size_t ng = group_.order(), nx = space_.size();
  if (table_.size() != ng) throw Error(ErrorKind::InvalidStructure, "action table needs one row per group element");
  for (const auto& row : table_) {
    if (row.size() != nx) throw Error(ErrorKind::InvalidStructure, "action row needs one image per point");
    std::vector<bool> hit(nx, false);
    for (auto y : row) {
      if (y >= nx) throw Error(ErrorKind::InvalidStructure, "action image out of range");
      if (hit[y]) throw Error(ErrorKind::InvalidStructure, "action of an element is not a bijection");
      hit[y] = true;
    }
  }
  for (std::size_t x = 0; x < nx; ++x)
    if (table_[0][x] != x) throw Error(ErrorKind::InvalidStructure, "identity does not act trivially");
  for (std::size_t g = 0; g < ng; ++g)
    for (std::size_t h = 0; h < ng; ++h)
      for (std::size_t x = 0; x < nx; ++x)
        if (table_[g][table_[h][x]] != table_[group_.multiply(g, h)][x]) {
          throw Error(ErrorKind::InvalidStructure, "action is not compatible with the group product");
        }
}

GroupAction GroupAction::cyclic_rotation(MeasureSpace space) {
  const std::size_t n = space.size();
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t x = 0; x < n; ++x) table[g][x] = (x + g) % n;
  return GroupAction(FiniteGroup::cyclic(n), std::move(space), std::move(table));
}

Subset GroupAction::act(std::size_t g, const Subset& s) const {
  Subset image(space_.size());
  for (auto x : s.members()) image.insert(act(g, x));
  return image;
}

std::vector<std::vector<std::size_t>> GroupAction::support_orbits() const {
  std::vector<std::vector<std::size_t>> orbits;
  std::vector<bool> seen(space_.size(), false);
  for (auto x : space_.support()) {
    if (seen[x]) continue;
    std::vector<std::size_t> orbit;
    for (std::size_t g = 0; g < group_.order(); ++g) {
      const auto y = act(g, x);
      if (!seen[y] && space_.mass(y) > 0.0) {
        seen[y] = true;
        orbit.push_back(y);
      }
    }
    std::sort(orbit.begin(), orbit.end());
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

GroupAction GroupAction::restricted_to_support() const {
  const auto support = space_.support();
  std::vector<std::size_t> position(space_.size(), space_.size());
  for (std::size_t k = 0; k < support.size(); ++k) position[support[k]] = k;
  std::vector<std::string> labels;
  for (auto x : support) labels.push_back(space_.label(x));
  std::vector<std::vector<std::size_t>> table(group_.order(), std::vector<std::size_t>(support.size()));
  for (std::size_t g = 0; g < group_.order(); ++g) {
    for (std::size_t k = 0; k < support.size(); ++k) {
      const auto y = act(g, support[k]);
      if (position[y] == space_.size()) {
        throw Error(ErrorKind::ZeroMassDivision, "element " + group_.label(g) + " maps positive-mass point " +
                                                     space_.label(support[k]) + " onto zero-mass point " +
                                                     space_.label(y));
      }
      table[g][k] = position[y];
    }
  }
  if (space_.has_exact_masses()) {
    std::vector<Fraction> masses;
    for (auto x : support) masses.push_back(space_.exact_mass(x));
    return GroupAction(group_, MeasureSpace(std::move(labels), std::move(masses)), std::move(table));
  }
  std::vector<double> masses;
  for (auto x : support) masses.push_back(space_.mass(x));
  return GroupAction(group_, MeasureSpace(std::move(labels), std::move(masses)), std::move(table));
}

// ---------------------------------------------------------------- axioms

AxiomVerdict is_free(const GroupAction& a) {
  const auto& space = a.space();
  for (std::size_t g = 1; g < a.group().order(); ++g) {
    for (std::size_t x = 0; x < space.size(); ++x) {
      if (a.act(g, x) == x && space.mass(x) > 0.0) {
        return {false, ActionWitness{g, Subset::singleton(space.size(), x)}};
      }
    }
  }
  return {};
}

AxiomVerdict is_ergodic(const GroupAction& a) {
  const auto orbits = a.support_orbits();
  if (orbits.size() <= 1) return {};
  Subset invariant(a.space().size());
  for (auto x : orbits.front()) invariant.insert(x);
  return {false, ActionWitness{0, invariant}};
}

AxiomVerdict is_measure_invariant(const GroupAction& a) {
  const auto& space = a.space();
  for (std::size_t g = 1; g < a.group().order(); ++g) {
    for (std::size_t x = 0; x < space.size(); ++x) {
      const auto y = a.act(g, x);
      const bool differs = space.has_exact_masses() ? space.exact_mass(x) != space.exact_mass(y)
                                                    : space.mass(x) != space.mass(y);
      if (differs) return {false, ActionWitness{g, Subset::singleton(space.size(), x)}};
    }
  }
  return {};
}

RealVector radon_nikodym(const GroupAction& a, std::size_t g) {
  const auto& space = a.space();
  RealVector kappa(static_cast<Eigen::Index>(space.size()));
  for (std::size_t x = 0; x < space.size(); ++x) {
    const double from = space.mass(x), to = space.mass(a.act(g, x));
    if (from > 0.0) {
      kappa[static_cast<Eigen::Index>(x)] = to / from;
    } else if (to > 0.0) {
      throw Error(ErrorKind::ZeroMassDivision, "point " + space.label(x) + " has zero mass but its image does not");
    } else {
      kappa[static_cast<Eigen::Index>(x)] = std::numeric_limits<double>::quiet_NaN();
    }
  }
  return kappa;
}

}  // namespace vnlab
