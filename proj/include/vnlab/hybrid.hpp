#ifndef VNLAB_HYBRID_HPP
#define VNLAB_HYBRID_HPP

#include "vnlab/base_space.hpp"

namespace vnlab {

// Coordinate convention: every vector of H_X is stored as f(x) * sqrt(mu(x)),
// so the weighted inner product becomes the plain Euclidean one and adjoints
// are conjugate transposes. Hybrid arrays are indexed (g, x) with g major.

/// Vector of H_X in measure-orthonormal coordinates.
struct VectorX {
  Vector coefficients;
};

/// Vector of H_G in the orthonormal basis |g>.
struct VectorG {
  Vector coefficients;
};

/// Vector of H = H_X (x) H_G; coefficient (g, x) sits at g * points + x.
struct HybridVector {
  Vector coefficients;
  std::size_t group_order = 0;
  std::size_t points = 0;

  auto block(std::size_t g) { return coefficients.segment(static_cast<Eigen::Index>(g * points), static_cast<Eigen::Index>(points)); }
  auto block(std::size_t g) const {
    return coefficients.segment(static_cast<Eigen::Index>(g * points), static_cast<Eigen::Index>(points));
  }
  double norm() const { return coefficients.norm(); }
};

/// The hybrid space of a group action, restricted to the positive-mass support.
class HybridSpace {
 public:
  /// Throws ZeroMassDivision if the support is not invariant and CapExceeded if
  /// |G| * |X_+| exceeds `cap`.
  explicit HybridSpace(const GroupAction& action, std::size_t cap = kDefaultHybridCap);

  /// The action restricted to positive-mass points; all indices below refer to it.
  const GroupAction& action() const { return action_; }
  const FiniteGroup& group() const { return action_.group(); }
  const MeasureSpace& space() const { return action_.space(); }
  std::size_t group_order() const { return action_.group().order(); }
  std::size_t points() const { return action_.space().size(); }
  std::size_t dimension() const { return group_order() * points(); }
  Eigen::Index index(std::size_t g, std::size_t x) const { return static_cast<Eigen::Index>(g * points() + x); }

  /// sqrt(mu(x)) per point, the factor between raw and stored coordinates.
  const RealVector& root_masses() const { return root_masses_; }

  VectorX x_from_raw(const Vector& raw) const;
  Vector x_to_raw(const VectorX& v) const;
  HybridVector from_raw(const Vector& raw) const;
  Vector to_raw(const HybridVector& v) const;
  HybridVector zero() const;

  /// Matrix of an H_X operator in raw (weighted) coordinates: D^{-1/2} M D^{1/2}.
  Matrix x_operator_to_raw(const Matrix& internal) const;
  Matrix hybrid_operator_to_raw(const Matrix& internal) const;

  /// Omega = 1 (x) |1>: the constant function 1 paired with the identity element.
  HybridVector trace_vector() const;

 private:
  GroupAction action_;
  RealVector root_masses_;
};

/// <v1|v2>, conjugate-linear in the first argument.
Complex inner_product(const HybridVector& v1, const HybridVector& v2);
Complex inner_product(const VectorX& v1, const VectorX& v2);

HybridVector tensor(const VectorX& fx, const VectorG& fg);

}  // namespace vnlab

#endif  // VNLAB_HYBRID_HPP
