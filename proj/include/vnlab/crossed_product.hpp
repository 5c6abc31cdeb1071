#ifndef VNLAB_CROSSED_PRODUCT_HPP
#define VNLAB_CROSSED_PRODUCT_HPP

#include "vnlab/algebra.hpp"
#include "vnlab/operators.hpp"

namespace vnlab {

/// The coupled algebras of a group action on the hybrid space.
///
/// F is generated by Lbar_phi for a function phi with distinct values together
/// with Ubar_g over a generating set of G; F' by the primed counterparts. Both
/// are built eagerly.
class CrossedProduct {
 public:
  explicit CrossedProduct(const GroupAction& action, const Tolerances& tol = {}, std::size_t cap = kDefaultHybridCap);

  const HybridSpace& space() const { return space_; }
  const VNAlgebra& F() const { return f_; }
  const VNAlgebra& F_prime() const { return f_prime_; }
  const Matrix& Q() const { return q_; }
  const Tolerances& tolerances() const { return tol_; }

  /// phi(x) = x + 1 on the support: separates points, so Lbar_phi generates Lbar.
  Vector separating_function() const;

  /// alpha of an element of F. Throws NotInAlgebra when `a` is not in F.
  AlphaFunction to_alpha(const Matrix& a) const;
  Matrix from_alpha(const AlphaFunction& alpha, AlgebraSide side) const { return vnlab::from_alpha(space_, alpha, side); }

 private:
  HybridSpace space_;
  Tolerances tol_;
  VNAlgebra f_;
  VNAlgebra f_prime_;
  Matrix q_;
};

}  // namespace vnlab

#endif  // VNLAB_CROSSED_PRODUCT_HPP
