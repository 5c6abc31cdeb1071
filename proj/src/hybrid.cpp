#include "vnlab/hybrid.hpp"

#include <cmath>

namespace vnlab {

HybridSpace::HybridSpace(const GroupAction& action, std::size_t cap) : action_(action.restricted_to_support()) {
  if (dimension() > cap) {
    throw Error(ErrorKind::CapExceeded, "hybrid dimension " + std::to_string(dimension()) + " exceeds cap " +
                                            std::to_string(cap));
  }
  root_masses_.resize(static_cast<Eigen::Index>(points()));
  for (std::size_t x = 0; x < points(); ++x) root_masses_[static_cast<Eigen::Index>(x)] = std::sqrt(space().mass(x));
}

VectorX HybridSpace::x_from_raw(const Vector& raw) const {
  if (raw.size() != static_cast<Eigen::Index>(points())) throw Error(ErrorKind::DimensionMismatch, "H_X vector length");
  return {raw.cwiseProduct(root_masses_.cast<Complex>())};
}

Vector HybridSpace::x_to_raw(const VectorX& v) const {
  if (v.coefficients.size() != static_cast<Eigen::Index>(points())) {
    throw Error(ErrorKind::DimensionMismatch, "H_X vector length");
  }
  return v.coefficients.cwiseQuotient(root_masses_.cast<Complex>());
}

HybridVector HybridSpace::from_raw(const Vector& raw) const {
  if (raw.size() != static_cast<Eigen::Index>(dimension())) {
    throw Error(ErrorKind::DimensionMismatch, "hybrid vector length");
  }
  HybridVector v{raw, group_order(), points()};
  for (std::size_t g = 0; g < group_order(); ++g) v.block(g) = v.block(g).cwiseProduct(root_masses_.cast<Complex>());
  return v;
}

Vector HybridSpace::to_raw(const HybridVector& v) const {
  if (v.coefficients.size() != static_cast<Eigen::Index>(dimension())) {
    throw Error(ErrorKind::DimensionMismatch, "hybrid vector length");
  }
  Vector raw = v.coefficients;
  for (std::size_t g = 0; g < group_order(); ++g) {
    auto seg = raw.segment(index(g, 0), static_cast<Eigen::Index>(points()));
    seg = seg.cwiseQuotient(root_masses_.cast<Complex>());
  }
  return raw;
}

HybridVector HybridSpace::zero() const { return {Vector::Zero(static_cast<Eigen::Index>(dimension())), group_order(), points()}; }

Matrix HybridSpace::x_operator_to_raw(const Matrix& internal) const {
  const RealVector inv = root_masses_.cwiseInverse();
  return inv.cast<Complex>().asDiagonal() * internal * root_masses_.cast<Complex>().asDiagonal();
}

Matrix HybridSpace::hybrid_operator_to_raw(const Matrix& internal) const {
  const RealVector roots = root_masses_.replicate(static_cast<Eigen::Index>(group_order()), 1);
  const RealVector inv = roots.cwiseInverse();
  return inv.cast<Complex>().asDiagonal() * internal * roots.cast<Complex>().asDiagonal();
}

HybridVector HybridSpace::trace_vector() const {
  HybridVector omega = zero();
  omega.block(FiniteGroup::identity()) = root_masses_.cast<Complex>();
  return omega;
}

Complex inner_product(const HybridVector& v1, const HybridVector& v2) {
  if (v1.group_order != v2.group_order || v1.points != v2.points ||
      v1.coefficients.size() != v2.coefficients.size()) {
    throw Error(ErrorKind::DimensionMismatch, "hybrid vectors over different spaces");
  }
  return v1.coefficients.dot(v2.coefficients);
}

Complex inner_product(const VectorX& v1, const VectorX& v2) {
  if (v1.coefficients.size() != v2.coefficients.size()) throw Error(ErrorKind::DimensionMismatch, "H_X vectors");
  return v1.coefficients.dot(v2.coefficients);
}

HybridVector tensor(const VectorX& fx, const VectorG& fg) {
  const auto nx = static_cast<std::size_t>(fx.coefficients.size());
  const auto ng = static_cast<std::size_t>(fg.coefficients.size());
  HybridVector v{Vector(static_cast<Eigen::Index>(nx * ng)), ng, nx};
  for (std::size_t g = 0; g < ng; ++g) v.block(g) = fg.coefficients[static_cast<Eigen::Index>(g)] * fx.coefficients;
  return v;
}

}  // namespace vnlab
