#include "vnlab/crossed_product.hpp"

namespace vnlab {
namespace {

VNAlgebra build(const HybridSpace& hs, const Vector& phi, bool primed, const Tolerances& tol) {
  std::vector<Matrix> gens{primed ? lbar_prime(hs, phi) : lbar(hs, phi)};
  for (auto g : hs.group().generators()) gens.push_back(primed ? ubar_prime(hs, g) : ubar(hs, g));
  return VNAlgebra::generate(static_cast<Eigen::Index>(hs.dimension()), gens, tol);
}

}  // namespace

CrossedProduct::CrossedProduct(const GroupAction& action, const Tolerances& tol, std::size_t cap)
    : space_(action, cap),
      tol_(tol),
      f_(build(space_, separating_function(), false, tol)),
      f_prime_(build(space_, separating_function(), true, tol)),
      q_(qbar(space_)) {}

Vector CrossedProduct::separating_function() const {
  Vector phi(static_cast<Eigen::Index>(space_.points()));
  for (Eigen::Index x = 0; x < phi.size(); ++x) phi[x] = static_cast<double>(x + 1);
  return phi;
}

AlphaFunction CrossedProduct::to_alpha(const Matrix& a) const {
  if (a.rows() != static_cast<Eigen::Index>(space_.dimension()) || a.cols() != a.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "operator does not act on the hybrid space");
  }
  const double r = f_.residual(a);
  if (r > tol_.eps) throw Error(ErrorKind::NotInAlgebra, "operator lies outside F (residual " + std::to_string(r) + ")");
  return alpha_of(space_, a);
}

}  // namespace vnlab
