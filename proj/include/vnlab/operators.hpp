#ifndef VNLAB_OPERATORS_HPP
#define VNLAB_OPERATORS_HPP

#include "vnlab/hybrid.hpp"
#include "vnlab/linalg.hpp"

namespace vnlab {

// Every factory returns the matrix in stored (measure-orthonormal) coordinates.
// Functions on X are given over the positive-mass points of the HybridSpace.

enum class Side { Left, Right };
enum class AlgebraSide { F, Fprime };
enum class SpaceTag { X, G, Hybrid };

// ---- operators on H_X

/// Multiplication operator (L_phi f)(x) = phi(x) f(x).
Matrix make_L(const HybridSpace& hs, const Vector& phi);
/// Projector P_S = L_{chi_S}.
Matrix make_P(const HybridSpace& hs, const Subset& s);
/// Unitary V_lambda = L_{exp(i lambda)} for a real function lambda.
Matrix make_V(const HybridSpace& hs, const RealVector& lambda);
/// (U_g f)(x) = f(gx) sqrt(mu(gx)/mu(x)) in raw coordinates; a permutation here.
Matrix make_U(const HybridSpace& hs, std::size_t g);

// ---- operators on H_G

Matrix make_regular(const FiniteGroup& group, Side side, std::size_t g);
/// Inversion Q|g> = |g^-1>.
Matrix make_Q(const FiniteGroup& group);
Matrix make_Pg(const FiniteGroup& group, std::size_t g);
/// Inversor Q_g = |g^-1><g|.
Matrix make_Qg(const FiniteGroup& group, std::size_t g);

// ---- operators on the hybrid space H = H_X (x) H_G

Matrix lbar(const HybridSpace& hs, const Vector& phi);
/// Ubar_g = U_g (x) L_{g^-1}: f(g_i, x) -> f(g g_i, g x).
Matrix ubar(const HybridSpace& hs, std::size_t g);
Matrix pbar(const HybridSpace& hs, const Subset& s);
/// Lbar'_phi: f(g_i, x) -> phi(g_i^-1 x) f(g_i, x).
Matrix lbar_prime(const HybridSpace& hs, const Vector& phi);
/// Ubar'_g = 1 (x) R_g: f(g_i, x) -> f(g_i g^-1, x).
Matrix ubar_prime(const HybridSpace& hs, std::size_t g);
Matrix pbar_prime(const HybridSpace& hs, const Subset& s);
/// Qbar: f(g_i, x) -> f(g_i^-1, g_i^-1 x) with the square-root Radon-Nikodym weight.
Matrix qbar(const HybridSpace& hs);

/// The (g_i, g_j) block of a hybrid operator, an operator of H_X.
inline auto block(const Matrix& a, const HybridSpace& hs, std::size_t gi, std::size_t gj) {
  const auto n = static_cast<Eigen::Index>(hs.points());
  return a.block(static_cast<Eigen::Index>(gi) * n, static_cast<Eigen::Index>(gj) * n, n, n);
}

/// alpha(g_i; x): one complex function on X per group element (rows = elements).
struct AlphaFunction {
  Matrix values;

  Complex operator()(std::size_t g, std::size_t x) const {
    return values(static_cast<Eigen::Index>(g), static_cast<Eigen::Index>(x));
  }
  Complex& operator()(std::size_t g, std::size_t x) {
    return values(static_cast<Eigen::Index>(g), static_cast<Eigen::Index>(x));
  }
};

AlphaFunction zero_alpha(const HybridSpace& hs);
AlphaFunction random_alpha(const HybridSpace& hs, Rng& rng);

/// F side: blocks L_{alpha(g_i g_j^-1; x)} U_{g_j g_i^-1}.
/// F' side: blocks L_{alpha(g_i^-1 g_j; g_i^-1 x)}.
Matrix from_alpha(const HybridSpace& hs, const AlphaFunction& alpha, AlgebraSide side);

/// Reads alpha off A|Omega> for an operator of the F side. The caller is
/// responsible for membership; see CrossedProduct::to_alpha for the checked form.
AlphaFunction alpha_of(const HybridSpace& hs, const Matrix& a);

/// (alpha . beta)(g_i; x) = sum_j alpha(g_j; x) beta(g_j^-1 g_i; g_j^-1 x).
/// Throws NonInvariantMeasure on weighted actions.
AlphaFunction alpha_product(const HybridSpace& hs, const AlphaFunction& alpha, const AlphaFunction& beta);
/// alpha^dagger(g_i; x) = conj(alpha(g_i^-1; g_i^-1 x)).
AlphaFunction alpha_adjoint(const HybridSpace& hs, const AlphaFunction& alpha);
bool is_hermitian_alpha(const HybridSpace& hs, const AlphaFunction& alpha, double tol);

}  // namespace vnlab

#endif  // VNLAB_OPERATORS_HPP
