#ifndef VNLAB_LINALG_HPP
#define VNLAB_LINALG_HPP

#include <random>

#include "vnlab/types.hpp"

namespace vnlab {

using Rng = std::mt19937_64;

/// Largest absolute entry; the residual norm used throughout for identities.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

template <typename A, typename B>
Matrix commutator(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  return a * b - b * a;
}

template <typename Derived>
bool is_self_adjoint(const Eigen::MatrixBase<Derived>& m, double tol) {
  return m.rows() == m.cols() && max_abs(m - m.adjoint()) <= tol * std::max(1.0, max_abs(m));
}

template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived>& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const auto id = Matrix::Identity(m.rows(), m.cols());
  return max_abs(m.adjoint() * m - id) <= tol && max_abs(m * m.adjoint() - id) <= tol;
}

template <typename Derived>
bool is_projector(const Eigen::MatrixBase<Derived>& m, double tol) {
  return is_self_adjoint(m, tol) && max_abs(m * m - m) <= tol;
}

template <typename Derived>
bool is_normal(const Eigen::MatrixBase<Derived>& m, double tol) {
  return max_abs(m * m.adjoint() - m.adjoint() * m) <= tol * std::max(1.0, max_abs(m) * max_abs(m));
}

/// Rounds the spectrum of a near-projector to {0, 1}. Throws NotAProjector if
/// `m` is not self-adjoint or an eigenvalue is farther than `snap` from both.
Matrix snap_projector(const Matrix& m, double snap);

/// Rank of a projector, read from its trace.
std::size_t projector_rank(const Matrix& p);

/// Orthonormal basis of the column span, with rank decided by sigma > eps * sigma_max.
Matrix orthonormal_range(const Matrix& columns, double eps);

/// Orthogonal projector onto the column span of `columns`.
Matrix range_projector(const Matrix& columns, double eps);

/// Numerical rank with the library-wide singular-value threshold.
std::size_t numerical_rank(const Matrix& m, double eps);

Vector random_vector(Eigen::Index n, Rng& rng);
Matrix random_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng);
Matrix random_hermitian(Eigen::Index n, Rng& rng);
/// Haar-distributed unitary via QR of a complex Gaussian matrix.
Matrix random_unitary(Eigen::Index n, Rng& rng);
/// Projector of the given rank onto a Haar-random subspace.
Matrix random_projector(Eigen::Index n, Eigen::Index rank, Rng& rng);

}  // namespace vnlab

#endif  // VNLAB_LINALG_HPP
