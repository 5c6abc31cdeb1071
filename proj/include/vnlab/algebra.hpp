#ifndef VNLAB_ALGEBRA_HPP
#define VNLAB_ALGEBRA_HPP

#include <vector>

#include "vnlab/linalg.hpp"

namespace vnlab {

/// A unital *-subalgebra of M_n, stored as a Hilbert-Schmidt orthonormal basis.
///
/// Basis matrices are kept column-stacked as vectors of length n^2 in the
/// columns of `basis_vectors()`. In finite dimension the weak closure of a
/// *-algebra is its linear span, so every instance is a von Neumann algebra.
/// Instances are immutable once built.
class VNAlgebra {
 public:
  /// Smallest *-algebra containing `ops` and the identity. Grows the span by
  /// right-multiplying every new basis element with each generator (and the
  /// adjoint of non-normal generators) until no new direction appears or the
  /// span fills M_n. Throws DimensionMismatch on mixed sizes.
  static VNAlgebra generate(const std::vector<Matrix>& ops, const Tolerances& tol = {});
  /// generate() for operators of known size; an empty list yields the scalars.
  static VNAlgebra generate(Eigen::Index n, const std::vector<Matrix>& ops, const Tolerances& tol = {});

  static VNAlgebra scalars(Eigen::Index n, const Tolerances& tol = {});
  static VNAlgebra full(Eigen::Index n, const Tolerances& tol = {});
  /// Wraps a span that the caller knows to be a *-algebra. `basis` columns must
  /// be orthonormal vec'd n x n matrices.
  static VNAlgebra from_orthonormal_basis(Eigen::Index n, Matrix basis, std::vector<Matrix> generators,
                                         const Tolerances& tol = {});

  Eigen::Index ambient_dimension() const { return n_; }
  Eigen::Index dimension() const { return basis_.cols(); }
  const Matrix& basis_vectors() const { return basis_; }
  Matrix basis_element(Eigen::Index k) const;
  std::vector<Matrix> basis_elements() const;
  /// Operators the algebra was generated from; empty when built from a span.
  const std::vector<Matrix>& generators() const { return generators_; }
  /// Generators when known, otherwise the basis.
  std::vector<Matrix> generating_set() const;
  const Tolerances& tolerances() const { return tol_; }

  Matrix project(const Matrix& op) const;
  /// ||op - project(op)||_F / ||op||_F (0 for the zero operator).
  double residual(const Matrix& op) const;
  bool contains(const Matrix& op) const { return residual(op) <= tol_.eps; }

  /// W A W^dagger for a unitary W.
  VNAlgebra conjugated(const Matrix& unitary) const;

  Matrix random_element(Rng& rng) const;
  Matrix random_self_adjoint(Rng& rng) const;

 private:
  VNAlgebra(Eigen::Index n, Matrix basis, std::vector<Matrix> generators, Tolerances tol)
      : n_(n), basis_(std::move(basis)), generators_(std::move(generators)), tol_(tol) {}

  Eigen::Index n_ = 0;
  Matrix basis_;
  std::vector<Matrix> generators_;
  Tolerances tol_;
};

/// All X with [X, A] = 0 for every A in the algebra, solved as the nullspace of
/// the stacked maps X -> G X - X G over the generating set.
VNAlgebra commutant(const VNAlgebra& alg);

/// Mutual containment at tolerance.
bool span_equal(const VNAlgebra& a, const VNAlgebra& b);
/// Largest basis residual of `a` against `b` and vice versa.
double span_distance(const VNAlgebra& a, const VNAlgebra& b);

bool bicommutant_check(const VNAlgebra& alg);
/// Intersection of the two spans.
VNAlgebra meet(const VNAlgebra& a, const VNAlgebra& b);
/// Algebra generated by both.
VNAlgebra join(const VNAlgebra& a, const VNAlgebra& b);
VNAlgebra center(const VNAlgebra& alg);
bool is_factor(const VNAlgebra& alg);
bool is_abelian(const VNAlgebra& alg);
/// alg' == alg. Throws NotAbelian for non-commutative input.
bool is_maximal_abelian(const VNAlgebra& alg);
inline bool contains(const VNAlgebra& alg, const Matrix& op) { return alg.contains(op); }

struct AlgebraReport {
  Eigen::Index ambient_dimension = 0;
  Eigen::Index dimension = 0;
  Eigen::Index center_dimension = 0;
  bool is_factor = false;
  std::string generator_hash;
};

AlgebraReport describe(const VNAlgebra& alg);
/// Stable hex digest of the generator entries (rounded to 12 significant digits).
std::string generator_hash(const std::vector<Matrix>& ops);

}  // namespace vnlab

#endif  // VNLAB_ALGEBRA_HPP
