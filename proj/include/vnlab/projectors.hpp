#ifndef VNLAB_PROJECTORS_HPP
#define VNLAB_PROJECTORS_HPP

#include <optional>
#include <vector>

#include "vnlab/crossed_product.hpp"

namespace vnlab {

/// Square root of a positive semidefinite matrix via its eigendecomposition.
/// Throws NotSelfAdjoint or NotPSD (eigenvalue below -tol * ||B||).
Matrix sqrt_psd(const Matrix& b, double tol = 1e-10);

/// Square root from the binomial series sqrt(s) sum_k binom(1/2, k) (B/s - I)^k,
/// summed until a term drops below `term_tol` in norm. s = ||B||_F puts the
/// spectrum of B/s - I in [-1, 0): convergence is geometric for positive definite
/// B, only algebraic for singular B, which may hit `max_terms` (NumericalFailure).
Matrix sqrt_psd_series(const Matrix& b, double term_tol = 1e-14, int max_terms = 200000);

struct PartialIsometry {
  Matrix op;
  Matrix initial;  // op^dagger op
  Matrix final;    // op op^dagger
};

/// Wraps `u` after checking U U^dagger U = U. Throws NumericalFailure otherwise.
PartialIsometry make_partial_isometry(const Matrix& u, double tol = 1e-10);

/// Sum of two partial isometries with orthogonal initial and orthogonal final
/// projectors. Throws InvalidStructure when the spaces overlap.
PartialIsometry orthogonal_sum(const PartialIsometry& a, const PartialIsometry& b, double tol = 1e-10);

struct Polar {
  PartialIsometry u;
  Matrix modulus;  // |A| = (A^dagger A)^{1/2}
};

/// A = U |A| with U partially isometric from the closure of ran|A| onto ran A.
Polar polar(const Matrix& a, double eps = 1e-10);

/// A factor isomorphic to M_m (x) 1_k on C^{m k}.
class Factor {
 public:
  /// Throws NotAFactor when the center is larger than the scalars.
  static Factor from(const VNAlgebra& alg);

  const VNAlgebra& algebra() const { return alg_; }
  /// m: the factor is a copy of M_m.
  Eigen::Index degree() const { return degree_; }
  /// k: each minimal projector has rank k.
  Eigen::Index multiplicity() const { return multiplicity_; }

 private:
  Factor(VNAlgebra alg, Eigen::Index degree, Eigen::Index multiplicity)
      : alg_(std::move(alg)), degree_(degree), multiplicity_(multiplicity) {}
  VNAlgebra alg_;
  Eigen::Index degree_;
  Eigen::Index multiplicity_;
};

struct Segment {
  Matrix delta_p1;
  Matrix delta_p2;
  PartialIsometry u;
  Eigen::Index bridge_index = 0;  // basis element used as the bridge
};

/// Equivalent sub-projectors of P1 and P2 joined by a partial isometry of the
/// algebra. Returns nullopt when either projector is zero. Throws NoBridge when
/// P2 A P1 vanishes for every basis element A, NotInAlgebra for foreign inputs.
std::optional<Segment> local_comparability(const Factor& f, const Matrix& p1, const Matrix& p2);

enum class Order { Precedes, Succeeds, Equivalent };
std::string_view to_string(Order o);

struct Comparison {
  Order order = Order::Equivalent;
  /// Orthogonal sum of all segments: initial projector <= P1, final <= P2,
  /// with equality on the side(s) that were exhausted.
  PartialIsometry witness;
  std::vector<Eigen::Index> segment_ranks;
};

/// Murray-von Neumann comparison by exhausting P1 and P2 with segments.
Comparison compare(const Factor& f, const Matrix& p1, const Matrix& p2);

enum class Normalization { UnitMinimal, UnitTotal };
std::string_view to_string(Normalization n);

/// D(P) = Tr(P) / k (unit-minimal) or Tr(P) / n (unit-total).
double dimension(const Factor& f, const Matrix& p, Normalization norm);
/// The same, exactly: rank(P) / k or rank(P) / n.
Fraction exact_dimension(const Factor& f, const Matrix& p, Normalization norm);

/// D(P) = c * sum_x chi(1; x) mu(x) with chi(1; .) the identity component of
/// P's alpha function; c = 1 / (smallest mass) or 1 / mu(X).
double spectral_dimension(const CrossedProduct& cp, const Matrix& p, Normalization norm);

/// {x : chi(1; x) > 1/2} on the support. Throws NotAProjector for non-projectors
/// and NonBooleanDiagonal when chi(1; .) is not close to an indicator function,
/// which happens for every projector that is not diagonal in x.
Subset spectral_set(const CrossedProduct& cp, const Matrix& p);

struct CyclicProjectors {
  Matrix p;        // onto span{A' f}, an element of the algebra
  Matrix p_prime;  // onto span{A f}, an element of the commutant
};

/// Throws NumericalFailure if either projector misses its algebra.
CyclicProjectors cyclic_projectors(const VNAlgebra& alg, const VNAlgebra& commutant_alg, const Vector& f);

struct SpectralFamily {
  std::vector<double> breakpoints;
  std::vector<Matrix> projectors;  // E(alpha): spectral projector for eigenvalues <= alpha
};

/// Uniform grid k / resolution, k = 0..resolution. `a` must lie in `alg`, be
/// self-adjoint (NotSelfAdjoint) and have its spectrum in [0, 1] (InvalidStructure).
SpectralFamily spectral_family(const VNAlgebra& alg, const Matrix& a, int resolution);
/// Breakpoints at the distinct eigenvalues.
SpectralFamily spectral_family_at_eigenvalues(const VNAlgebra& alg, const Matrix& a);
/// sum_k alpha_k <v|E(alpha_k) - E(alpha_{k-1})|v>.
double stieltjes_mean(const SpectralFamily& family, const Vector& v);

/// Spectral projector of a random self-adjoint element of `alg`, cut at a
/// random gap of its spectrum (never 0 or I unless the algebra is trivial).
Matrix random_projector(const VNAlgebra& alg, Rng& rng);

/// A leaves ran P invariant together with A^dagger: ||(I-P) A P|| and
/// ||(I-P) A^dagger P|| both within tol; equivalent to [A, P] = 0.
bool commutes_with_projector(const Matrix& a, const Matrix& p, double tol = 1e-10);

}  // namespace vnlab

#endif  // VNLAB_PROJECTORS_HPP
