#ifndef VNLAB_MEASUREMENT_HPP
#define VNLAB_MEASUREMENT_HPP

#include <vector>

#include "vnlab/crossed_product.hpp"

namespace vnlab {

// ---- pointer model on C^N (x) C^N, basis |n, m> at index n * N + m

/// U = sum_n P_n (x) T^n with T|m> = |m + 1 mod N>.
Matrix entangler(std::size_t n);

struct MeasurementScenario {
  std::size_t n = 1;
  std::vector<double> weights;  // w_n >= 0, sum 1

  /// Throws InvalidStructure (size, sign) or NotNormalized (sum off by > 1e-12).
  void validate() const;
};

struct EntangledState {
  Vector state;     // U (sum_n sqrt(w_n) |n> (x) |0>)
  Vector expected;  // sum_n sqrt(w_n) |n> (x) |n>
  double residual = 0.0;
};

EntangledState entangle(const MeasurementScenario& s);

struct SchmidtDecomposition {
  RealVector weights;  // descending, sum 1
  Matrix left;         // columns |alpha_i>
  Matrix right;        // columns |alpha'_i>
  double residual = 0.0;
};

/// Coefficients c(i, j) = state[i * right_dim + j]. Throws NotNormalized when
/// ||state|| is off by more than 1e-8.
SchmidtDecomposition schmidt(const Vector& state, Eigen::Index left_dim, Eigen::Index right_dim);

// ---- expectation values on the hybrid space

/// <Omega|A|Omega> in stored coordinates.
Complex expectation(const HybridVector& omega, const Matrix& a);

// The three routes below take the state as raw coefficients f(g_i, x) and
// evaluate the corresponding integral over X as a mu-weighted sum.

/// sum_ij int f*(g_i; x) (A_{g_i}^{g_j} f(g_j))(x) dmu with the blocks of A in raw coordinates.
Complex expectation_blocks(const HybridSpace& hs, const Vector& raw, const Matrix& a);
/// Element of F given by alpha, including the sqrt Radon-Nikodym weight.
Complex expectation_alpha_F(const HybridSpace& hs, const Vector& raw, const AlphaFunction& alpha);
/// Element of F' given by alpha.
Complex expectation_alpha_Fprime(const HybridSpace& hs, const Vector& raw, const AlphaFunction& alpha);

struct DensityRecord {
  std::vector<Matrix> w;  // w[x](i, j) = f*(g_i; g_i x) f(g_j; g_j x)
  RealVector density;     // w(x) = sum_i |f(g_i, x)|^2
};

/// Throws NotNormalized for non-unit states.
DensityRecord density_matrix(const HybridSpace& hs, const Vector& raw);
/// int w(x) phi(x) dmu = <Omega|Lbar_phi|Omega>.
Complex density_expectation(const HybridSpace& hs, const DensityRecord& d, const Vector& phi);
/// sum_ij int w_ij(x) alpha(g_i g_j^-1; g_i x) dmu. Invariant measures only.
Complex density_expectation(const HybridSpace& hs, const DensityRecord& d, const AlphaFunction& alpha);

struct TracialReport {
  std::size_t pairs = 0;
  std::uint64_t seed = 0;
  double commutator_residual = 0.0;  // max |<AB> - <BA>|
  double trace_residual = 0.0;       // max |<A> - Tr(A)/n|
  double unitary_residual = 0.0;     // max |<U A U^dagger> - <A>|
  double skewed_violation = 0.0;     // max |<AB> - <BA>| on a perturbed vector
};

/// Checks that Omega = 1 (x) |1> is a trace on F. Throws NotFiniteNormalized
/// unless mu(X) = 1 and NonInvariantMeasure for weighted actions.
TracialReport tracial_check(const CrossedProduct& cp, std::size_t pairs, std::uint64_t seed);

struct CorrelatedPair {
  Matrix a;        // Lbar_spectrum
  Matrix a_prime;  // Lbar'_spectrum
};

/// alpha(g; x) = spectrum(x) delta_{g,1} on both sides. Throws NonInvariantMeasure.
CorrelatedPair correlated_pair(const HybridSpace& hs, const RealVector& spectrum);

/// (Psi + Qbar Psi) normalised for a random Psi: the states on which both
/// members of a correlated pair share mean and variance.
HybridVector q_symmetric_state(const CrossedProduct& cp, Rng& rng);
HybridVector random_state(const HybridSpace& hs, Rng& rng);

struct CorrelationReport {
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double mean_residual = 0.0;           // max over symmetric states
  double second_moment_residual = 0.0;  // max over symmetric states
  double generic_mean_gap = 0.0;        // max over unconstrained states
  double commutator = 0.0;              // max |[A, A']|
};

CorrelationReport correlation_check(const CrossedProduct& cp, const RealVector& spectrum, std::size_t samples,
                                    std::uint64_t seed);

/// Experimental extension: W = sum_x Pbar_{x} (1 (x) L_{g_x}) with g_x x_0 = x.
/// Requires a free transitive action on the support; maps delta_x (x) |1> to
/// delta_x (x) |g_x>, so a superposition over x becomes correlated with the
/// group register. For Z_N rotating N points it is the pointer entangler with
/// the tensor factors swapped.
Matrix crossed_entangler(const HybridSpace& hs);

}  // namespace vnlab

#endif  // VNLAB_MEASUREMENT_HPP
