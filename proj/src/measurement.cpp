#include "vnlab/measurement.hpp"

#include <cmath>

namespace vnlab {
namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

void check_raw(const HybridSpace& hs, const Vector& raw) {
  if (raw.size() != idx(hs.dimension())) throw Error(ErrorKind::DimensionMismatch, "state length");
}

Complex raw_at(const HybridSpace& hs, const Vector& raw, std::size_t g, std::size_t x) { return raw[hs.index(g, x)]; }

void require_unit(double norm) {
  if (std::abs(norm - 1.0) > 1e-8) throw Error(ErrorKind::NotNormalized, "state norm " + std::to_string(norm));
}

Matrix exp_i(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h + h.adjoint()));
  Vector phases(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) phases[i] = std::polar(1.0, es.eigenvalues()[i]);
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

Matrix entangler(std::size_t n) {
  const auto dim = idx(n * n);
  Matrix u = Matrix::Zero(dim, dim);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t m = 0; m < n; ++m) u(idx(a * n + (a + m) % n), idx(a * n + m)) = 1.0;
  return u;
}

void MeasurementScenario::validate() const {
  if (n == 0) throw Error(ErrorKind::InvalidStructure, "N must be at least 1");
  if (weights.size() != n) throw Error(ErrorKind::InvalidStructure, "expected " + std::to_string(n) + " weights");
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw Error(ErrorKind::InvalidStructure, "weights must be nonnegative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw Error(ErrorKind::NotNormalized, "weights sum to " + std::to_string(sum));
}

EntangledState entangle(const MeasurementScenario& s) {
  s.validate();
  const std::size_t n = s.n;
  Vector input = Vector::Zero(idx(n * n));
  EntangledState out;
  out.expected = Vector::Zero(idx(n * n));
  for (std::size_t a = 0; a < n; ++a) {
    input[idx(a * n)] = std::sqrt(s.weights[a]);
    out.expected[idx(a * n + a)] = std::sqrt(s.weights[a]);
  }
  out.state = entangler(n) * input;
  out.residual = max_abs(out.state - out.expected);
  return out;
}

SchmidtDecomposition schmidt(const Vector& state, Eigen::Index left_dim, Eigen::Index right_dim) {
  if (state.size() != left_dim * right_dim) throw Error(ErrorKind::DimensionMismatch, "state length");
  require_unit(state.norm());
  // Row-major coefficients: c(i, j) = state[i * right_dim + j].
  const Matrix c = Eigen::Map<const Matrix>(state.data(), right_dim, left_dim).transpose();
  Eigen::JacobiSVD<Matrix> svd(c, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SchmidtDecomposition out;
  out.weights = svd.singularValues().cwiseAbs2();
  out.left = svd.matrixU();
  out.right = svd.matrixV().conjugate();
  Vector rebuilt = Vector::Zero(state.size());
  for (Eigen::Index k = 0; k < out.weights.size(); ++k) {
    const double s = svd.singularValues()[k];
    for (Eigen::Index i = 0; i < left_dim; ++i)
      for (Eigen::Index j = 0; j < right_dim; ++j) rebuilt[i * right_dim + j] += s * out.left(i, k) * out.right(j, k);
  }
  out.residual = max_abs(rebuilt - state);
  return out;
}

Complex expectation(const HybridVector& omega, const Matrix& a) {
  if (a.rows() != omega.coefficients.size() || a.cols() != a.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "operator and state sizes differ");
  }
  return omega.coefficients.dot(a * omega.coefficients);
}

Complex expectation_blocks(const HybridSpace& hs, const Vector& raw, const Matrix& a) {
  check_raw(hs, raw);
  const Matrix a_raw = hs.hybrid_operator_to_raw(a);
  const std::size_t nx = hs.points();
  Complex total = 0.0;
  for (std::size_t gi = 0; gi < hs.group_order(); ++gi) {
    for (std::size_t gj = 0; gj < hs.group_order(); ++gj) {
      const Vector image = a_raw.block(idx(gi * nx), idx(gj * nx), idx(nx), idx(nx)) * raw.segment(idx(gj * nx), idx(nx));
      for (std::size_t x = 0; x < nx; ++x) total += std::conj(raw_at(hs, raw, gi, x)) * image[idx(x)] * hs.space().mass(x);
    }
  }
  return total;
}

Complex expectation_alpha_F(const HybridSpace& hs, const Vector& raw, const AlphaFunction& alpha) {
  check_raw(hs, raw);
  const auto& group = hs.group();
  const auto& space = hs.space();
  Complex total = 0.0;
  for (std::size_t gi = 0; gi < group.order(); ++gi) {
    for (std::size_t gj = 0; gj < group.order(); ++gj) {
      const auto h = group.multiply(gj, group.inverse(gi));
      const auto k = group.multiply(gi, group.inverse(gj));
      for (std::size_t x = 0; x < hs.points(); ++x) {
        const auto hx = hs.action().act(h, x);
        const double weight = std::sqrt(space.mass(hx) / space.mass(x));
        total += std::conj(raw_at(hs, raw, gi, x)) * raw_at(hs, raw, gj, hx) * alpha(k, x) * weight * space.mass(x);
      }
    }
  }
  return total;
}

Complex expectation_alpha_Fprime(const HybridSpace& hs, const Vector& raw, const AlphaFunction& alpha) {
  check_raw(hs, raw);
  const auto& group = hs.group();
  Complex total = 0.0;
  for (std::size_t gi = 0; gi < group.order(); ++gi) {
    const auto gi_inv = group.inverse(gi);
    for (std::size_t gj = 0; gj < group.order(); ++gj) {
      const auto k = group.multiply(gi_inv, gj);
      for (std::size_t x = 0; x < hs.points(); ++x) {
        total += std::conj(raw_at(hs, raw, gi, x)) * raw_at(hs, raw, gj, x) * alpha(k, hs.action().act(gi_inv, x)) *
                 hs.space().mass(x);
      }
    }
  }
  return total;
}

DensityRecord density_matrix(const HybridSpace& hs, const Vector& raw) {
  check_raw(hs, raw);
  require_unit(hs.from_raw(raw).norm());
  const auto& group = hs.group();
  const auto ng = idx(group.order());
  DensityRecord d;
  d.density = RealVector::Zero(idx(hs.points()));
  for (std::size_t x = 0; x < hs.points(); ++x) {
    Matrix w(ng, ng);
    for (std::size_t gi = 0; gi < group.order(); ++gi)
      for (std::size_t gj = 0; gj < group.order(); ++gj)
        w(idx(gi), idx(gj)) = std::conj(raw_at(hs, raw, gi, hs.action().act(gi, x))) * raw_at(hs, raw, gj, hs.action().act(gj, x));
    d.w.push_back(std::move(w));
    for (std::size_t gi = 0; gi < group.order(); ++gi) d.density[idx(x)] += std::norm(raw_at(hs, raw, gi, x));
  }
  return d;
}

Complex density_expectation(const HybridSpace& hs, const DensityRecord& d, const Vector& phi) {
  if (phi.size() != idx(hs.points())) throw Error(ErrorKind::DimensionMismatch, "function length");
  Complex total = 0.0;
  for (std::size_t x = 0; x < hs.points(); ++x) total += d.density[idx(x)] * phi[idx(x)] * hs.space().mass(x);
  return total;
}

Complex density_expectation(const HybridSpace& hs, const DensityRecord& d, const AlphaFunction& alpha) {
  if (!is_measure_invariant(hs.action())) {
    throw Error(ErrorKind::NonInvariantMeasure, "the density double sum assumes an invariant measure");
  }
  const auto& group = hs.group();
  Complex total = 0.0;
  for (std::size_t x = 0; x < hs.points(); ++x)
    for (std::size_t gi = 0; gi < group.order(); ++gi)
      for (std::size_t gj = 0; gj < group.order(); ++gj)
        total += d.w[x](idx(gi), idx(gj)) * alpha(group.multiply(gi, group.inverse(gj)), hs.action().act(gi, x)) *
                 hs.space().mass(x);
  return total;
}

TracialReport tracial_check(const CrossedProduct& cp, std::size_t pairs, std::uint64_t seed) {
  const auto& hs = cp.space();
  if (std::abs(hs.space().total_mass() - 1.0) > 1e-12) {
    throw Error(ErrorKind::NotFiniteNormalized, "mu(X) = " + std::to_string(hs.space().total_mass()) + ", expected 1");
  }
  if (!is_measure_invariant(hs.action())) throw Error(ErrorKind::NonInvariantMeasure, "trace vector needs an invariant measure");
  Rng rng(seed);
  const HybridVector omega = hs.trace_vector();
  HybridVector skewed = omega;
  skewed.coefficients += 0.7 * random_vector(idx(hs.dimension()), rng);
  skewed.coefficients.normalize();
  const double n = static_cast<double>(hs.dimension());

  TracialReport r;
  r.pairs = pairs;
  r.seed = seed;
  for (std::size_t k = 0; k < pairs; ++k) {
    const Matrix a = cp.F().random_element(rng);
    const Matrix b = cp.F().random_element(rng);
    const Matrix u = exp_i(cp.F().random_self_adjoint(rng));
    r.commutator_residual = std::max(r.commutator_residual, std::abs(expectation(omega, a * b) - expectation(omega, b * a)));
    r.trace_residual = std::max(r.trace_residual, std::abs(expectation(omega, a) - a.trace() / n));
    r.unitary_residual =
        std::max(r.unitary_residual, std::abs(expectation(omega, u * a * u.adjoint()) - expectation(omega, a)));
    r.skewed_violation = std::max(r.skewed_violation, std::abs(expectation(skewed, a * b) - expectation(skewed, b * a)));
  }
  return r;
}

CorrelatedPair correlated_pair(const HybridSpace& hs, const RealVector& spectrum) {
  if (!is_measure_invariant(hs.action())) throw Error(ErrorKind::NonInvariantMeasure, "correlated pairs need an invariant measure");
  if (spectrum.size() != idx(hs.points())) throw Error(ErrorKind::DimensionMismatch, "spectrum length");
  AlphaFunction alpha = zero_alpha(hs);
  alpha.values.row(FiniteGroup::identity()) = spectrum.cast<Complex>().transpose();
  return {from_alpha(hs, alpha, AlgebraSide::F), from_alpha(hs, alpha, AlgebraSide::Fprime)};
}

HybridVector random_state(const HybridSpace& hs, Rng& rng) {
  HybridVector v = hs.zero();
  v.coefficients = random_vector(idx(hs.dimension()), rng).normalized();
  return v;
}

HybridVector q_symmetric_state(const CrossedProduct& cp, Rng& rng) {
  for (;;) {
    HybridVector v = random_state(cp.space(), rng);
    v.coefficients += cp.Q() * v.coefficients;
    const double norm = v.norm();
    if (norm > 1e-6) {
      v.coefficients /= norm;
      return v;
    }
  }
}

CorrelationReport correlation_check(const CrossedProduct& cp, const RealVector& spectrum, std::size_t samples,
                                    std::uint64_t seed) {
  const CorrelatedPair pair = correlated_pair(cp.space(), spectrum);
  Rng rng(seed);
  CorrelationReport r;
  r.samples = samples;
  r.seed = seed;
  r.commutator = max_abs(commutator(pair.a, pair.a_prime));
  const Matrix a2 = pair.a * pair.a;
  const Matrix b2 = pair.a_prime * pair.a_prime;
  for (std::size_t k = 0; k < samples; ++k) {
    const HybridVector s = q_symmetric_state(cp, rng);
    r.mean_residual = std::max(r.mean_residual, std::abs(expectation(s, pair.a) - expectation(s, pair.a_prime)));
    r.second_moment_residual = std::max(r.second_moment_residual, std::abs(expectation(s, a2) - expectation(s, b2)));
    const HybridVector g = random_state(cp.space(), rng);
    r.generic_mean_gap = std::max(r.generic_mean_gap, std::abs(expectation(g, pair.a) - expectation(g, pair.a_prime)));
  }
  return r;
}

Matrix crossed_entangler(const HybridSpace& hs) {
  const auto& action = hs.action();
  if (!is_free(action) || !is_ergodic(action)) {
    throw Error(ErrorKind::NotFreeOrErgodic, "crossed entangler needs a free transitive action");
  }
  const auto& group = hs.group();
  // g_x: the unique element carrying point 0 to x.
  std::vector<std::size_t> carrier(hs.points());
  for (std::size_t g = 0; g < group.order(); ++g) carrier[action.act(g, 0)] = g;
  const auto dim = idx(hs.dimension());
  Matrix w = Matrix::Zero(dim, dim);
  for (std::size_t x = 0; x < hs.points(); ++x)
    for (std::size_t gi = 0; gi < group.order(); ++gi) w(hs.index(group.multiply(carrier[x], gi), x), hs.index(gi, x)) = 1.0;
  return w;
}

}  // namespace vnlab
