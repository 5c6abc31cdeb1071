#include "vnlab/algebra.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

namespace vnlab {
namespace {

constexpr Eigen::Index kCandidateChunk = 64;
constexpr std::size_t kMaxDirectConstraints = 24;

Eigen::Map<const Vector> vec(const Matrix& m) { return {m.data(), m.size()}; }

Matrix unvec(const Eigen::Ref<const Vector>& v, Eigen::Index n) { return Eigen::Map<const Matrix>(v.data(), n, n); }

bool is_scalar_multiple_of_identity(const Matrix& m, double tol) {
  const Complex c = m.trace() / static_cast<double>(m.rows());
  return max_abs(m - c * Matrix::Identity(m.rows(), m.cols())) <= tol * std::max(1.0, max_abs(m));
}

// Incremental span builder used by generate() and join(). Candidates are
// buffered, then orthogonalised against the current basis in blocks; every
// accepted direction is queued so the caller can multiply it further.
class SpanBuilder {
 public:
  SpanBuilder(Eigen::Index n, double eps) : n_(n), eps_(eps), basis_(n * n, 0), chunk_(n * n, kCandidateChunk) {}

  bool full() const { return basis_.cols() >= n_ * n_; }

  /// `scale` bounds the norm `m` would have without cancellation, e.g.
  /// ||a|| ||b|| for a product ab; rounding residue below eps * scale is dropped.
  void offer(const Matrix& m, double scale) {
    if (full()) return;
    const double norm = m.norm();
    if (norm == 0.0 || norm <= eps_ * scale) return;
    chunk_.col(filled_++) = vec(m) / norm;
    if (filled_ == kCandidateChunk) flush();
  }

  void flush() {
    if (filled_ == 0 || full()) {
      filled_ = 0;
      return;
    }
    Matrix candidates = chunk_.leftCols(filled_);
    filled_ = 0;
    if (basis_.cols() > 0) candidates.noalias() -= basis_ * (basis_.adjoint() * candidates);
    Eigen::ColPivHouseholderQR<Matrix> qr(candidates);
    const auto& r = qr.matrixR();
    Eigen::Index rank = 0;
    const Eigen::Index diag = std::min(r.rows(), r.cols());
    while (rank < diag && std::abs(r(rank, rank)) > eps_) ++rank;
    if (rank == 0) return;
    Matrix fresh = qr.householderQ() * Matrix::Identity(candidates.rows(), rank);
    // Second Gram-Schmidt pass, on the accepted directions only.
    if (basis_.cols() > 0) fresh.noalias() -= basis_ * (basis_.adjoint() * fresh);
    fresh = orthonormal_range(fresh, 1e-12);
    const Eigen::Index old = basis_.cols();
    basis_.conservativeResize(Eigen::NoChange, old + fresh.cols());
    basis_.rightCols(fresh.cols()) = fresh;
    for (Eigen::Index j = 0; j < fresh.cols(); ++j) pending_.push_back(unvec(fresh.col(j), n_));
  }

  std::vector<Matrix> take_pending() { return std::exchange(pending_, {}); }
  Matrix release() { return std::move(basis_); }

 private:
  Eigen::Index n_;
  double eps_;
  Matrix basis_;
  Matrix chunk_;
  Eigen::Index filled_ = 0;
  std::vector<Matrix> pending_;
};

// Multiplies queued basis elements by the multipliers until nothing new
// appears. Each round adds at least one dimension, so n^2 rounds bound it.
Matrix close_span(SpanBuilder& builder, const std::vector<Matrix>& multipliers, Eigen::Index n) {
  builder.flush();
  std::vector<Matrix> frontier = builder.take_pending();
  for (Eigen::Index round = 0; round < n * n && !frontier.empty() && !builder.full(); ++round) {
    for (const auto& f : frontier)
      for (const auto& s : multipliers) builder.offer(f * s, f.norm() * s.norm());
    builder.flush();
    frontier = builder.take_pending();
  }
  return builder.release();
}

std::vector<Matrix> closure_multipliers(const std::vector<Matrix>& ops, double eps) {
  std::vector<Matrix> out;
  for (const auto& op : ops) {
    if (max_abs(op) == 0.0 || is_scalar_multiple_of_identity(op, eps)) continue;
    out.push_back(op);
    // A normal matrix has its adjoint as a polynomial in itself.
    if (!is_normal(op, eps)) out.push_back(op.adjoint());
  }
  return out;
}

// Orthonormal basis of the commutant of the Hermitian `h`: matrices that are
// block diagonal in its eigenbasis, grouped by clusters of equal eigenvalues.
struct EigenBlocks {
  Matrix vectors;                                   // eigenbasis of h
  std::vector<std::pair<Eigen::Index, Eigen::Index>> clusters;  // (start, size)
  Eigen::Index unknowns = 0;
};

EigenBlocks eigen_blocks(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const RealVector& lambda = es.eigenvalues();
  const double scale = std::max(1.0, lambda.cwiseAbs().maxCoeff());
  EigenBlocks out{es.eigenvectors(), {}, 0};
  Eigen::Index start = 0;
  for (Eigen::Index i = 1; i <= lambda.size(); ++i) {
    if (i == lambda.size() || lambda[i] - lambda[i - 1] > 1e-6 * scale) {
      out.clusters.emplace_back(start, i - start);
      out.unknowns += (i - start) * (i - start);
      start = i;
    }
  }
  return out;
}

// Columns: vec of [s~, E_ab] for each matrix unit E_ab inside a cluster, with
// s~ = V^dagger s V. Column order matches unknown_matrix() below.
Matrix constraint_columns(const Matrix& s_tilde, const EigenBlocks& blocks) {
  const Eigen::Index n = s_tilde.rows();
  Matrix cols = Matrix::Zero(n * n, blocks.unknowns);
  Eigen::Index col = 0;
  for (const auto& [start, size] : blocks.clusters) {
    for (Eigen::Index b = start; b < start + size; ++b) {
      for (Eigen::Index a = start; a < start + size; ++a, ++col) {
        // (s E_ab)_{ij} = s_{ia} [j == b];  (E_ab s)_{ij} = [i == a] s_{bj}.
        auto c = cols.col(col);
        c.segment(b * n, n) += s_tilde.col(a);
        for (Eigen::Index j = 0; j < n; ++j) c[j * n + a] -= s_tilde(b, j);
      }
    }
  }
  return cols;
}

Matrix unknown_matrix(const Vector& coeffs, const EigenBlocks& blocks, Eigen::Index n) {
  Matrix x = Matrix::Zero(n, n);
  Eigen::Index col = 0;
  for (const auto& [start, size] : blocks.clusters)
    for (Eigen::Index b = start; b < start + size; ++b)
      for (Eigen::Index a = start; a < start + size; ++a, ++col) x(a, b) = coeffs[col];
  return blocks.vectors * x * blocks.vectors.adjoint();
}

Matrix solve_commutant(const EigenBlocks& blocks, const std::vector<Matrix>& constraints, Eigen::Index n,
                       double eps) {
  const Eigen::Index k = blocks.unknowns;
  std::vector<Matrix> columns;
  Matrix gram = Matrix::Zero(k, k);
  // Scale from the constraints themselves: a Gram matrix of pure rounding
  // noise must not set its own cutoff.
  double scale2 = 1.0;
  for (const auto& s : constraints) {
    scale2 = std::max(scale2, s.squaredNorm());
    const Matrix s_tilde = blocks.vectors.adjoint() * s * blocks.vectors;
    columns.push_back(constraint_columns(s_tilde, blocks));
    gram.noalias() += columns.back().adjoint() * columns.back();
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram);
  const RealVector& lambda = es.eigenvalues();
  const double lambda_max = std::max({lambda.size() > 0 ? lambda.maxCoeff() : 0.0, scale2});
  const double sigma_max = std::sqrt(lambda_max);
  std::vector<Eigen::Index> accepted;
  for (Eigen::Index i = 0; i < k; ++i) {
    if (lambda[i] > 1e-8 * lambda_max) break;
    // The Gram spectrum squares singular values; decide rank on the direct residual.
    double residual2 = 0.0;
    const Vector v = es.eigenvectors().col(i);
    for (const auto& c : columns) residual2 += (c * v).squaredNorm();
    if (std::sqrt(residual2) <= eps * std::max(sigma_max, 1.0)) accepted.push_back(i);
  }
  Matrix basis(n * n, static_cast<Eigen::Index>(accepted.size()));
  for (std::size_t j = 0; j < accepted.size(); ++j) {
    const Matrix x = unknown_matrix(es.eigenvectors().col(accepted[j]), blocks, n);
    basis.col(static_cast<Eigen::Index>(j)) = vec(x);
  }
  return basis;
}

}  // namespace

// ---------------------------------------------------------------- VNAlgebra

VNAlgebra VNAlgebra::generate(const std::vector<Matrix>& ops, const Tolerances& tol) {
  if (ops.empty()) throw Error(ErrorKind::DimensionMismatch, "cannot infer the ambient dimension of an empty list");
  return generate(ops.front().rows(), ops, tol);
}

VNAlgebra VNAlgebra::generate(Eigen::Index n, const std::vector<Matrix>& ops, const Tolerances& tol) {
  for (const auto& op : ops) {
    if (op.rows() != n || op.cols() != n) throw Error(ErrorKind::DimensionMismatch, "generators of different sizes");
  }
  SpanBuilder builder(n, tol.eps);
  builder.offer(Matrix::Identity(n, n), 1.0);
  Matrix basis = close_span(builder, closure_multipliers(ops, tol.eps), n);
  return VNAlgebra(n, std::move(basis), ops, tol);
}

VNAlgebra VNAlgebra::scalars(Eigen::Index n, const Tolerances& tol) { return generate(n, {}, tol); }

VNAlgebra VNAlgebra::full(Eigen::Index n, const Tolerances& tol) {
  Matrix basis = Matrix::Identity(n * n, n * n);
  std::vector<Matrix> gens;
  for (Eigen::Index k = 0; k < n * n; ++k) gens.push_back(unvec(basis.col(k), n));
  return VNAlgebra(n, std::move(basis), std::move(gens), tol);
}

VNAlgebra VNAlgebra::from_orthonormal_basis(Eigen::Index n, Matrix basis, std::vector<Matrix> generators,
                                            const Tolerances& tol) {
  if (basis.rows() != n * n) throw Error(ErrorKind::DimensionMismatch, "basis vectors must have length n^2");
  return VNAlgebra(n, std::move(basis), std::move(generators), tol);
}

Matrix VNAlgebra::basis_element(Eigen::Index k) const { return unvec(basis_.col(k), n_); }

std::vector<Matrix> VNAlgebra::basis_elements() const {
  std::vector<Matrix> out;
  out.reserve(static_cast<std::size_t>(dimension()));
  for (Eigen::Index k = 0; k < dimension(); ++k) out.push_back(basis_element(k));
  return out;
}

std::vector<Matrix> VNAlgebra::generating_set() const { return generators_.empty() ? basis_elements() : generators_; }

Matrix VNAlgebra::project(const Matrix& op) const {
  if (op.rows() != n_ || op.cols() != n_) throw Error(ErrorKind::DimensionMismatch, "operator size");
  const Vector coeffs = basis_.adjoint() * vec(op);
  const Vector p = basis_ * coeffs;
  return unvec(p, n_);
}

double VNAlgebra::residual(const Matrix& op) const {
  const double norm = op.norm();
  if (norm == 0.0) return 0.0;
  return (op - project(op)).norm() / norm;
}

VNAlgebra VNAlgebra::conjugated(const Matrix& unitary) const {
  Matrix basis(basis_.rows(), basis_.cols());
  for (Eigen::Index k = 0; k < dimension(); ++k) {
    const Matrix b = unitary * basis_element(k) * unitary.adjoint();
    basis.col(k) = vec(b);
  }
  std::vector<Matrix> gens;
  for (const auto& g : generators_) gens.push_back(unitary * g * unitary.adjoint());
  return VNAlgebra(n_, std::move(basis), std::move(gens), tol_);
}

Matrix VNAlgebra::random_element(Rng& rng) const {
  const Vector coeffs = random_vector(dimension(), rng);
  return unvec(basis_ * coeffs, n_);
}

Matrix VNAlgebra::random_self_adjoint(Rng& rng) const {
  const Matrix a = random_element(rng);
  return 0.5 * (a + a.adjoint());
}

// ---------------------------------------------------------------- operations

VNAlgebra commutant(const VNAlgebra& alg) {
  const Eigen::Index n = alg.ambient_dimension();
  const double eps = alg.tolerances().eps;
  Rng rng(0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(n * 1315423911 + alg.dimension()));
  const Matrix h = alg.random_self_adjoint(rng);
  const EigenBlocks blocks = eigen_blocks(h);

  const auto& gens = alg.generators();
  const bool direct = !gens.empty() && gens.size() <= kMaxDirectConstraints;
  std::vector<Matrix> source;
  if (direct) {
    source = gens;
  } else {
    for (int k = 0; k < 6; ++k) source.push_back(alg.random_element(rng));
  }
  std::vector<Matrix> constraints = closure_multipliers(source, eps);
  constraints.push_back(h);

  Matrix basis = solve_commutant(blocks, constraints, n, eps);
  VNAlgebra result = VNAlgebra::from_orthonormal_basis(n, basis, {}, alg.tolerances());
  if (!direct) {
    // Random combinations generate the algebra almost surely; confirm it.
    bool verified = true;
    const auto elements = alg.basis_elements();
    for (Eigen::Index j = 0; j < result.dimension() && verified; ++j) {
      const Matrix x = result.basis_element(j);
      for (const auto& a : elements) {
        if (max_abs(commutator(x, a)) > 100 * eps * std::max(1.0, max_abs(a))) {
          verified = false;
          break;
        }
      }
    }
    if (!verified) {
      constraints = closure_multipliers(elements, eps);
      constraints.push_back(h);
      basis = solve_commutant(blocks, constraints, n, eps);
      result = VNAlgebra::from_orthonormal_basis(n, basis, {}, alg.tolerances());
    }
  }
  return result;
}

double span_distance(const VNAlgebra& a, const VNAlgebra& b) {
  if (a.ambient_dimension() != b.ambient_dimension()) throw Error(ErrorKind::DimensionMismatch, "ambient dimensions");
  const Matrix& ba = a.basis_vectors();
  const Matrix& bb = b.basis_vectors();
  double worst = 0.0;
  if (ba.cols() > 0) {
    const Matrix ra = ba - bb * (bb.adjoint() * ba);
    worst = std::max(worst, ra.colwise().norm().maxCoeff());
  }
  if (bb.cols() > 0) {
    const Matrix rb = bb - ba * (ba.adjoint() * bb);
    worst = std::max(worst, rb.colwise().norm().maxCoeff());
  }
  return worst;
}

bool span_equal(const VNAlgebra& a, const VNAlgebra& b) {
  return a.dimension() == b.dimension() && span_distance(a, b) <= a.tolerances().eps;
}

bool bicommutant_check(const VNAlgebra& alg) { return span_equal(commutant(commutant(alg)), alg); }

VNAlgebra meet(const VNAlgebra& a, const VNAlgebra& b) {
  if (a.ambient_dimension() != b.ambient_dimension()) throw Error(ErrorKind::DimensionMismatch, "ambient dimensions");
  const Eigen::Index n = a.ambient_dimension();
  const double eps = a.tolerances().eps;
  const Matrix& ba = a.basis_vectors();
  const Matrix& bb = b.basis_vectors();
  // Shared directions are the principal vectors at angle zero; the angle is
  // judged on the direct residual, since 1 - cos(theta) loses half the digits.
  Eigen::JacobiSVD<Matrix> svd(ba.adjoint() * bb, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector& s = svd.singularValues();
  std::vector<Eigen::Index> shared;
  for (Eigen::Index i = 0; i < s.size() && s[i] > 0.5; ++i) {
    const Vector va = ba * svd.matrixU().col(i);
    const Vector vb = bb * svd.matrixV().col(i);
    if ((va - vb).norm() <= eps) shared.push_back(i);
  }
  Matrix basis(n * n, static_cast<Eigen::Index>(shared.size()));
  for (std::size_t j = 0; j < shared.size(); ++j) basis.col(static_cast<Eigen::Index>(j)) = ba * svd.matrixU().col(shared[j]);
  return VNAlgebra::from_orthonormal_basis(n, std::move(basis), {}, a.tolerances());
}

VNAlgebra join(const VNAlgebra& a, const VNAlgebra& b) {
  if (a.ambient_dimension() != b.ambient_dimension()) throw Error(ErrorKind::DimensionMismatch, "ambient dimensions");
  const Eigen::Index n = a.ambient_dimension();
  std::vector<Matrix> ops = a.generating_set();
  for (auto& m : b.generating_set()) ops.push_back(std::move(m));
  // Seeding with all pairwise products reaches the answer in one sweep when the
  // two algebras commute; the closure rounds below cover the general case.
  SpanBuilder builder(n, a.tolerances().eps);
  builder.offer(Matrix::Identity(n, n), 1.0);
  for (Eigen::Index i = 0; i < a.dimension() && !builder.full(); ++i) {
    const Matrix ai = a.basis_element(i);
    for (Eigen::Index j = 0; j < b.dimension() && !builder.full(); ++j) builder.offer(ai * b.basis_element(j), 1.0);
  }
  Matrix basis = close_span(builder, closure_multipliers(ops, a.tolerances().eps), n);
  return VNAlgebra::from_orthonormal_basis(n, std::move(basis), std::move(ops), a.tolerances());
}

VNAlgebra center(const VNAlgebra& alg) { return meet(alg, commutant(alg)); }

bool is_factor(const VNAlgebra& alg) { return center(alg).dimension() == 1; }

bool is_abelian(const VNAlgebra& alg) {
  std::vector<Matrix> ops;
  for (const auto& g : alg.generating_set()) {
    ops.push_back(g);
    ops.push_back(g.adjoint());
  }
  const double eps = alg.tolerances().eps;
  for (std::size_t i = 0; i < ops.size(); ++i)
    for (std::size_t j = i + 1; j < ops.size(); ++j)
      if (max_abs(commutator(ops[i], ops[j])) > eps * std::max(1.0, max_abs(ops[i]) * max_abs(ops[j]))) return false;
  return true;
}

bool is_maximal_abelian(const VNAlgebra& alg) {
  if (!is_abelian(alg)) throw Error(ErrorKind::NotAbelian, "algebra has non-commuting elements");
  return span_equal(commutant(alg), alg);
}

std::string generator_hash(const std::vector<Matrix>& ops) {
  // 64-bit FNV-1a over the printed entries; printing pins the digest to the
  // values rather than to their bit patterns.
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
  };
  char buf[64];
  for (const auto& m : ops) {
    std::snprintf(buf, sizeof buf, "[%lldx%lld]", static_cast<long long>(m.rows()), static_cast<long long>(m.cols()));
    mix(buf);
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      for (Eigen::Index i = 0; i < m.rows(); ++i) {
        const double re = m(i, j).real() == 0.0 ? 0.0 : m(i, j).real();
        const double im = m(i, j).imag() == 0.0 ? 0.0 : m(i, j).imag();
        std::snprintf(buf, sizeof buf, "%.12g,%.12g;", re, im);
        mix(buf);
      }
  }
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

AlgebraReport describe(const VNAlgebra& alg) {
  AlgebraReport r;
  r.ambient_dimension = alg.ambient_dimension();
  r.dimension = alg.dimension();
  r.center_dimension = center(alg).dimension();
  r.is_factor = r.center_dimension == 1;
  r.generator_hash = generator_hash(alg.generators());
  return r;
}

}  // namespace vnlab
