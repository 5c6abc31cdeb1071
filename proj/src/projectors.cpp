#include "vnlab/projectors.hpp"

#include <cmath>
#include <limits>

namespace vnlab {
namespace {

void require_member(const VNAlgebra& alg, const Matrix& op, const char* what) {
  const double r = alg.residual(op);
  if (r > alg.tolerances().eps) {
    throw Error(ErrorKind::NotInAlgebra, std::string(what) + " is not in the algebra (residual " + std::to_string(r) + ")");
  }
}

Fraction rank_fraction(const Matrix& p, Eigen::Index denominator) {
  return Fraction(static_cast<std::int64_t>(projector_rank(p)), static_cast<std::int64_t>(denominator));
}

}  // namespace

Matrix sqrt_psd(const Matrix& b, double tol) {
  if (!is_self_adjoint(b, tol)) throw Error(ErrorKind::NotSelfAdjoint, "square root needs a self-adjoint operand");
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (b + b.adjoint()));
  const RealVector& lambda = es.eigenvalues();
  const double scale = std::max(1.0, lambda.cwiseAbs().maxCoeff());
  if (lambda.size() > 0 && lambda.minCoeff() < -tol * scale) {
    throw Error(ErrorKind::NotPSD, "eigenvalue " + std::to_string(lambda.minCoeff()) + " is negative");
  }
  const RealVector root = lambda.cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * root.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

Matrix sqrt_psd_series(const Matrix& b, double term_tol, int max_terms) {
  if (!is_self_adjoint(b, 1e-10)) throw Error(ErrorKind::NotSelfAdjoint, "square root needs a self-adjoint operand");
  const Eigen::Index n = b.rows();
  const double s = b.norm();
  if (s == 0.0) return Matrix::Zero(n, n);
  // Frobenius norm bounds the spectral radius, so B/s - I has spectrum in [-1, 0].
  const Matrix x = b / s - Matrix::Identity(n, n);
  Matrix sum = Matrix::Identity(n, n);
  Matrix power = Matrix::Identity(n, n);
  double coeff = 1.0;
  for (int k = 1; k <= max_terms; ++k) {
    coeff *= (0.5 - (k - 1)) / k;
    power = power * x;
    const Matrix term = coeff * power;
    sum += term;
    if (term.norm() < term_tol) return std::sqrt(s) * sum;
  }
  throw Error(ErrorKind::NumericalFailure, "binomial series did not converge in " + std::to_string(max_terms) + " terms");
}

PartialIsometry make_partial_isometry(const Matrix& u, double tol) {
  if (max_abs(u * u.adjoint() * u - u) > tol * std::max(1.0, max_abs(u))) {
    throw Error(ErrorKind::NumericalFailure, "operator is not partially isometric");
  }
  return {u, u.adjoint() * u, u * u.adjoint()};
}

PartialIsometry orthogonal_sum(const PartialIsometry& a, const PartialIsometry& b, double tol) {
  if (max_abs(a.initial * b.initial) > tol || max_abs(a.final * b.final) > tol) {
    throw Error(ErrorKind::InvalidStructure, "partial isometries overlap");
  }
  return make_partial_isometry(a.op + b.op, tol);
}

Polar polar(const Matrix& a, double eps) {
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector& s = svd.singularValues();
  Eigen::Index rank = 0;
  if (s.size() > 0 && s[0] > 0.0)
    while (rank < s.size() && s[rank] > eps * s[0]) ++rank;
  const Matrix u = svd.matrixU().leftCols(rank) * svd.matrixV().leftCols(rank).adjoint();
  const Matrix modulus = svd.matrixV() * s.cast<Complex>().asDiagonal() * svd.matrixV().adjoint();
  return {{u, u.adjoint() * u, u * u.adjoint()}, modulus};
}

Factor Factor::from(const VNAlgebra& alg) {
  const auto z = center(alg).dimension();
  if (z != 1) throw Error(ErrorKind::NotAFactor, "center has dimension " + std::to_string(z));
  const auto degree = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(alg.dimension()))));
  if (degree * degree != alg.dimension() || alg.ambient_dimension() % degree != 0) {
    throw Error(ErrorKind::NumericalFailure, "factor dimension " + std::to_string(alg.dimension()) + " is not a square");
  }
  return Factor(alg, degree, alg.ambient_dimension() / degree);
}

std::optional<Segment> local_comparability(const Factor& f, const Matrix& p1, const Matrix& p2) {
  const VNAlgebra& alg = f.algebra();
  const double eps = alg.tolerances().eps;
  require_member(alg, p1, "P1");
  require_member(alg, p2, "P2");
  if (p1.norm() <= eps || p2.norm() <= eps) return std::nullopt;

  Eigen::Index best = -1;
  double best_norm = 0.0;
  Matrix bridge;
  for (Eigen::Index k = 0; k < alg.dimension(); ++k) {
    Matrix a12 = p2 * alg.basis_element(k) * p1;
    const double norm = a12.norm();
    if (norm > best_norm) {
      best_norm = norm;
      best = k;
      bridge = std::move(a12);
    }
  }
  if (best < 0 || best_norm <= eps) throw Error(ErrorKind::NoBridge, "P2 A P1 vanishes for every basis element");
  Polar pd = polar(bridge, eps);
  require_member(alg, pd.u.op, "bridge partial isometry");
  return Segment{snap_projector(pd.u.initial, alg.tolerances().snap), snap_projector(pd.u.final, alg.tolerances().snap),
                 std::move(pd.u), best};
}

std::string_view to_string(Order o) {
  switch (o) {
    case Order::Precedes: return "precedes";
    case Order::Succeeds: return "succeeds";
    case Order::Equivalent: return "equivalent";
  }
  return "unknown";
}

Comparison compare(const Factor& f, const Matrix& p1, const Matrix& p2) {
  const auto& tol = f.algebra().tolerances();
  Matrix r1 = snap_projector(p1, tol.snap);
  Matrix r2 = snap_projector(p2, tol.snap);
  const Eigen::Index n = p1.rows();
  Comparison out;
  out.witness = {Matrix::Zero(n, n), Matrix::Zero(n, n), Matrix::Zero(n, n)};
  // Every segment has rank >= 1, so n iterations suffice.
  for (Eigen::Index step = 0; step <= n; ++step) {
    auto seg = local_comparability(f, r1, r2);
    if (!seg) break;
    out.segment_ranks.push_back(static_cast<Eigen::Index>(projector_rank(seg->delta_p1)));
    out.witness = orthogonal_sum(out.witness, seg->u, 1e-8);
    r1 = snap_projector(r1 - seg->delta_p1, tol.snap);
    r2 = snap_projector(r2 - seg->delta_p2, tol.snap);
  }
  const bool empty1 = projector_rank(r1) == 0;
  const bool empty2 = projector_rank(r2) == 0;
  if (!empty1 && !empty2) throw Error(ErrorKind::NumericalFailure, "comparison did not terminate");
  out.order = empty1 && empty2 ? Order::Equivalent : (empty1 ? Order::Precedes : Order::Succeeds);
  return out;
}

std::string_view to_string(Normalization n) { return n == Normalization::UnitMinimal ? "unit-minimal" : "unit-total"; }

double dimension(const Factor& f, const Matrix& p, Normalization norm) {
  const Matrix snapped = snap_projector(p, f.algebra().tolerances().snap);
  require_member(f.algebra(), snapped, "projector");
  const double denom =
      static_cast<double>(norm == Normalization::UnitMinimal ? f.multiplicity() : f.algebra().ambient_dimension());
  return p.trace().real() / denom;
}

Fraction exact_dimension(const Factor& f, const Matrix& p, Normalization norm) {
  const Matrix snapped = snap_projector(p, f.algebra().tolerances().snap);
  require_member(f.algebra(), snapped, "projector");
  return rank_fraction(snapped, norm == Normalization::UnitMinimal ? f.multiplicity() : f.algebra().ambient_dimension());
}

double spectral_dimension(const CrossedProduct& cp, const Matrix& p, Normalization norm) {
  snap_projector(p, cp.tolerances().snap);
  const AlphaFunction alpha = cp.to_alpha(p);
  const auto& space = cp.space().space();
  double integral = 0.0;
  double smallest = std::numeric_limits<double>::infinity();
  for (std::size_t x = 0; x < space.size(); ++x) {
    integral += alpha(FiniteGroup::identity(), x).real() * space.mass(x);
    smallest = std::min(smallest, space.mass(x));
  }
  const double c = norm == Normalization::UnitMinimal ? 1.0 / smallest : 1.0 / space.total_mass();
  return c * integral;
}

Subset spectral_set(const CrossedProduct& cp, const Matrix& p) {
  snap_projector(p, cp.tolerances().snap);
  const AlphaFunction alpha = cp.to_alpha(p);
  const std::size_t points = cp.space().points();
  Subset s(points);
  for (std::size_t x = 0; x < points; ++x) {
    const Complex chi = alpha(FiniteGroup::identity(), x);
    const bool one = std::abs(chi - 1.0) <= cp.tolerances().snap;
    if (!one && std::abs(chi) > cp.tolerances().snap) {
      throw Error(ErrorKind::NonBooleanDiagonal, "chi(1; x) = " + std::to_string(chi.real()) + " at point " +
                                                     cp.space().space().label(x));
    }
    if (one) s.insert(x);
  }
  return s;
}

CyclicProjectors cyclic_projectors(const VNAlgebra& alg, const VNAlgebra& commutant_alg, const Vector& f) {
  const Eigen::Index n = alg.ambient_dimension();
  if (f.size() != n) throw Error(ErrorKind::DimensionMismatch, "vector length");
  auto orbit = [&](const VNAlgebra& a) {
    Matrix cols(n, a.dimension());
    for (Eigen::Index k = 0; k < a.dimension(); ++k) cols.col(k) = a.basis_element(k) * f;
    return f.norm() == 0.0 ? Matrix(Matrix::Zero(n, n)) : range_projector(cols, 1e-9);
  };
  CyclicProjectors out{orbit(commutant_alg), orbit(alg)};
  if (alg.residual(out.p) > 1e-8 || commutant_alg.residual(out.p_prime) > 1e-8) {
    throw Error(ErrorKind::NumericalFailure, "cyclic projector escaped its algebra");
  }
  return out;
}

namespace {

SpectralFamily family_at(const VNAlgebra& alg, const Matrix& a, std::vector<double> breakpoints) {
  const double tol = alg.tolerances().eps;
  if (!is_self_adjoint(a, tol)) throw Error(ErrorKind::NotSelfAdjoint, "spectral family needs a self-adjoint operator");
  require_member(alg, a, "operator");
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (a + a.adjoint()));
  const RealVector& lambda = es.eigenvalues();
  if (lambda.size() > 0 && (lambda.minCoeff() < -1e-9 || lambda.maxCoeff() > 1.0 + 1e-9)) {
    throw Error(ErrorKind::InvalidStructure, "spectrum must lie in [0, 1]");
  }
  SpectralFamily out;
  out.breakpoints = std::move(breakpoints);
  const Eigen::Index n = a.rows();
  for (double alpha : out.breakpoints) {
    Eigen::Index count = 0;
    while (count < lambda.size() && lambda[count] <= alpha + 1e-9) ++count;
    const Matrix v = es.eigenvectors().leftCols(count);
    out.projectors.push_back(count == 0 ? Matrix(Matrix::Zero(n, n)) : Matrix(v * v.adjoint()));
  }
  return out;
}

}  // namespace

SpectralFamily spectral_family(const VNAlgebra& alg, const Matrix& a, int resolution) {
  if (resolution < 1) throw Error(ErrorKind::InvalidStructure, "resolution must be positive");
  std::vector<double> grid;
  for (int k = 0; k <= resolution; ++k) grid.push_back(static_cast<double>(k) / resolution);
  return family_at(alg, a, std::move(grid));
}

SpectralFamily spectral_family_at_eigenvalues(const VNAlgebra& alg, const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (a + a.adjoint()), Eigen::EigenvaluesOnly);
  std::vector<double> points;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double l = es.eigenvalues()[i];
    if (points.empty() || l - points.back() > 1e-9) points.push_back(l);
  }
  return family_at(alg, a, std::move(points));
}

double stieltjes_mean(const SpectralFamily& family, const Vector& v) {
  double total = 0.0;
  double previous = 0.0;
  for (std::size_t k = 0; k < family.breakpoints.size(); ++k) {
    const double cumulative = v.dot(family.projectors[k] * v).real();
    total += family.breakpoints[k] * (cumulative - previous);
    previous = cumulative;
  }
  return total;
}

Matrix random_projector(const VNAlgebra& alg, Rng& rng) {
  const Eigen::Index n = alg.ambient_dimension();
  Eigen::SelfAdjointEigenSolver<Matrix> es(alg.random_self_adjoint(rng));
  const RealVector& lambda = es.eigenvalues();
  const double scale = std::max(1.0, lambda.cwiseAbs().maxCoeff());
  std::vector<Eigen::Index> cuts;
  for (Eigen::Index i = 1; i < n; ++i)
    if (lambda[i] - lambda[i - 1] > 1e-6 * scale) cuts.push_back(i);
  if (cuts.empty()) return Matrix::Identity(n, n);
  const Eigen::Index cut = cuts[std::uniform_int_distribution<std::size_t>(0, cuts.size() - 1)(rng)];
  const Matrix v = es.eigenvectors().leftCols(cut);
  return v * v.adjoint();
}

bool commutes_with_projector(const Matrix& a, const Matrix& p, double tol) {
  const Matrix complement = Matrix::Identity(p.rows(), p.cols()) - p;
  return max_abs(complement * a * p) <= tol && max_abs(complement * a.adjoint() * p) <= tol;
}

}  // namespace vnlab
