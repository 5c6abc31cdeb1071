#include "vnlab/linalg.hpp"

#include <cmath>

namespace vnlab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidStructure: return "InvalidStructure";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ZeroMassDivision: return "ZeroMassDivision";
    case ErrorKind::NonInvariantMeasure: return "NonInvariantMeasure";
    case ErrorKind::NotInAlgebra: return "NotInAlgebra";
    case ErrorKind::NotAbelian: return "NotAbelian";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::NotAFactor: return "NotAFactor";
    case ErrorKind::NoBridge: return "NoBridge";
    case ErrorKind::NotAProjector: return "NotAProjector";
    case ErrorKind::NonBooleanDiagonal: return "NonBooleanDiagonal";
    case ErrorKind::NotSelfAdjoint: return "NotSelfAdjoint";
    case ErrorKind::NotFreeOrErgodic: return "NotFreeOrErgodic";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::NotFiniteNormalized: return "NotFiniteNormalized";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::NumericalFailure: return "NumericalFailure";
    case ErrorKind::IOFailure: return "IOFailure";
  }
  return "Unknown";
}

Matrix snap_projector(const Matrix& m, double snap) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::NotAProjector, "matrix is not square");
  if (max_abs(m - m.adjoint()) > snap) {
    throw Error(ErrorKind::NotAProjector, "matrix is not self-adjoint");
  }
  const Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const RealVector& values = es.eigenvalues();
  std::vector<Eigen::Index> ones;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (std::abs(values[i] - 1.0) <= snap) {
      ones.push_back(i);
    } else if (std::abs(values[i]) > snap) {
      throw Error(ErrorKind::NotAProjector,
                  "eigenvalue " + std::to_string(values[i]) + " is not close to 0 or 1");
    }
  }
  Matrix v(m.rows(), static_cast<Eigen::Index>(ones.size()));
  for (std::size_t k = 0; k < ones.size(); ++k) v.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(ones[k]);
  return v * v.adjoint();
}

std::size_t projector_rank(const Matrix& p) {
  return static_cast<std::size_t>(std::llround(p.trace().real()));
}

Matrix orthonormal_range(const Matrix& columns, double eps) {
  if (columns.cols() == 0) return Matrix(columns.rows(), 0);
  Eigen::BDCSVD<Matrix> svd(columns, Eigen::ComputeThinU);
  const RealVector& s = svd.singularValues();
  Eigen::Index rank = 0;
  if (s.size() > 0 && s[0] > 0.0) {
    while (rank < s.size() && s[rank] > eps * s[0]) ++rank;
  }
  return svd.matrixU().leftCols(rank);
}

Matrix range_projector(const Matrix& columns, double eps) {
  const Matrix q = orthonormal_range(columns, eps);
  return q * q.adjoint();
}

std::size_t numerical_rank(const Matrix& m, double eps) {
  if (m.size() == 0) return 0;
  Eigen::BDCSVD<Matrix> svd(m);
  const RealVector& s = svd.singularValues();
  if (s[0] <= 0.0) return 0;
  std::size_t rank = 0;
  while (rank < static_cast<std::size_t>(s.size()) && s[static_cast<Eigen::Index>(rank)] > eps * s[0]) ++rank;
  return rank;
}

Vector random_vector(Eigen::Index n, Rng& rng) {
  std::normal_distribution<double> gauss;
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = Complex(gauss(rng), gauss(rng));
  return v;
}

Matrix random_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> gauss;
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = Complex(gauss(rng), gauss(rng));
  return m;
}

Matrix random_hermitian(Eigen::Index n, Rng& rng) {
  const Matrix a = random_matrix(n, n, rng);
  return 0.5 * (a + a.adjoint());
}

Matrix random_unitary(Eigen::Index n, Rng& rng) {
  const Matrix a = random_matrix(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phases so the distribution is Haar rather than QR-biased.
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex d = r(i, i);
    if (std::abs(d) > 0.0) q.col(i) *= d / std::abs(d);
  }
  return q;
}

Matrix random_projector(Eigen::Index n, Eigen::Index rank, Rng& rng) {
  const Matrix u = random_unitary(n, rng);
  const Matrix v = u.leftCols(rank);
  return v * v.adjoint();
}

}  // namespace vnlab
