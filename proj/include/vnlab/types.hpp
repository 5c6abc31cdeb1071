#ifndef VNLAB_TYPES_HPP
#define VNLAB_TYPES_HPP

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>
#include <boost/rational.hpp>

namespace vnlab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Fraction = boost::rational<std::int64_t>;

enum class ErrorKind {
  InvalidStructure,
  SchemaError,
  DimensionMismatch,
  ZeroMassDivision,
  NonInvariantMeasure,
  NotInAlgebra,
  NotAbelian,
  NotPSD,
  NotAFactor,
  NoBridge,
  NotAProjector,
  NonBooleanDiagonal,
  NotSelfAdjoint,
  NotFreeOrErgodic,
  NotNormalized,
  NotFiniteNormalized,
  CapExceeded,
  NumericalFailure,
  IOFailure,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Numerical thresholds shared by every predicate in the library.
///
/// `eps` is the relative tolerance for unitary/projector/membership checks and
/// for singular-value rank decisions (sigma > eps * sigma_max). `snap` bounds
/// how far an eigenvalue of a near-idempotent may drift from {0, 1} before it
/// is rejected instead of rounded.
struct Tolerances {
  double eps = 1e-10;
  double snap = 1e-6;
};

inline constexpr std::size_t kDefaultHybridCap = 1024;

}  // namespace vnlab

#endif  // VNLAB_TYPES_HPP
