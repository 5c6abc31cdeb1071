#include "vnlab/operators.hpp"

#include <cmath>

namespace vnlab {
namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

void check_function(const HybridSpace& hs, Eigen::Index size) {
  if (size != idx(hs.points())) {
    throw Error(ErrorKind::DimensionMismatch, "function on X has " + std::to_string(size) + " values, expected " +
                                                  std::to_string(hs.points()));
  }
}

Vector indicator(const HybridSpace& hs, const Subset& s) {
  if (s.universe() != hs.points()) throw Error(ErrorKind::DimensionMismatch, "subset of a different point set");
  Vector chi = Vector::Zero(idx(hs.points()));
  for (auto x : s.members()) chi[idx(x)] = 1.0;
  return chi;
}

void check_group(const FiniteGroup& group, std::size_t g) {
  if (g >= group.order()) throw Error(ErrorKind::DimensionMismatch, "group element out of range");
}

}  // namespace

Matrix make_L(const HybridSpace& hs, const Vector& phi) {
  check_function(hs, phi.size());
  return phi.asDiagonal();
}

Matrix make_P(const HybridSpace& hs, const Subset& s) { return make_L(hs, indicator(hs, s)); }

Matrix make_V(const HybridSpace& hs, const RealVector& lambda) {
  check_function(hs, lambda.size());
  Vector phase(lambda.size());
  for (Eigen::Index x = 0; x < lambda.size(); ++x) phase[x] = std::polar(1.0, lambda[x]);
  return make_L(hs, phase);
}

Matrix make_U(const HybridSpace& hs, std::size_t g) {
  check_group(hs.group(), g);
  const auto n = idx(hs.points());
  Matrix u = Matrix::Zero(n, n);
  for (std::size_t x = 0; x < hs.points(); ++x) u(idx(x), idx(hs.action().act(g, x))) = 1.0;
  return u;
}

Matrix make_regular(const FiniteGroup& group, Side side, std::size_t g) {
  check_group(group, g);
  const auto n = idx(group.order());
  Matrix m = Matrix::Zero(n, n);
  for (std::size_t gi = 0; gi < group.order(); ++gi) {
    const auto image = side == Side::Left ? group.multiply(g, gi) : group.multiply(gi, g);
    m(idx(image), idx(gi)) = 1.0;
  }
  return m;
}

Matrix make_Q(const FiniteGroup& group) {
  const auto n = idx(group.order());
  Matrix m = Matrix::Zero(n, n);
  for (std::size_t g = 0; g < group.order(); ++g) m(idx(group.inverse(g)), idx(g)) = 1.0;
  return m;
}

Matrix make_Pg(const FiniteGroup& group, std::size_t g) {
  check_group(group, g);
  const auto n = idx(group.order());
  Matrix m = Matrix::Zero(n, n);
  m(idx(g), idx(g)) = 1.0;
  return m;
}

Matrix make_Qg(const FiniteGroup& group, std::size_t g) {
  check_group(group, g);
  const auto n = idx(group.order());
  Matrix m = Matrix::Zero(n, n);
  m(idx(group.inverse(g)), idx(g)) = 1.0;
  return m;
}

Matrix lbar(const HybridSpace& hs, const Vector& phi) {
  check_function(hs, phi.size());
  return phi.replicate(idx(hs.group_order()), 1).asDiagonal();
}

Matrix ubar(const HybridSpace& hs, std::size_t g) {
  check_group(hs.group(), g);
  const auto& group = hs.group();
  const auto n = idx(hs.dimension());
  Matrix u = Matrix::Zero(n, n);
  for (std::size_t gi = 0; gi < group.order(); ++gi)
    for (std::size_t x = 0; x < hs.points(); ++x)
      u(hs.index(gi, x), hs.index(group.multiply(g, gi), hs.action().act(g, x))) = 1.0;
  return u;
}

Matrix pbar(const HybridSpace& hs, const Subset& s) { return lbar(hs, indicator(hs, s)); }

Matrix lbar_prime(const HybridSpace& hs, const Vector& phi) {
  check_function(hs, phi.size());
  const auto& group = hs.group();
  Vector diag(idx(hs.dimension()));
  for (std::size_t gi = 0; gi < group.order(); ++gi)
    for (std::size_t x = 0; x < hs.points(); ++x)
      diag[hs.index(gi, x)] = phi[idx(hs.action().act(group.inverse(gi), x))];
  return diag.asDiagonal();
}

Matrix ubar_prime(const HybridSpace& hs, std::size_t g) {
  check_group(hs.group(), g);
  const auto& group = hs.group();
  const auto n = idx(hs.dimension());
  Matrix u = Matrix::Zero(n, n);
  const auto g_inv = group.inverse(g);
  for (std::size_t gi = 0; gi < group.order(); ++gi)
    for (std::size_t x = 0; x < hs.points(); ++x) u(hs.index(gi, x), hs.index(group.multiply(gi, g_inv), x)) = 1.0;
  return u;
}

Matrix pbar_prime(const HybridSpace& hs, const Subset& s) { return lbar_prime(hs, indicator(hs, s)); }

Matrix qbar(const HybridSpace& hs) {
  const auto& group = hs.group();
  const auto n = idx(hs.dimension());
  Matrix q = Matrix::Zero(n, n);
  for (std::size_t gi = 0; gi < group.order(); ++gi) {
    const auto inv = group.inverse(gi);
    for (std::size_t x = 0; x < hs.points(); ++x) q(hs.index(gi, x), hs.index(inv, hs.action().act(inv, x))) = 1.0;
  }
  return q;
}

AlphaFunction zero_alpha(const HybridSpace& hs) {
  return {Matrix::Zero(idx(hs.group_order()), idx(hs.points()))};
}

AlphaFunction random_alpha(const HybridSpace& hs, Rng& rng) {
  return {random_matrix(idx(hs.group_order()), idx(hs.points()), rng)};
}

Matrix from_alpha(const HybridSpace& hs, const AlphaFunction& alpha, AlgebraSide side) {
  if (alpha.values.rows() != idx(hs.group_order()) || alpha.values.cols() != idx(hs.points())) {
    throw Error(ErrorKind::DimensionMismatch, "alpha function shape does not match the hybrid space");
  }
  const auto& group = hs.group();
  const auto& action = hs.action();
  const auto n = idx(hs.dimension());
  Matrix a = Matrix::Zero(n, n);
  for (std::size_t gi = 0; gi < group.order(); ++gi) {
    for (std::size_t gj = 0; gj < group.order(); ++gj) {
      if (side == AlgebraSide::F) {
        // L_{alpha(gi gj^-1; x)} U_h with h = gj gi^-1, and (U_h)[x, hx] = 1.
        const auto k = group.multiply(gi, group.inverse(gj));
        const auto h = group.multiply(gj, group.inverse(gi));
        for (std::size_t x = 0; x < hs.points(); ++x) a(hs.index(gi, x), hs.index(gj, action.act(h, x))) = alpha(k, x);
      } else {
        const auto gi_inv = group.inverse(gi);
        const auto k = group.multiply(gi_inv, gj);
        for (std::size_t x = 0; x < hs.points(); ++x) a(hs.index(gi, x), hs.index(gj, x)) = alpha(k, action.act(gi_inv, x));
      }
    }
  }
  return a;
}

AlphaFunction alpha_of(const HybridSpace& hs, const Matrix& a) {
  if (a.rows() != idx(hs.dimension()) || a.cols() != idx(hs.dimension())) {
    throw Error(ErrorKind::DimensionMismatch, "operator does not act on the hybrid space");
  }
  const Vector image = a * hs.trace_vector().coefficients;
  const auto& group = hs.group();
  AlphaFunction alpha = zero_alpha(hs);
  for (std::size_t gi = 0; gi < group.order(); ++gi) {
    for (std::size_t x = 0; x < hs.points(); ++x) {
      const auto y = hs.action().act(group.inverse(gi), x);
      alpha(gi, x) = image[hs.index(gi, x)] / hs.root_masses()[idx(y)];
    }
  }
  return alpha;
}

AlphaFunction alpha_product(const HybridSpace& hs, const AlphaFunction& alpha, const AlphaFunction& beta) {
  if (!is_measure_invariant(hs.action())) {
    throw Error(ErrorKind::NonInvariantMeasure, "alpha product is only defined for invariant measures");
  }
  const auto& group = hs.group();
  const auto& action = hs.action();
  AlphaFunction out = zero_alpha(hs);
  for (std::size_t gi = 0; gi < group.order(); ++gi) {
    for (std::size_t x = 0; x < hs.points(); ++x) {
      Complex sum = 0.0;
      for (std::size_t gj = 0; gj < group.order(); ++gj) {
        const auto gj_inv = group.inverse(gj);
        sum += alpha(gj, x) * beta(group.multiply(gj_inv, gi), action.act(gj_inv, x));
      }
      out(gi, x) = sum;
    }
  }
  return out;
}

AlphaFunction alpha_adjoint(const HybridSpace& hs, const AlphaFunction& alpha) {
  if (!is_measure_invariant(hs.action())) {
    throw Error(ErrorKind::NonInvariantMeasure, "alpha adjoint is only defined for invariant measures");
  }
  const auto& group = hs.group();
  AlphaFunction out = zero_alpha(hs);
  for (std::size_t gi = 0; gi < group.order(); ++gi) {
    const auto inv = group.inverse(gi);
    for (std::size_t x = 0; x < hs.points(); ++x) out(gi, x) = std::conj(alpha(inv, hs.action().act(inv, x)));
  }
  return out;
}

bool is_hermitian_alpha(const HybridSpace& hs, const AlphaFunction& alpha, double tol) {
  const auto& group = hs.group();
  for (std::size_t gi = 0; gi < group.order(); ++gi) {
    const auto inv = group.inverse(gi);
    for (std::size_t x = 0; x < hs.points(); ++x)
      if (std::abs(alpha(gi, x) - std::conj(alpha(inv, hs.action().act(inv, x)))) > tol) return false;
  }
  return true;
}

}  // namespace vnlab
