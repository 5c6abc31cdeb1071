#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "vnlab/operators.hpp"

using namespace vnlab;

namespace {

GroupAction rotation(std::vector<Fraction> masses) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < masses.size(); ++i) labels.push_back("x" + std::to_string(i));
  return GroupAction::cyclic_rotation(MeasureSpace(labels, std::move(masses)));
}

GroupAction uniform_rotation(std::size_t n) {
  return rotation(std::vector<Fraction>(n, Fraction(1, static_cast<std::int64_t>(n))));
}

GroupAction s3_regular() {
  const FiniteGroup s3 = FiniteGroup::symmetric(3);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < 6; ++i) labels.push_back("p" + std::to_string(i));
  return GroupAction(s3, MeasureSpace(labels, std::vector<Fraction>(6, Fraction(1, 6))), s3.table());
}

Vector indexed(std::size_t n) {
  Vector v(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) v[static_cast<Eigen::Index>(i)] = Complex(1.0 + static_cast<double>(i), 0.5);
  return v;
}

}  // namespace

TEST(HybridSpace, CapIsEnforced) {
  try {
    HybridSpace hs(uniform_rotation(6), 30);
    FAIL() << "expected CapExceeded";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CapExceeded);
  }
  EXPECT_NO_THROW(HybridSpace(uniform_rotation(6), 36));
}

TEST(HybridSpace, NullPointsAreDropped) {
  const GroupAction a(FiniteGroup::cyclic(2),
                      MeasureSpace({"a", "b", "z"}, std::vector<Fraction>{Fraction(1, 2), Fraction(1, 2), Fraction(0)}),
                      {{0, 1, 2}, {1, 0, 2}});
  const HybridSpace hs(a);
  EXPECT_EQ(hs.points(), 2U);
  EXPECT_EQ(hs.dimension(), 4U);
}

TEST(HybridSpace, InnerProducts) {
  const HybridSpace hs(uniform_rotation(3));
  Rng rng(3);
  HybridVector v{random_vector(9, rng), 3, 3};
  v.coefficients.normalize();
  EXPECT_NEAR(std::abs(inner_product(v, v) - 1.0), 0.0, 1e-15);

  const VectorX f = hs.x_from_raw(Vector::Ones(3));
  const HybridVector a = tensor(f, {Vector::Unit(3, 0)});
  const HybridVector b = tensor(f, {Vector::Unit(3, 1)});
  EXPECT_EQ(inner_product(a, b), Complex(0.0));
}

TEST(HybridSpace, ConstantFunctionOnSkewSpaceHasUnitNorm) {
  const HybridSpace hs(rotation({Fraction(1, 3), Fraction(2, 3)}));
  const VectorX one = hs.x_from_raw(Vector::Ones(2));
  EXPECT_NEAR(inner_product(one, one).real(), 1.0, 1e-15);
  const HybridVector omega = tensor(one, {Vector::Unit(2, 0)});
  EXPECT_LT(max_abs(omega.coefficients - hs.trace_vector().coefficients), 1e-15);
  EXPECT_NEAR(hs.trace_vector().norm(), 1.0, 1e-15);
}

TEST(HybridSpace, TensorNormIsProductOfNorms) {
  const HybridSpace hs(uniform_rotation(4));
  Rng rng(9);
  const VectorX fx{random_vector(4, rng)};
  const VectorG fg{random_vector(4, rng)};
  EXPECT_NEAR(tensor(fx, fg).norm(), fx.coefficients.norm() * fg.coefficients.norm(), 1e-13);
  EXPECT_EQ(tensor(VectorX{Vector::Zero(4)}, fg).norm(), 0.0);
}

TEST(HybridSpace, RawRoundTrip) {
  const HybridSpace hs(rotation({Fraction(1, 6), Fraction(1, 3), Fraction(1, 2)}));
  Rng rng(1);
  const Vector raw = random_vector(9, rng);
  EXPECT_LT(max_abs(hs.to_raw(hs.from_raw(raw)) - raw), 1e-14);
  EXPECT_THROW(hs.from_raw(random_vector(8, rng)), Error);
}

TEST(Operators, MultiplicationOperators) {
  const HybridSpace hs(uniform_rotation(4));
  EXPECT_LT(max_abs(make_L(hs, Vector::Ones(4)) - Matrix::Identity(4, 4)), 1e-15);
  EXPECT_TRUE(is_projector(make_P(hs, Subset(4, {0, 2})), 1e-15));
  RealVector lambda(4);
  lambda << 0.1, 2.0, -1.3, 4.0;
  EXPECT_TRUE(is_unitary(make_V(hs, lambda), 1e-14));
  EXPECT_THROW(make_L(hs, Vector::Ones(3)), Error);
}

TEST(Operators, RawTranslationOnSkewSpace) {
  const GroupAction a = rotation({Fraction(1, 3), Fraction(2, 3)});
  const HybridSpace hs(a);
  const Matrix raw = hs.x_operator_to_raw(make_U(hs, 1));
  EXPECT_LT(max_abs(raw - oracle::raw_translation(a, 1)), 1e-15);
  EXPECT_NEAR(raw(0, 1).real(), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(raw(1, 0).real(), 1.0 / std::sqrt(2.0), 1e-15);
  // Unitary for the inner product weighted by mu.
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 1.0 / 3.0;
  d(1, 1) = 2.0 / 3.0;
  EXPECT_LT(max_abs(raw.adjoint() * d * raw - d), 1e-14);
  EXPECT_TRUE(is_unitary(make_U(hs, 1), 1e-15));
}

TEST(Operators, TranslationOrder) {
  const HybridSpace hs(uniform_rotation(3));
  const Matrix u = make_U(hs, 1);
  EXPECT_LT(max_abs(u * u * u - Matrix::Identity(3, 3)), 1e-15);
  EXPECT_LT(max_abs(make_U(hs, 0) - Matrix::Identity(3, 3)), 1e-15);
}

TEST(Operators, TranslationCovariance) {
  // U_g L_phi U_g^dagger = L_{phi o g} with (phi o g)(x) = phi(gx).
  const GroupAction a = uniform_rotation(5);
  const HybridSpace hs(a);
  const Vector phi = indexed(5);
  for (std::size_t g = 0; g < 5; ++g) {
    Vector shifted(5);
    for (std::size_t x = 0; x < 5; ++x) shifted[static_cast<Eigen::Index>(x)] = phi[static_cast<Eigen::Index>(a.act(g, x))];
    const Matrix u = make_U(hs, g);
    EXPECT_LT(max_abs(u * make_L(hs, phi) * u.adjoint() - make_L(hs, shifted)), 1e-14);
  }
}

TEST(Operators, RegularRepresentations) {
  const FiniteGroup z4 = FiniteGroup::cyclic(4);
  for (std::size_t g = 0; g < 4; ++g)
    EXPECT_LT(max_abs(make_regular(z4, Side::Left, g) - make_regular(z4, Side::Right, g)), 1e-15);
  EXPECT_LT(max_abs(make_Q(FiniteGroup::cyclic(2)) - Matrix::Identity(2, 2)), 1e-15);

  const FiniteGroup s3 = FiniteGroup::symmetric(3);
  for (std::size_t g = 0; g < 6; ++g)
    for (std::size_t h = 0; h < 6; ++h)
      EXPECT_LT(max_abs(commutator(make_regular(s3, Side::Left, g), make_regular(s3, Side::Right, h))), 1e-15);
  const Matrix q = make_Q(s3);
  EXPECT_LT(max_abs(q * q - Matrix::Identity(6, 6)), 1e-15);
  for (std::size_t g = 0; g < 6; ++g) {
    // Q|h> = |h^-1>, so Q L_g Q |h> = |h g^-1>.
    EXPECT_LT(max_abs(q * make_regular(s3, Side::Left, g) * q - make_regular(s3, Side::Right, s3.inverse(g))), 1e-15);
    EXPECT_LT(max_abs(make_Qg(s3, g) - q * make_Pg(s3, g)), 1e-15);
  }
}

TEST(HybridOperators, Identities) {
  const HybridSpace hs(uniform_rotation(2));
  EXPECT_LT(max_abs(ubar(hs, 0) - Matrix::Identity(4, 4)), 1e-15);
  EXPECT_LT(max_abs(lbar(hs, Vector::Ones(2)) - Matrix::Identity(4, 4)), 1e-15);
  const Matrix q = qbar(hs);
  EXPECT_EQ(max_abs(q.imag()), 0.0);
  EXPECT_LT(max_abs(q - q.transpose()), 1e-15);
  EXPECT_LT(max_abs(q * q - Matrix::Identity(4, 4)), 1e-15);
  for (Eigen::Index i = 0; i < 4; ++i) EXPECT_NEAR(q.row(i).cwiseAbs().sum(), 1.0, 1e-15);
}

TEST(HybridOperators, TwoSidesCommute) {
  const HybridSpace hs(uniform_rotation(3));
  const Vector phi = indexed(3);
  const Vector psi = indexed(3).reverse();
  EXPECT_LT(max_abs(commutator(lbar(hs, phi), lbar_prime(hs, psi))), 1e-14);
  for (std::size_t g = 0; g < 3; ++g)
    for (std::size_t h = 0; h < 3; ++h) {
      EXPECT_LT(max_abs(commutator(ubar(hs, g), ubar_prime(hs, h))), 1e-14);
      EXPECT_LT(max_abs(commutator(ubar(hs, g), lbar_prime(hs, psi))), 1e-14);
      EXPECT_LT(max_abs(commutator(lbar(hs, phi), ubar_prime(hs, h))), 1e-14);
    }
}

TEST(HybridOperators, TwoSidesCommuteForNonAbelianGroup) {
  const HybridSpace hs(s3_regular());
  const Vector phi = indexed(6);
  for (std::size_t g = 0; g < 6; ++g)
    for (std::size_t h = 0; h < 6; ++h) EXPECT_LT(max_abs(commutator(ubar(hs, g), ubar_prime(hs, h))), 1e-14);
  const Matrix q = qbar(hs);
  for (std::size_t g = 0; g < 6; ++g) EXPECT_LT(max_abs(q * ubar(hs, g) * q - ubar_prime(hs, g)), 1e-14);
  EXPECT_LT(max_abs(q * lbar(hs, phi) * q - lbar_prime(hs, phi)), 1e-14);
}

TEST(HybridOperators, TranslationsComposeInReverseOrder) {
  // (Ubar_g f)(g_i, x) = f(g g_i, g x), so Ubar_g Ubar_h = Ubar_{hg}.
  const HybridSpace hs(s3_regular());
  const auto& group = hs.group();
  for (std::size_t g = 0; g < 6; ++g)
    for (std::size_t h = 0; h < 6; ++h)
      EXPECT_LT(max_abs(ubar(hs, g) * ubar(hs, h) - ubar(hs, group.multiply(h, g))), 1e-15);
}

TEST(HybridOperators, ProjectorTransportUsesInverse) {
  const GroupAction a = uniform_rotation(4);
  const HybridSpace hs(a);
  for (std::size_t g = 0; g < 4; ++g) {
    const Subset s(4, {0, 1});
    const Matrix u = ubar(hs, g);
    EXPECT_LT(max_abs(u * pbar(hs, s) * u.adjoint() - pbar(hs, a.act(a.group().inverse(g), s))), 1e-15);
  }
}

TEST(HybridOperators, BlockViewIsGMajor) {
  const HybridSpace hs(uniform_rotation(3));
  const Matrix u = ubar(hs, 1);
  // Ubar_g has its only nonzero blocks at (g_i, g g_i).
  for (std::size_t gi = 0; gi < 3; ++gi)
    for (std::size_t gj = 0; gj < 3; ++gj) {
      const double norm = Matrix(block(u, hs, gi, gj)).norm();
      if (gj == hs.group().multiply(1, gi)) {
        EXPECT_NEAR(norm, std::sqrt(3.0), 1e-15);
      } else {
        EXPECT_EQ(norm, 0.0);
      }
    }
}

TEST(Alpha, IdentitySupportedAlphaIsMultiplication) {
  const HybridSpace hs(uniform_rotation(3));
  AlphaFunction alpha = zero_alpha(hs);
  const Vector phi = indexed(3);
  for (std::size_t x = 0; x < 3; ++x) alpha(0, x) = phi[static_cast<Eigen::Index>(x)];
  EXPECT_LT(max_abs(from_alpha(hs, alpha, AlgebraSide::F) - lbar(hs, phi)), 1e-15);
  EXPECT_LT(max_abs(from_alpha(hs, alpha, AlgebraSide::Fprime) - lbar_prime(hs, phi)), 1e-15);
  EXPECT_LT(max_abs(alpha_of(hs, lbar(hs, phi)).values - alpha.values), 1e-14);
  AlphaFunction one = zero_alpha(hs);
  for (std::size_t x = 0; x < 3; ++x) one(0, x) = 1.0;
  EXPECT_LT(max_abs(alpha_of(hs, Matrix::Identity(9, 9)).values - one.values), 1e-14);
}

TEST(Alpha, DeltaAlphaIsUnitary) {
  const HybridSpace hs(uniform_rotation(4));
  for (std::size_t g0 = 0; g0 < 4; ++g0) {
    AlphaFunction delta = zero_alpha(hs);
    for (std::size_t x = 0; x < 4; ++x) delta(g0, x) = 1.0;
    const Matrix a = from_alpha(hs, delta, AlgebraSide::F);
    EXPECT_TRUE(is_unitary(a, 1e-14));
    // It is the translation by g0^-1.
    EXPECT_LT(max_abs(a - ubar(hs, hs.group().inverse(g0))), 1e-15);
  }
}

TEST(Alpha, SidesAreExchangedByQ) {
  const HybridSpace hs(uniform_rotation(2));
  Rng rng(5);
  const Matrix q = qbar(hs);
  for (int k = 0; k < 20; ++k) {
    const AlphaFunction alpha = random_alpha(hs, rng);
    EXPECT_LT(max_abs(q * from_alpha(hs, alpha, AlgebraSide::F) * q - from_alpha(hs, alpha, AlgebraSide::Fprime)), 1e-13);
  }
}

TEST(Alpha, ProductIsHomomorphism) {
  for (const GroupAction& a : {uniform_rotation(2), s3_regular()}) {
    const HybridSpace hs(a);
    Rng rng(17);
    for (int k = 0; k < 20; ++k) {
      const AlphaFunction alpha = random_alpha(hs, rng);
      const AlphaFunction beta = random_alpha(hs, rng);
      const Matrix lhs = from_alpha(hs, alpha_product(hs, alpha, beta), AlgebraSide::F);
      const Matrix rhs = from_alpha(hs, alpha, AlgebraSide::F) * from_alpha(hs, beta, AlgebraSide::F);
      EXPECT_LT(max_abs(lhs - rhs), 1e-13);
    }
  }
}

TEST(Alpha, RightIdentity) {
  const HybridSpace hs(uniform_rotation(3));
  Rng rng(2);
  const AlphaFunction alpha = random_alpha(hs, rng);
  AlphaFunction one = zero_alpha(hs);
  for (std::size_t x = 0; x < 3; ++x) one(0, x) = 1.0;
  EXPECT_LT(max_abs(alpha_product(hs, alpha, one).values - alpha.values), 1e-15);
  EXPECT_LT(max_abs(alpha_product(hs, one, alpha).values - alpha.values), 1e-15);
}

TEST(Alpha, HermitianAlphaGivesSelfAdjointOperator) {
  const HybridSpace hs(s3_regular());
  const auto& group = hs.group();
  Rng rng(8);
  const AlphaFunction beta = random_alpha(hs, rng);
  AlphaFunction alpha = zero_alpha(hs);
  for (std::size_t g = 0; g < 6; ++g)
    for (std::size_t x = 0; x < 6; ++x) {
      const auto gi = group.inverse(g);
      alpha(g, x) = 0.5 * (beta(g, x) + std::conj(beta(gi, hs.action().act(gi, x))));
    }
  EXPECT_TRUE(is_hermitian_alpha(hs, alpha, 1e-14));
  EXPECT_FALSE(is_hermitian_alpha(hs, beta, 1e-14));
  const Matrix a = from_alpha(hs, alpha, AlgebraSide::F);
  EXPECT_LT(max_abs(a - a.adjoint()), 1e-14);
  EXPECT_LT(max_abs(from_alpha(hs, alpha_adjoint(hs, beta), AlgebraSide::F) -
                    from_alpha(hs, beta, AlgebraSide::F).adjoint()),
            1e-14);
}

TEST(Alpha, ProductRefusedForNonInvariantMeasure) {
  const HybridSpace hs(rotation({Fraction(1, 3), Fraction(2, 3)}));
  const AlphaFunction alpha = zero_alpha(hs);
  try {
    (void)alpha_product(hs, alpha, alpha);
    FAIL() << "expected NonInvariantMeasure";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonInvariantMeasure);
  }
}

TEST(Alpha, ShapeMismatchThrows) {
  const HybridSpace hs(uniform_rotation(3));
  EXPECT_THROW(from_alpha(hs, AlphaFunction{Matrix::Zero(2, 3)}, AlgebraSide::F), Error);
  EXPECT_THROW(alpha_of(hs, Matrix::Identity(4, 4)), Error);
}
