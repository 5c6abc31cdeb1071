#include <gtest/gtest.h>

#include "oracles.hpp"
#include "vnlab/crossed_product.hpp"

using namespace vnlab;

namespace {

Matrix pauli_x() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = m(1, 0) = 1.0;
  return m;
}

Matrix pauli_z() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

Matrix diagonal(std::initializer_list<double> values) {
  Vector d(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double v : values) d[i++] = v;
  return d.asDiagonal();
}

GroupAction uniform_rotation(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("x" + std::to_string(i));
  return GroupAction::cyclic_rotation(
      MeasureSpace(labels, std::vector<Fraction>(n, Fraction(1, static_cast<std::int64_t>(n)))));
}

struct Shape {
  std::vector<Eigen::Index> degrees;
  std::vector<Eigen::Index> multiplicities;
};

const std::vector<Shape>& shapes_of_m4() {
  static const std::vector<Shape> shapes{
      {{4}, {1}},          {{1}, {4}},          {{2}, {2}},          {{1, 1, 1, 1}, {1, 1, 1, 1}},
      {{2, 1, 1}, {1, 1, 1}}, {{2, 2}, {1, 1}},   {{1, 1}, {2, 2}},    {{3, 1}, {1, 1}},
      {{1, 1}, {3, 1}},    {{2, 1}, {1, 2}},    {{1, 1, 1}, {2, 1, 1}},
  };
  return shapes;
}

}  // namespace

TEST(Generate, ScalarsAndFullAlgebra) {
  EXPECT_EQ(VNAlgebra::generate({Matrix::Identity(2, 2)}).dimension(), 1);
  EXPECT_EQ(VNAlgebra::generate({pauli_x(), pauli_z()}).dimension(), 4);
  EXPECT_EQ(VNAlgebra::scalars(3).dimension(), 1);
  EXPECT_EQ(VNAlgebra::full(3).dimension(), 9);
}

TEST(Generate, BasisIsOrthonormalAndClosed) {
  Rng rng(11);
  const auto block = oracle::block_algebra({2, 1}, {1, 2}, rng);
  const VNAlgebra alg = VNAlgebra::generate(block.generators);
  EXPECT_EQ(alg.dimension(), block.dimension());
  const Matrix& b = alg.basis_vectors();
  EXPECT_LT(max_abs(b.adjoint() * b - Matrix::Identity(b.cols(), b.cols())), 1e-12);
  EXPECT_TRUE(alg.contains(Matrix::Identity(4, 4)));
  const auto elements = alg.basis_elements();
  for (const auto& x : elements) {
    EXPECT_LT(alg.residual(x.adjoint()), 1e-10);
    for (const auto& y : elements) EXPECT_LT(alg.residual(x * y), 1e-10);
  }
}

TEST(Generate, NonNormalGeneratorPullsInAdjoint) {
  Matrix e01 = Matrix::Zero(2, 2);
  e01(0, 1) = 1.0;
  EXPECT_EQ(VNAlgebra::generate({e01}).dimension(), 4);
}

TEST(Generate, MismatchedSizesThrow) {
  EXPECT_THROW(VNAlgebra::generate({Matrix::Identity(2, 2), Matrix::Identity(3, 3)}), Error);
}

TEST(Commutant, TrivialCases) {
  EXPECT_EQ(commutant(VNAlgebra::scalars(3)).dimension(), 9);
  EXPECT_EQ(commutant(VNAlgebra::full(3)).dimension(), 1);
}

TEST(Commutant, MatchesKroneckerOracleOnBlockAlgebras) {
  Rng rng(21);
  for (const auto& shape : shapes_of_m4()) {
    const auto block = oracle::block_algebra(shape.degrees, shape.multiplicities, rng);
    const VNAlgebra alg = VNAlgebra::generate(block.generators);
    EXPECT_EQ(alg.dimension(), block.dimension());
    const VNAlgebra comm = commutant(alg);
    EXPECT_EQ(comm.dimension(), block.commutant_dimension());
    EXPECT_EQ(comm.dimension(), oracle::commutant_dimension(block.generators, 4));
    for (const auto& x : comm.basis_elements())
      for (const auto& a : block.generators) EXPECT_LT(max_abs(commutator(x, a)), 1e-10);
  }
}

TEST(Commutant, AbelianAlgebraWithExactlyCommutingConstraints) {
  // Every constraint commutes exactly with the trial subspace here.
  const VNAlgebra alg = VNAlgebra::generate({diagonal({1, 2, 1, 2}), [] {
                                               Matrix u = Matrix::Zero(4, 4);
                                               u(0, 2) = u(2, 0) = u(1, 3) = u(3, 1) = 1.0;
                                               return u;
                                             }()});
  EXPECT_EQ(alg.dimension(), 4);
  EXPECT_EQ(commutant(alg).dimension(), 4);
  EXPECT_TRUE(bicommutant_check(alg));
}

TEST(Bicommutant, HoldsOnRandomSubalgebras) {
  Rng rng(5);
  for (const auto& shape : shapes_of_m4()) {
    const auto block = oracle::block_algebra(shape.degrees, shape.multiplicities, rng);
    EXPECT_TRUE(bicommutant_check(VNAlgebra::generate(block.generators)));
  }
}

TEST(Center, FactorAndAbelianPredicates) {
  EXPECT_TRUE(is_factor(VNAlgebra::full(3)));
  const VNAlgebra diag = VNAlgebra::generate({diagonal({1, 2})});
  EXPECT_FALSE(is_factor(diag));
  EXPECT_EQ(center(diag).dimension(), 2);
  EXPECT_TRUE(is_abelian(diag));
  EXPECT_FALSE(is_abelian(VNAlgebra::full(2)));

  Rng rng(3);
  for (const auto& shape : shapes_of_m4()) {
    const auto block = oracle::block_algebra(shape.degrees, shape.multiplicities, rng);
    const VNAlgebra alg = VNAlgebra::generate(block.generators);
    EXPECT_EQ(center(alg).dimension(), static_cast<Eigen::Index>(shape.degrees.size()));
    EXPECT_EQ(is_factor(alg), shape.degrees.size() == 1);
  }
}

TEST(MaximalAbelian, Examples) {
  EXPECT_TRUE(is_maximal_abelian(VNAlgebra::generate({diagonal({1, 2, 3})})));
  EXPECT_FALSE(is_maximal_abelian(VNAlgebra::scalars(2)));
  try {
    (void)is_maximal_abelian(VNAlgebra::full(2));
    FAIL() << "expected NotAbelian";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotAbelian);
  }
}

TEST(MaximalAbelian, HybridDiagonals) {
  const HybridSpace hs(uniform_rotation(2));
  Vector phi(2);
  phi << 1.0, 2.0;
  const VNAlgebra lbar_alg = VNAlgebra::generate({lbar(hs, phi)});
  EXPECT_FALSE(is_maximal_abelian(lbar_alg));
  const VNAlgebra both = VNAlgebra::generate({lbar(hs, phi), lbar_prime(hs, phi)});
  EXPECT_TRUE(is_maximal_abelian(both));
}

TEST(Lattice, MeetAndJoinOfNestedAlgebras) {
  const VNAlgebra diag = VNAlgebra::generate({diagonal({1, 2, 3})});
  const VNAlgebra full = VNAlgebra::full(3);
  EXPECT_EQ(meet(diag, full).dimension(), 3);
  EXPECT_EQ(join(diag, full).dimension(), 9);
  const VNAlgebra a = VNAlgebra::generate({diagonal({1, 1, 0})});
  const VNAlgebra b = VNAlgebra::generate({diagonal({0, 1, 1})});
  EXPECT_EQ(meet(a, b).dimension(), 1);
  EXPECT_EQ(join(a, b).dimension(), 3);
}

TEST(Lattice, DualityOnRandomPairs) {
  Rng rng(99);
  const auto& shapes = shapes_of_m4();
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    const auto& s1 = shapes[i];
    const auto& s2 = shapes[(i * 7 + 3) % shapes.size()];
    const auto block_a = oracle::block_algebra(s1.degrees, s1.multiplicities, rng);
    auto block_b = oracle::block_algebra(s2.degrees, s2.multiplicities, rng);
    // Share the frame half of the time so that meets are not always trivial.
    if (i % 2 == 0) {
      for (auto& g : block_b.generators) g = block_a.w * block_b.w.adjoint() * g * block_b.w * block_a.w.adjoint();
    }
    const VNAlgebra a = VNAlgebra::generate(block_a.generators);
    const VNAlgebra b = VNAlgebra::generate(block_b.generators);
    const VNAlgebra lhs = commutant(meet(a, b));
    const VNAlgebra rhs = join(commutant(a), commutant(b));
    EXPECT_TRUE(span_equal(lhs, rhs)) << "pair " << i;
    const VNAlgebra lhs2 = commutant(join(a, b));
    const VNAlgebra rhs2 = meet(commutant(a), commutant(b));
    EXPECT_TRUE(span_equal(lhs2, rhs2)) << "pair " << i;
  }
}

TEST(Lattice, MeetMatchesProjectorOracle) {
  Rng rng(41);
  const auto a = oracle::block_algebra({1, 1, 1, 1}, {1, 1, 1, 1}, rng);
  const VNAlgebra alg_a = VNAlgebra::generate(a.generators);
  const VNAlgebra alg_b = VNAlgebra::generate({a.generators[2] + a.generators[3], a.generators[4]});
  // Intersection of two subspaces from the projector product's unit eigenspace.
  const Matrix pa = oracle::span_projector(alg_a.basis_vectors());
  const Matrix pb = oracle::span_projector(alg_b.basis_vectors());
  Eigen::SelfAdjointEigenSolver<Matrix> es(pa * pb * pa);
  Eigen::Index unit = 0;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
    if (es.eigenvalues()[k] > 1.0 - 1e-9) ++unit;
  EXPECT_EQ(meet(alg_a, alg_b).dimension(), unit);
}

TEST(SpanEquality, DetectsDifferences) {
  const VNAlgebra a = VNAlgebra::generate({diagonal({1, 2})});
  const VNAlgebra b = VNAlgebra::generate({pauli_x()});
  EXPECT_FALSE(span_equal(a, b));
  EXPECT_GT(span_distance(a, b), 0.5);
  EXPECT_TRUE(span_equal(a, a.conjugated(Matrix::Identity(2, 2))));
}

TEST(Describe, ReportAndHashAreStable) {
  const VNAlgebra alg = VNAlgebra::generate({pauli_x(), pauli_z()});
  const AlgebraReport r = describe(alg);
  EXPECT_EQ(r.ambient_dimension, 2);
  EXPECT_EQ(r.dimension, 4);
  EXPECT_EQ(r.center_dimension, 1);
  EXPECT_TRUE(r.is_factor);
  EXPECT_EQ(r.generator_hash, generator_hash({pauli_x(), pauli_z()}));
  EXPECT_NE(r.generator_hash, generator_hash({pauli_z(), pauli_x()}));
}

TEST(CrossedProductAlgebra, Z2Counts) {
  const CrossedProduct cp(uniform_rotation(2));
  EXPECT_EQ(cp.F().dimension(), 4);
  const VNAlgebra comm = commutant(cp.F());
  EXPECT_EQ(comm.dimension(), 4);
  EXPECT_TRUE(span_equal(comm, cp.F().conjugated(cp.Q())));
  EXPECT_TRUE(span_equal(comm, cp.F_prime()));
}

TEST(CrossedProductAlgebra, Z3CoupledFactors) {
  const CrossedProduct cp(uniform_rotation(3));
  EXPECT_TRUE(is_factor(cp.F()));
  EXPECT_TRUE(is_factor(cp.F_prime()));
  EXPECT_EQ(join(cp.F(), cp.F_prime()).dimension(), 81);
  EXPECT_EQ(meet(cp.F(), cp.F_prime()).dimension(), 1);
  EXPECT_EQ(oracle::commutant_dimension(cp.F().generators(), 9), 9);
}

TEST(CrossedProductAlgebra, ProjectorsSpanF) {
  // Every element is a combination of projectors in F: the spectral projectors
  // of the self-adjoint parts of a basis span F.
  const CrossedProduct cp(uniform_rotation(3));
  std::vector<Matrix> projectors;
  for (const auto& b : cp.F().basis_elements()) {
    for (const Matrix& h : {Matrix(0.5 * (b + b.adjoint())), Matrix(Complex(0, -0.5) * (b - b.adjoint()))}) {
      Eigen::SelfAdjointEigenSolver<Matrix> es(h);
      const auto& lambda = es.eigenvalues();
      Eigen::Index start = 0;
      for (Eigen::Index i = 1; i <= lambda.size(); ++i) {
        if (i == lambda.size() || lambda[i] - lambda[i - 1] > 1e-8) {
          const Matrix v = es.eigenvectors().middleCols(start, i - start);
          projectors.push_back(v * v.adjoint());
          start = i;
        }
      }
    }
  }
  for (const auto& p : projectors) EXPECT_LT(cp.F().residual(p), 1e-10);
  Matrix cols(81, static_cast<Eigen::Index>(projectors.size()));
  for (std::size_t k = 0; k < projectors.size(); ++k)
    cols.col(static_cast<Eigen::Index>(k)) = Eigen::Map<const Vector>(projectors[k].data(), 81);
  EXPECT_EQ(numerical_rank(cols, 1e-10), 9U);
}
