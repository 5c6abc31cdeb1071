#include <gtest/gtest.h>

#include <set>

#include "vnlab/classifier.hpp"

using namespace vnlab;

namespace {

GroupAction rotation(const std::vector<Fraction>& masses) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < masses.size(); ++i) labels.push_back("x" + std::to_string(i));
  return GroupAction::cyclic_rotation(MeasureSpace(labels, masses));
}

std::vector<Fraction> range(std::int64_t lo, std::int64_t hi, std::int64_t den = 1) {
  std::vector<Fraction> out;
  for (std::int64_t k = lo; k <= hi; ++k) out.emplace_back(k, den);
  return out;
}

}  // namespace

TEST(Classify, UniformRotationIsTypeIn) {
  const TypeReport r = classify(cyclic_uniform(3, Fraction(1, 3)));
  EXPECT_EQ(r.verdict, Verdict::In);
  EXPECT_EQ(r.n, 3U);
  EXPECT_EQ(r.label(), "I_3");
  EXPECT_EQ(r.normalization, Normalization::UnitMinimal);
  EXPECT_EQ(r.dimension_spectrum, range(0, 3));
  EXPECT_TRUE(r.witnesses.empty());
  EXPECT_FALSE(r.demonstration.has_value());
}

TEST(Classify, SinglePointIsTypeI1) {
  const TypeReport r = classify(cyclic_uniform(1, Fraction(1)));
  EXPECT_EQ(r.label(), "I_1");
  EXPECT_EQ(r.dimension_spectrum, range(0, 1));
}

TEST(Classify, SkewedRotationIsObstructed) {
  const TypeReport r = classify(rotation({Fraction(1, 3), Fraction(2, 3)}));
  EXPECT_EQ(r.verdict, Verdict::IIIObstruction);
  EXPECT_EQ(r.label(), "III_obstruction");
  ASSERT_FALSE(r.witnesses.empty());
  for (const auto& w : r.witnesses) {
    EXPECT_NE(w.measure, w.image_measure);
    ASSERT_TRUE(w.exact_measure && w.exact_image_measure);
    EXPECT_EQ(*w.exact_measure + *w.exact_image_measure, Fraction(1));
  }
  ASSERT_TRUE(r.demonstration.has_value());
  const DemonstrationPair& d = *r.demonstration;
  EXPECT_EQ(d.order, Order::Equivalent);
  EXPECT_NE(d.set_p, d.set_q);
  EXPECT_NE(d.measure_p, d.measure_q);
  ASSERT_TRUE(d.exact_ratio.has_value());
  EXPECT_TRUE(*d.exact_ratio == Fraction(2) || *d.exact_ratio == Fraction(1, 2));
  EXPECT_NEAR(d.ratio, boost::rational_cast<double>(*d.exact_ratio), 1e-15);
  EXPECT_EQ(d.set_p.count(), 1U);
  EXPECT_EQ(d.set_q.count(), 1U);
  // kappa for the non-identity rotation: 2 on the light point, 1/2 on the heavy one.
  std::vector<Fraction> factors;
  for (const auto& s : r.scaling)
    if (s.element == 1) factors.push_back(s.factor);
  std::sort(factors.begin(), factors.end());
  EXPECT_EQ(factors, (std::vector<Fraction>{Fraction(1, 2), Fraction(2)}));
}

TEST(Classify, NonFreeOrNonErgodicIsRefused) {
  const MeasureSpace two({"a", "b"}, {Fraction(1, 2), Fraction(1, 2)});
  const FiniteGroup z2 = FiniteGroup::cyclic(2);
  // Z2 acting trivially: not free.
  const GroupAction trivial(z2, two, {{0, 1}, {0, 1}});
  try {
    classify(trivial);
    FAIL() << "expected NotFreeOrErgodic";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotFreeOrErgodic);
  }
  // The trivial group on two points: free but not ergodic.
  const GroupAction split(FiniteGroup::cyclic(1), two, {{0, 1}});
  try {
    classify(split);
    FAIL() << "expected NotFreeOrErgodic";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotFreeOrErgodic);
  }
}

TEST(Tower, TypeII1Meshes) {
  const TypeReport r = tower_analysis(TowerKind::II1, {2, 3, 4, 6});
  EXPECT_EQ(r.verdict, Verdict::II1Approximant);
  ASSERT_EQ(r.levels.size(), 4U);
  for (const auto& level : r.levels) {
    const auto n = static_cast<std::int64_t>(level.n);
    EXPECT_EQ(level.mesh, Fraction(1, n));
    EXPECT_EQ(level.identity_dimension, Fraction(1));
    EXPECT_EQ(level.spectrum, range(0, n, n));
  }
  for (std::size_t k = 1; k < r.levels.size(); ++k) EXPECT_LT(r.levels[k].mesh, r.levels[k - 1].mesh);
}

TEST(Tower, TypeIIinfIdentityGrows) {
  const TypeReport r = tower_analysis(TowerKind::IIinf, {2, 4, 5});
  EXPECT_EQ(r.verdict, Verdict::IIinfApproximant);
  ASSERT_EQ(r.levels.size(), 3U);
  for (const auto& level : r.levels) {
    EXPECT_EQ(level.identity_dimension, Fraction(static_cast<std::int64_t>(level.n)));
    EXPECT_EQ(level.mesh, Fraction(1));
  }
  for (std::size_t k = 1; k < r.levels.size(); ++k)
    EXPECT_GT(r.levels[k].identity_dimension, r.levels[k - 1].identity_dimension);
}

TEST(Tower, Errors) {
  EXPECT_THROW(tower_analysis(TowerKind::II1, {3, 2}), Error);
  EXPECT_THROW(tower_analysis(TowerKind::II1, {0}), Error);
  try {
    tower_analysis(TowerKind::II1, {2, 40});
    FAIL() << "expected CapExceeded";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CapExceeded);
  }
}

TEST(Affine, ScalingByTwo) {
  for (std::size_t depth : {1U, 2U}) {
    const TypeReport r = affine_analogue(depth);
    EXPECT_EQ(r.verdict, Verdict::IIIObstruction);
    const std::size_t n = 2 * depth;
    // Every odd rotation moves every point to one of the other mass.
    std::size_t odd_pairs = 0;
    for (const auto& w : r.witnesses) {
      EXPECT_EQ(w.element % 2, 1U);
      const double ratio = w.image_measure / w.measure;
      EXPECT_TRUE(std::abs(ratio - 2.0) < 1e-14 || std::abs(ratio - 0.5) < 1e-14);
      ++odd_pairs;
    }
    EXPECT_EQ(odd_pairs, depth * n);
    std::set<std::size_t> points;
    for (const auto& w : r.witnesses) points.insert(w.point);
    EXPECT_EQ(points.size(), n);
    ASSERT_TRUE(r.demonstration.has_value());
    EXPECT_TRUE(*r.demonstration->exact_ratio == Fraction(2) || *r.demonstration->exact_ratio == Fraction(1, 2));
  }
  EXPECT_THROW(affine_analogue(0), Error);
}

TEST(Spectrum, SubsetSumsAndMesh) {
  EXPECT_EQ(subset_sums({}), (std::vector<Fraction>{Fraction(0)}));
  EXPECT_EQ(subset_sums({Fraction(1), Fraction(1), Fraction(1)}), range(0, 3));
  EXPECT_EQ(subset_sums({Fraction(1, 3), Fraction(2, 3)}), range(0, 3, 3));
  EXPECT_EQ(subset_sums({Fraction(1, 2), Fraction(1, 3)}),
            (std::vector<Fraction>{Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(5, 6)}));
  EXPECT_EQ(mesh({Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(5, 6)}), Fraction(1, 6));
}
