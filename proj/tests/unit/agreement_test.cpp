#include "rbokit/agreement.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "rbokit/error.hpp"
#include "test_util.hpp"

using namespace rbokit;
using rbokit::testing::example_long;
using rbokit::testing::example_short;

TEST(Agreement, RunningExampleValues) {
  const Ranking s = example_short(), l = example_long();
  EXPECT_EQ(agreement_exact(s, l, 3, Variant::base), Fraction(1, 3));
  EXPECT_EQ(agreement_exact(s, l, 5, Variant::w), Fraction(6, 11));
  EXPECT_EQ(agreement_exact(s, l, 4, Variant::a), Fraction(3, 8));
  EXPECT_EQ(agreement_exact(s, l, 5, Variant::a), Fraction(7, 15));
  EXPECT_NEAR(agreement_b(s, l, 4).value, 1.5 / (std::sqrt(10.0 / 3.0) * std::sqrt(3.5)), 1e-15);
}

TEST(Agreement, SportsDenominatorCountsCrossingGroups) {
  const ContributionSums c = contribution_sums(example_short(), example_long(), 5, Variant::w);
  EXPECT_EQ(c.sum_s + c.sum_l, Fraction(11));
  EXPECT_EQ(c.joint, Fraction(3));
}

TEST(Agreement, BVariantSumsOfSquares) {
  const ContributionSums c = contribution_sums(example_short(), example_long(), 4, Variant::b);
  EXPECT_EQ(c.sumsq_s, Fraction(10, 3));
  EXPECT_EQ(c.sumsq_l, Fraction(7, 2));
  EXPECT_EQ(c.joint, Fraction(3, 2));
}

TEST(Agreement, BaseRejectsCrossingGroup) {
  EXPECT_THROW(agreement_base(example_short(), example_long(), 4), CrossingGroupAtDepth);
  EXPECT_THROW(agreement_exact(example_short(), example_long(), 4, Variant::base), CrossingGroupAtDepth);
}

TEST(Agreement, DepthRange) {
  EXPECT_THROW(agreement_a(example_short(), example_long(), 0), DepthOutOfRange);
  EXPECT_THROW(agreement_a(example_short(), example_long(), 8), DepthOutOfRange);
  EXPECT_THROW(agreement_exact(example_short(), example_long(), 4, Variant::b), std::invalid_argument);
}

TEST(Agreement, SelfAgreementUnderB) {
  const Ranking x = parse_plain_ranking("a b c\nd\ne f\ng h i j\n");
  for (Depth d = 1; d <= x.size(); ++d) EXPECT_DOUBLE_EQ(agreement_b(x, x, d).value, 1.0) << d;
  // The expectation over permutations is below 1 inside a crossing group.
  EXPECT_LT(agreement_exact(x, x, 2, Variant::a), Fraction(1));
}

TEST(Agreement, UntiedVariantsCoincide) {
  const Ranking s = untied_ranking({"a", "b", "c", "d"});
  const Ranking l = untied_ranking({"c", "a", "x", "b", "y"});
  for (Depth d = 1; d <= 4; ++d) {
    const Fraction base = agreement_exact(s, l, d, Variant::base);
    EXPECT_EQ(agreement_exact(s, l, d, Variant::w), base);
    EXPECT_EQ(agreement_exact(s, l, d, Variant::a), base);
    EXPECT_DOUBLE_EQ(agreement_b(s, l, d).value, base.to_double());
  }
}

TEST(Agreement, DispatchMatchesDirectCalls) {
  const Ranking s = example_short(), l = example_long();
  EXPECT_EQ(agreement(s, l, 5, Variant::w).value, agreement_w(s, l, 5).value);
  EXPECT_EQ(agreement(s, l, 5, Variant::a).value, agreement_a(s, l, 5).value);
  EXPECT_EQ(agreement(s, l, 5, Variant::b).value, agreement_b(s, l, 5).value);
  EXPECT_EQ(agreement(s, l, 3, Variant::base).value, 1.0 / 3.0);
}
