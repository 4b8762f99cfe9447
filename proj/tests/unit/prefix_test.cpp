#include "rbokit/prefix.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "rbokit/agreement.hpp"
#include "rbokit/error.hpp"
#include "rbokit/oracle.hpp"
#include "test_util.hpp"

using namespace rbokit;
using rbokit::testing::example_long;
using rbokit::testing::example_short;

TEST(Prefix, RunningExampleCounts) {
  const DepthProfile prof(example_long(), example_short(), Variant::a);
  EXPECT_EQ(prof.shorter_length(), 7u);
  EXPECT_EQ(prof.longer_length(), 13u);
  EXPECT_EQ(prof.final_overlap(), 5u);
  EXPECT_EQ(prof.full_agreement_depth(), 15u);
}

TEST(Prefix, ProfileAgreementMatchesDirect) {
  const Ranking s = example_short(), l = example_long();
  for (Variant v : {Variant::w, Variant::a, Variant::b}) {
    const DepthProfile prof(s, l, v);
    for (Depth d = 1; d <= 7; ++d) EXPECT_NEAR(prof.agreement(d), agreement(s, l, d, v).value, 1e-15);
  }
}

TEST(Prefix, UnmatchedSequenceRunningExample) {
  const Ranking s = example_short(), l = example_long();
  const auto at9 = unmatched_sequence(s, l, 9);
  ASSERT_EQ(at9.size(), 4u);
  const char* ids9[] = {"i", "m", "g", "h"};
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_EQ(at9[k].item, ids9[k]);
    EXPECT_EQ(at9[k].contribution, Fraction(1));
  }
  const auto at12 = unmatched_sequence(s, l, 12);
  ASSERT_EQ(at12.size(), 8u);
  for (std::size_t k = 4; k < 8; ++k) EXPECT_EQ(at12[k].contribution, Fraction(3, 4));
  const auto at12w = unmatched_sequence(s, l, 12, Variant::w);
  for (const auto& e : at12w) EXPECT_EQ(e.contribution, Fraction(1));
}

TEST(Prefix, ExtUnseenContribution) {
  const Ranking s = example_short(), l = example_long();
  const UnseenContribution c = ext_unseen_contribution(s, l, 12, Variant::a);
  EXPECT_NEAR(c.shorter, agreement_a(s, l, 7).value, 1e-15);
  EXPECT_NEAR(c.longer, 7.0 / 8.0, 1e-15);
}

TEST(Prefix, RunningExampleAgreesWithNumericSummation) {
  const Ranking s = example_short(), l = example_long();
  for (Variant v : {Variant::w, Variant::a, Variant::b})
    for (double p : {0.8, 0.9, 0.95}) {
      const RboScores r = rbo(s, l, {p, v});
      EXPECT_NEAR(r.min, oracle::rbo_numeric(s, l, {p, v}, Assumption::min), 1e-12);
      EXPECT_NEAR(r.max, oracle::rbo_numeric(s, l, {p, v}, Assumption::max), 1e-12);
      EXPECT_NEAR(r.ext, oracle::rbo_numeric(s, l, {p, v}, Assumption::ext), 1e-12);
      EXPECT_DOUBLE_EQ(r.res, r.max - r.min);
    }
}

TEST(Prefix, ArgumentOrderDoesNotMatter) {
  const RboScores a = rbo(example_short(), example_long(), {0.9, Variant::b});
  const RboScores b = rbo(example_long(), example_short(), {0.9, Variant::b});
  EXPECT_EQ(a.ext, b.ext);
  EXPECT_EQ(a.min, b.min);
  EXPECT_EQ(a.max, b.max);
}

TEST(Prefix, MinTailClosedForm) {
  const Ranking s = example_short(), l = example_long();
  const double p = 0.9;
  double direct = 0.0;
  for (int d = 14; d < 2000; ++d) direct += 5.0 / d * std::pow(p, d);
  EXPECT_NEAR(section3_sum(s, l, {p, Variant::a}, Assumption::min), direct, 1e-12);
}

TEST(Prefix, MaxTailReachesFullAgreementAtF) {
  const Ranking s = example_short(), l = example_long();
  const double p = 0.9;
  // X_l = 5, s = 7, l = 13: (2d − 15)/d up to d = 15, then 1.
  const double direct = 13.0 / 14.0 * std::pow(p, 14) + 15.0 / 15.0 * std::pow(p, 15) + std::pow(p, 16) / (1 - p);
  EXPECT_NEAR(section3_sum(s, l, {p, Variant::w}, Assumption::max), direct, 1e-13);
}

TEST(Prefix, EqualLengthsHaveNoMiddleSection) {
  const Ranking a = parse_plain_ranking("a b\nc\n");
  const Ranking b = parse_plain_ranking("c\nd a\n");
  EXPECT_EQ(section2_sum(a, b, {0.9, Variant::a}, Assumption::max), 0.0);
}

TEST(Prefix, IdenticalAndDisjoint) {
  const Ranking x = untied_ranking({"a", "b", "c", "d"});
  EXPECT_NEAR(rbo(x, x, {0.9, Variant::a}).ext, 1.0, 1e-15);
  EXPECT_NEAR(rbo(x, x, {0.9, Variant::a}).max, 1.0, 1e-15);
  const Ranking y = untied_ranking({"e", "f", "g", "h"});
  EXPECT_EQ(rbo(x, y, {0.5, Variant::a}).ext, 0.0);
  EXPECT_EQ(rbo(x, y, {0.5, Variant::a}).min, 0.0);
}

TEST(Prefix, SwappedPairUntied) {
  // S = ⟨a b⟩, L = ⟨b a⟩: ext = max = p.
  const RboScores r = rbo(untied_ranking({"a", "b"}), untied_ranking({"b", "a"}), {0.9, Variant::base});
  EXPECT_NEAR(r.ext, 0.9, 1e-15);
  EXPECT_NEAR(r.max, 0.9, 1e-15);
}

TEST(Prefix, InvalidPersistence) {
  const Ranking x = untied_ranking({"a"});
  for (double p : {0.0, 1.0, -0.5, 1.5, std::nan("")}) EXPECT_THROW(rbo(x, x, {p, Variant::a}), InvalidPersistence);
}

TEST(Prefix, BaseVariantNeedsUntiedInput) {
  EXPECT_THROW(rbo(example_short(), example_long(), {0.9, Variant::base}), CrossingGroupAtDepth);
}

TEST(Prefix, BoundsOrdering) {
  SplitMix64 rng(7);
  for (int i = 0; i < 300; ++i) {
    const auto pair = rbokit::testing::random_pair(rng, 30, 5);
    for (Variant v : {Variant::w, Variant::a, Variant::b}) {
      const RboScores r = rbo(pair.first, pair.second, {0.9, v});
      EXPECT_LE(r.min, r.max);
      EXPECT_GE(r.min, 0.0);
      EXPECT_LE(r.max, 1.0);
      EXPECT_GE(r.ext, r.min - 1e-9);
      EXPECT_LE(r.ext, r.max + 1e-9);
    }
  }
}

// The a-variant is an expectation over tie permutations for MIN, and for EXT
// whenever no tie group of the longer ranking straddles its unmatched items.
TEST(Prefix, AVariantIsPermutationMeanForMin) {
  SplitMix64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const auto pair = rbokit::testing::random_pair(rng, 7, 3);
    double mean = 0.0;
    const auto pa = oracle::enumerate_tie_permutations(pair.first);
    const auto pb = oracle::enumerate_tie_permutations(pair.second);
    for (const auto& x : pa)
      for (const auto& y : pb) mean += oracle::bare_rbo_reference(x, y, 0.9).min;
    mean /= static_cast<double>(pa.size() * pb.size());
    EXPECT_NEAR(rbo(pair.first, pair.second, {0.9, Variant::a}).min, mean, 1e-12);
  }
}

TEST(Prefix, AVariantExtIsPermutationMeanForEqualLengths) {
  SplitMix64 rng(12);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 1 + rng.below(7);
    const Ranking a = rbokit::testing::random_ranking(rng, n, n + 3, 3);
    const Ranking b = rbokit::testing::random_ranking(rng, n, n + 3, 3);
    EXPECT_NEAR(rbo(a, b, {0.9, Variant::a}).ext, oracle::mean_bare_ext_over_permutations(a, b, 0.9), 1e-12);
  }
}

// With L = ⟨a [b c]⟩ every permutation pair is a perfect prefix match, so
// bare EXT is 1 for all of them, while the a-variant discounts the unseen
// slot by the mean contribution of the tied unmatched items.
TEST(Prefix, AVariantExtDiffersFromPermutationMeanWhenLongerTiesUnmatchedItems) {
  const Ranking s = untied_ranking({"a"});
  const Ranking l = parse_plain_ranking("a\nb c\n");
  EXPECT_NEAR(oracle::mean_bare_ext_over_permutations(s, l, 0.9), 1.0, 1e-15);
  const double ext = rbo(s, l, {0.9, Variant::a}).ext;
  EXPECT_LT(ext, 1.0 - 1e-3);
  // d = 2: seen 1 plus one unseen slot at A_1·(1/2) over 2; d = 3: full
  // agreement; beyond l the extrapolated agreement is 1.
  const double p = 0.9;
  const double expected = (1 - p) / p * (p + 0.75 * p * p + p * p * p) + p * p * p;
  EXPECT_NEAR(ext, expected, 1e-14);
}

TEST(Prefix, EvaluatorReusesProfile) {
  const RboEvaluator eval(example_short(), example_long(), Variant::b);
  for (double p : {0.8, 0.9, 0.95}) {
    const RboScores direct = rbo(example_short(), example_long(), {p, Variant::b});
    const RboScores reused = eval.scores(p);
    EXPECT_EQ(direct.ext, reused.ext);
    const double scale = (1 - p) / p;
    EXPECT_NEAR(reused.ext,
                scale * (eval.section1(p) + eval.section2(p, Assumption::ext) + eval.section3(p, Assumption::ext)),
                1e-15);
  }
}
