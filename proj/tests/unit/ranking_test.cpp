#include "rbokit/ranking.hpp"

#include <gtest/gtest.h>

#include "rbokit/error.hpp"
#include "test_util.hpp"

using namespace rbokit;
using rbokit::testing::example_long;
using rbokit::testing::example_short;

TEST(Ranking, RunningExampleNotation) {
  const Ranking s = example_short(), l = example_long();
  EXPECT_EQ(s.size(), 7u);
  EXPECT_EQ(l.size(), 13u);
  EXPECT_EQ(l.items()[5], "e");
  EXPECT_EQ(s.bounds("b")->top, 2u);
  for (const char* id : {"g", "h", "f"}) EXPECT_EQ(l.bounds(id)->top, 7u) << id;
  for (const char* id : {"e", "c", "d"}) EXPECT_EQ(s.bounds(id)->bottom, 6u) << id;
  EXPECT_FALSE(s.bounds("zz").has_value());
  EXPECT_TRUE(s.has_ties());
  EXPECT_EQ(l.group_count(), 7u);
  EXPECT_EQ(l.group_at(12), 6u);
}

TEST(Ranking, RejectsDuplicatesAndEmpty) {
  EXPECT_THROW(Ranking({{"a"}, {"b", "a"}}), DuplicateItem);
  EXPECT_THROW(Ranking({}), EmptyRanking);
  EXPECT_THROW(parse_plain_ranking("# only a comment\n\n"), EmptyRanking);
}

TEST(Ranking, ContributionOfCrossingItem) {
  const Ranking s = example_short();
  const Fraction expected[] = {0, 0, 0, Fraction(1, 3), Fraction(2, 3), 1, 1};
  for (Depth d = 1; d <= 7; ++d) EXPECT_EQ(contribution(s, "c", d, Variant::a), expected[d - 1]) << d;
  EXPECT_EQ(contribution(example_long(), "j", 12, Variant::a), Fraction(3, 4));
  EXPECT_EQ(contribution(example_long(), "j", 12, Variant::b), Fraction(3, 4));
}

TEST(Ranking, SportsContributionIsIndicator) {
  const Ranking s = example_short();
  EXPECT_EQ(contribution(s, "c", 3, Variant::w), Fraction(0));
  EXPECT_EQ(contribution(s, "c", 4, Variant::w), Fraction(1));
  EXPECT_EQ(contribution(s, "zz", 4, Variant::w), Fraction(0));
}

TEST(Ranking, ContributionRejectsDepthZero) {
  EXPECT_THROW(contribution(example_short(), "c", 0, Variant::a), DepthOutOfRange);
}

TEST(Ranking, OverlapCountsFullyActiveItems) {
  const Ranking s = example_short(), l = example_long();
  EXPECT_EQ(overlap(s, l, 3), 1u);
  EXPECT_EQ(overlap(s, l, 13), 5u);  // a d c e f
}

TEST(Ranking, UniverseOrder) {
  const auto u = universe(untied_ranking({"a", "b"}), untied_ranking({"c", "a"}));
  EXPECT_EQ(u, (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(universe(example_short(), example_long()).size(), 15u);
}

TEST(Ranking, PlainFormatRoundTrip) {
  const Ranking l = example_long();
  const Ranking again = parse_plain_ranking(format_plain_ranking(l));
  EXPECT_EQ(again.groups(), l.groups());
  const Ranking commented = parse_plain_ranking("# header\n a b \n\nc\n");
  EXPECT_EQ(commented.groups(), (std::vector<std::vector<std::string>>{{"a", "b"}, {"c"}}));
}

TEST(Ranking, VariantNames) {
  for (Variant v : {Variant::base, Variant::w, Variant::a, Variant::b}) EXPECT_EQ(parse_variant(to_string(v)), v);
  EXPECT_FALSE(parse_variant("c").has_value());
}
