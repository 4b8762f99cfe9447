#include "rbokit/fraction.hpp"

#include <gtest/gtest.h>

#include <limits>
#include <stdexcept>

using rbokit::Fraction;

TEST(Fraction, ReducesAndNormalisesSign) {
  EXPECT_EQ(Fraction(6, 8), Fraction(3, 4));
  EXPECT_EQ(Fraction(3, -6).numerator(), -1);
  EXPECT_EQ(Fraction(3, -6).denominator(), 2);
  EXPECT_EQ(Fraction(0, 5), Fraction(0));
}

TEST(Fraction, Arithmetic) {
  EXPECT_EQ(Fraction(1, 3) + Fraction(1, 6), Fraction(1, 2));
  EXPECT_EQ(Fraction(1, 3) - Fraction(1, 2), Fraction(-1, 6));
  EXPECT_EQ(Fraction(2, 3) * Fraction(9, 4), Fraction(3, 2));
  EXPECT_EQ(Fraction(2, 3) / Fraction(4, 9), Fraction(3, 2));
  Fraction x(1, 4);
  x += Fraction(1, 4);
  EXPECT_EQ(x, Fraction(1, 2));
}

TEST(Fraction, Ordering) {
  EXPECT_LT(Fraction(1, 3), Fraction(1, 2));
  EXPECT_GT(Fraction(-1, 3), Fraction(-1, 2));
  EXPECT_DOUBLE_EQ(Fraction(7, 15).to_double(), 7.0 / 15.0);
}

TEST(Fraction, ToString) {
  EXPECT_EQ(Fraction(6, 11).to_string(), "6/11");
  EXPECT_EQ(Fraction(4, 2).to_string(), "2");
}

TEST(Fraction, Errors) {
  EXPECT_THROW(Fraction(1, 0), std::domain_error);
  EXPECT_THROW(Fraction(1) / Fraction(0), std::domain_error);
  const auto big = std::numeric_limits<std::int64_t>::max();
  EXPECT_THROW(Fraction(big) * Fraction(big), std::overflow_error);
}
