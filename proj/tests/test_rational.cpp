#include <gtest/gtest.h>

#include "natop/rational.hpp"

using namespace natop;

TEST(Rational, RendersWithDenominator) {
  EXPECT_EQ(to_ratio_string(Rational(3)), "3/1");
  Rational r(-6, 4);
  r.canonicalize();
  EXPECT_EQ(to_ratio_string(r), "-3/2");
  EXPECT_EQ(to_ratio_string(Rational(0)), "0/1");
}

TEST(Rational, ParsesIntegersAndFractions) {
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_EQ(parse_rational("-2/6"), Rational(-1, 3));
  EXPECT_EQ(parse_rational("+5/10"), Rational(1, 2));
}

TEST(Rational, RejectsMalformedText) {
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/2/3"), std::invalid_argument);
}

TEST(Rational, RoundTripsThroughText) {
  for (int p = -30; p <= 30; p += 7)
    for (int q = 1; q <= 12; q += 5) {
      Rational r(p, q);
      r.canonicalize();
      EXPECT_EQ(parse_rational(to_ratio_string(r)), r);
    }
}

TEST(Rational, HugeValuesStayExact) {
  Rational big = parse_rational("123456789012345678901234567890/7");
  EXPECT_EQ(big * 7, parse_rational("123456789012345678901234567890"));
}
