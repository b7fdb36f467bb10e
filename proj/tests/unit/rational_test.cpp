#include <gtest/gtest.h>

#include <ddt/rational.hpp>

using ddt::ParseError;
using ddt::Rational;
using ddt::Time;

TEST(Rational, ParsesIntegersDecimalsAndFractions) {
  EXPECT_EQ(Rational::parse("3").str(), "3");
  EXPECT_EQ(Rational::parse("-4").str(), "-4");
  EXPECT_EQ(Rational::parse("1.25").str(), "5/4");
  EXPECT_EQ(Rational::parse("7/2").str(), "7/2");
  EXPECT_EQ(Rational::parse("6/4").str(), "3/2");
}

TEST(Rational, RejectsGarbage) {
  EXPECT_THROW(Rational::parse("abc"), ParseError);
  EXPECT_THROW(Rational::parse("1/0"), ParseError);
  EXPECT_THROW(Rational::parse(""), ParseError);
}

TEST(Rational, ArithmeticIsExact) {
  Rational third = Rational(1) / Rational(3);
  EXPECT_EQ(third + third + third, Rational(1));
  EXPECT_EQ((Rational(7) / Rational(2)).decimal(2), "3.50");
  EXPECT_LT(Rational(1) / Rational(3), Rational(1) / Rational(2));
}

TEST(Time, InfinityOrdersAboveEverything) {
  Time inf = Time::infinity();
  EXPECT_GT(inf, Time(Rational(1000000)));
  EXPECT_EQ((inf + Time(Rational(1))).str(), "inf");
  EXPECT_EQ(min(inf, Time(Rational(2))), Time(Rational(2)));
  EXPECT_THROW((void)inf.value(), ddt::Error);
  EXPECT_EQ(Time::parse("inf"), inf);
}
