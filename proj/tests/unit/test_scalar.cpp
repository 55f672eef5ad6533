#include <doctest.h>

#include "catamaj/scalar.hpp"

using namespace catamaj;

TEST_CASE("parse_rational accepts decimal, scientific and fraction forms") {
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("-1.5e-2") == Rational(-3, 200));
  CHECK(parse_rational("3/12") == Rational(1, 4));
  CHECK(parse_rational("7") == Rational(7));
  CHECK_THROWS_AS(parse_rational("abc"), Error);
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational(""), Error);
}

TEST_CASE("rational_from_double uses the shortest decimal form") {
  CHECK(rational_from_double(0.1) == Rational(1, 10));
  CHECK(rational_from_double(0.7315) == Rational(7315, 10000));
}

TEST_CASE("exact arithmetic stays exact") {
  Scalar a = Scalar::parse("1/3", Backend::Exact);
  Scalar b = Scalar::parse("1/6", Backend::Exact);
  Scalar s = a + b;
  REQUIRE(s.is_exact());
  CHECK(s == Scalar(Rational(1, 2)));
  CHECK((a * b).rational() == Rational(1, 18));
  CHECK((a / b).rational() == Rational(2));
  CHECK(pow(a, 3).rational() == Rational(1, 27));
  CHECK(pow(a, -2).rational() == Rational(9));
}

TEST_CASE("mixing backends promotes to float") {
  Scalar a = Scalar::parse("0.5", Backend::Exact);
  Scalar b = Scalar::parse("0.25", Backend::Float);
  Scalar s = a + b;
  CHECK_FALSE(s.is_exact());
  CHECK(s.to_double() == doctest::Approx(0.75));
  CHECK_THROWS_AS(s.rational(), Error);
}

TEST_CASE("comparison is consistent across backends") {
  Scalar third = Scalar(Rational(1, 3));
  Scalar f = Scalar::parse("0.3333", Backend::Float);
  CHECK(f < third);
  CHECK(third > f);
  CHECK(Scalar(2) > Scalar(Rational(3, 2)));
}

TEST_CASE("log2 of exact values") {
  CHECK(log2(Scalar(Rational(1, 8))) == Real(-3));
  CHECK(static_cast<double>(log2(Scalar(Rational(3, 4)))) == doctest::Approx(-0.4150374992788438));
}

TEST_CASE("pow with non-integer exponent goes through floats") {
  Scalar r = pow(Scalar(Rational(1, 4)), Scalar(Rational(1, 2)));
  CHECK_FALSE(r.is_exact());
  CHECK(r.to_double() == doctest::Approx(0.5));
  CHECK(pow(Scalar(0), Scalar(Rational(1, 2))).is_zero());
}

TEST_CASE("string round trip is lossless") {
  Scalar q = Scalar(Rational(-22, 7));
  CHECK(Scalar::from_string(q.to_string()).same_representation(q));

  Scalar f = Scalar(Real(1) / Real(3));
  Scalar back = Scalar::from_string(f.to_string());
  CHECK_FALSE(back.is_exact());
  CHECK(back.real() == f.real());
}

TEST_CASE("float precision floor") {
  unsigned saved = float_precision();
  CHECK_THROWS_AS(set_float_precision(64), Error);
  set_float_precision(512);
  CHECK(float_precision() == 512);
  set_float_precision(saved);
}
