#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "catamaj/vectors.hpp"

using namespace catamaj;

namespace {
ProbVector pv(std::vector<std::string> raw, Backend backend = Backend::Exact) {
  return make_prob_vector(std::span<const std::string>(raw), {.backend = backend});
}
}  // namespace

TEST_CASE("vectors are validated and sorted") {
  ProbVector x = pv({"0.1", "0.6", "0.3"});
  CHECK(x[0] == Scalar(Rational(3, 5)));
  CHECK(x[2] == Scalar(Rational(1, 10)));
  CHECK(x.weight() == 3);

  CHECK_THROWS_AS(pv({}), Error);
  try {
    pv({"0.5", "0.6", "-0.1"});
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NegativeEntry);
  }
  try {
    pv({"0.5", "0.4"});
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SumNotOne);
  }
}

TEST_CASE("normalize rescales instead of rejecting") {
  std::vector<std::string> raw{"0.5", "0.3"};
  ProbVector x = make_prob_vector(std::span<const std::string>(raw), {.normalize = true});
  CHECK(x[0] == Scalar(Rational(5, 8)));
}

TEST_CASE("weight ignores zeros and padding") {
  ProbVector y = pv({"0.5", "0.25", "0.25", "0"});
  CHECK(y.weight() == 3);
  CHECK_FALSE(y.full_weight());
  CHECK(y.smallest_nonzero() == Scalar(Rational(1, 4)));
  CHECK(y.padded(6).dim() == 6);
  CHECK(y.padded(6).weight() == 3);
  CHECK(y.truncated(3).dim() == 3);
  CHECK_THROWS_AS(y.truncated(2), Error);
}

TEST_CASE("tensor product is sorted and exact") {
  ProbVector x = pv({"0.61", "0.3045", "0.0435", "0.042"});
  ProbVector c = pv({"0.6", "0.4"});
  ProbVector xc = tensor(x, c);
  CHECK(xc.dim() == 8);
  CHECK(xc[0] == Scalar(Rational(183, 500)));
  Scalar total = 0;
  for (const auto& e : xc.entries()) total += e;
  CHECK(total == Scalar(1));
}

TEST_CASE("pointwise transforms") {
  ProbVector x = pv({"0.5", "0.25", "0.25"});
  auto sq = pointwise_transform(x, Transform::power(2));
  CHECK(sq[0] == Scalar(Rational(1, 4)));
  CHECK(sq[2] == Scalar(Rational(1, 16)));
  auto inv = pointwise_transform(x, Transform::reciprocal());
  CHECK(inv[0] == Scalar(4));
  CHECK(inv[2] == Scalar(2));

  ProbVector y = pv({"1", "0"});
  auto y2 = pointwise_transform(y, Transform::power(3));
  CHECK(y2[1].is_zero());
  CHECK_THROWS_AS(pointwise_transform(y, Transform::reciprocal()), Error);
}

TEST_CASE("scaled p-norm special cases") {
  ProbVector x = pv({"0.5", "0.25", "0.25"});
  CHECK(scaled_p_norm(x, 1) == Scalar(Rational(1, 3)));
  CHECK(scaled_p_norm(x, 2).to_double() == doctest::Approx(std::sqrt(0.375 / 3)));
  // geometric mean
  CHECK(scaled_p_norm(x, 0).to_double() == doctest::Approx(std::cbrt(0.5 * 0.25 * 0.25)));
  // harmonic mean
  CHECK(scaled_p_norm(x, -1) == Scalar(Rational(3, 10)));

  ProbVector y = pv({"0.75", "0.25", "0"});
  CHECK(scaled_p_norm(y, -2).is_zero());
  CHECK(scaled_p_norm(y, 0).is_zero());
}

TEST_CASE("entropies") {
  ProbVector u = uniform_vector(4);
  CHECK(static_cast<double>(shannon_entropy(u.span()).bits) == doctest::Approx(2.0));
  CHECK(static_cast<double>(renyi_entropy(u, 2).bits) == doctest::Approx(2.0));
  CHECK(static_cast<double>(renyi_entropy(u, -3).bits) == doctest::Approx(-2.0));
  CHECK(static_cast<double>(burg_entropy(u).bits) == doctest::Approx(-2.0));

  ProbVector x = pv({"0.5", "0.25", "0.25"});
  CHECK(static_cast<double>(shannon_entropy(x.span()).bits) == doctest::Approx(1.5));
  // H_2 = -log2(sum x^2)
  CHECK(static_cast<double>(renyi_entropy(x, 2).bits) == doctest::Approx(-std::log2(0.375)));
  CHECK_THROWS_AS(renyi_entropy(x, 0), Error);

  ProbVector y = pv({"0.75", "0.25", "0"});
  CHECK(renyi_entropy(y, -1).neg_inf);
  CHECK(burg_entropy(y).neg_inf);
  CHECK(EntropyValue::minus_infinity() < renyi_entropy(y, 2));
}

TEST_CASE("float backend keeps tolerance on the sum") {
  ProbVector x = pv({"0.3333333333", "0.3333333333", "0.3333333334"}, Backend::Float);
  CHECK(x.backend() == Backend::Float);
  CHECK(x.weight() == 3);
}
