#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "catamaj/majorization.hpp"

using namespace catamaj;

namespace {
ProbVector pv(std::vector<std::string> raw, bool normalize = false) {
  return make_prob_vector(std::span<const std::string>(raw), {.normalize = normalize});
}
std::vector<Scalar> sv(std::vector<std::string> raw) {
  std::vector<Scalar> v;
  for (auto& s : raw) v.push_back(Scalar::parse(s, Backend::Exact));
  return v;
}
}  // namespace

TEST_CASE("Nielsen majorization") {
  ProbVector flat = pv({"0.5", "0.5"});
  ProbVector pure = pv({"1"});
  CHECK(majorizes(pure, flat));
  CHECK_FALSE(majorizes(flat, pure));
  CHECK(majorizes(flat, flat));

  ProbVector x = pv({"0.61", "0.3045", "0.0435", "0.042"});
  ProbVector y = pv({"0.7315", "0.1211", "0.1374", "0.01"});
  CHECK_FALSE(majorizes(y, x));
  CHECK_FALSE(majorizes(x, y));
}

TEST_CASE("catalyst verification in LOCC mode") {
  ProbVector x = pv({"0.61", "0.3045", "0.0435", "0.042"});
  ProbVector y = pv({"0.7315", "0.1211", "0.1374", "0.01"});
  Catalyst c{pv({"0.48", "0.24", "0.16", "0.12"})};
  CHECK(verify_catalyst(x, y, c, LoccMode{}));
  CHECK_FALSE(verify_catalyst(x, y, Catalyst{pv({"1"})}, LoccMode{}));

  ProbVector a = pv({"0.4", "0.4", "0.1", "0.1"});
  ProbVector b = pv({"0.5", "0.25", "0.25"});
  CHECK(verify_catalyst(a, b, Catalyst{pv({"0.6", "0.4"})}, LoccMode{}));
}

TEST_CASE("Lorenz curves against a two-level Gibbs vector") {
  auto g = sv({"2/3", "1/3"});
  auto p = sv({"1", "0"});
  CHECK(thermo_majorizes(p, g, g));
  CHECK_FALSE(thermo_majorizes(g, p, g));
  auto excited = sv({"0", "1"});
  CHECK(thermo_majorizes(excited, g, g));
  // The Gibbs state is thermo-majorized by everything.
  auto mixed = sv({"1/3", "2/3"});
  CHECK(thermo_majorizes(mixed, g, g));
  CHECK_FALSE(thermo_majorizes(g, mixed, g));
  // (1/3, 2/3) reaches height 2/3 at g-abscissa 1/3; (1, 0) reaches 1/2 there.
  CHECK_FALSE(thermo_majorizes(p, mixed, g));
  CHECK_FALSE(thermo_majorizes(mixed, p, g));
}

TEST_CASE("Lorenz input validation") {
  auto g = sv({"1", "0"});
  auto p = sv({"1", "0"});
  try {
    thermo_majorizes(p, p, g);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::GibbsZeroEntry);
  }
  CHECK_THROWS_AS(thermo_majorizes(p, sv({"1"}), sv({"1/2", "1/2"})), Error);
}

TEST_CASE("uniform Gibbs vector reduces to majorization") {
  auto u = sv({"1/4", "1/4", "1/4", "1/4"});
  auto x = sv({"0.4", "0.1", "0.4", "0.1"});
  auto y = sv({"0.25", "0.5", "0", "0.25"});
  CHECK_FALSE(thermo_majorizes(x, y, u));
  CHECK_FALSE(thermo_majorizes(y, x, u));
  auto c = sv({"0.6", "0.4"});
  ThermoMode mode{u, {}};
  // Thermal transitions flow toward the more mixed state, LOCC ones away from it.
  CHECK(verify_catalyst(y, x, c, mode));
  CHECK_FALSE(verify_catalyst(x, y, c, mode));
}

TEST_CASE("grid point counts") {
  CHECK(count_sorted_grid_points(1000, 2, 1'000'000) == 501);
  CHECK(count_sorted_grid_points(10, 3, 1'000'000) == 14);
  CHECK(count_sorted_grid_points(10, 1, 1'000'000) == 1);
  CHECK(count_sorted_grid_points(1000, 8, 1000) == 1000);
}

TEST_CASE("catalyst search returns the lexicographically greatest point") {
  ProbVector x = pv({"0.46519", "0.27313", "0.20361", "0.057807"}, true);
  ProbVector y = pv({"0.46843", "0.2693", "0.20646", "0.05581"});
  SearchResult one = search_catalyst(x.span(), y.span(), 2, Rational(1, 1000), LoccMode{});
  REQUIRE(one.catalyst);
  CHECK_FALSE(one.trivial);
  CHECK(one.grid_points == 501);
  CHECK(one.catalyst->vector[0] == Scalar(Rational(634, 1000)));
  CHECK(verify_catalyst(x, y, *one.catalyst, LoccMode{}));

  SearchResult many = search_catalyst(x.span(), y.span(), 2, Rational(1, 1000), LoccMode{}, {.threads = 3});
  REQUIRE(many.catalyst);
  CHECK(many.catalyst->vector == one.catalyst->vector);
}

TEST_CASE("catalyst search shortcuts and limits") {
  ProbVector flat = pv({"0.5", "0.5"});
  ProbVector pure = pv({"1", "0"});
  SearchResult r = search_catalyst(flat.span(), pure.span(), 3, Rational(1, 10), LoccMode{});
  CHECK(r.trivial);
  REQUIRE(r.catalyst);
  CHECK(r.catalyst->dim() == 1);

  // No catalyst can reverse majorization.
  SearchResult none = search_catalyst(pure.span(), flat.span(), 2, Rational(1, 20), LoccMode{});
  CHECK_FALSE(none.catalyst);

  try {
    search_catalyst(flat.span(), pure.span(), 6, Rational(1, 1000), LoccMode{});
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::GridTooLarge);
  }
  CHECK_THROWS_AS(search_catalyst(flat.span(), pure.span(), 2, Rational(3, 10), LoccMode{}), Error);
}

TEST_CASE("grid specification") {
  GridSpec g = GridSpec::parse("-5:5:0.1");
  CHECK(g.points().size() == 99);
  GridSpec d;
  CHECK(d.points().size() == 799);
  CHECK_THROWS_AS(GridSpec::parse("1:2"), Error);
  CHECK_THROWS_AS(GridSpec::parse("1:2:0"), Error);
  CHECK_THROWS_AS(GridSpec::parse("2:1:0.1"), Error);
}

TEST_CASE("oracle scan") {
  ProbVector x = pv({"0.61", "0.3045", "0.0435", "0.042"});
  ProbVector y = pv({"0.7315", "0.1211", "0.1374", "0.01"});
  OracleReport ok = oracle_scan(x, y);
  CHECK(ok.consistent);
  CHECK(ok.h1_ok);
  CHECK(ok.burg_ok);
  CHECK(ok.refuted_at.empty());

  OracleReport same = oracle_scan(x, x);
  CHECK_FALSE(same.consistent);
  CHECK(same.refuted_at == "p=-20");

  OracleReport rev = oracle_scan(y, x);
  CHECK_FALSE(rev.consistent);

  ProbVector flat = pv({"0.5", "0.5", "0"});
  ProbVector pure = pv({"1"});
  CHECK(oracle_scan(flat, pure).consistent);
  OracleReport bad = oracle_scan(pure, flat);
  CHECK_FALSE(bad.consistent);
  CHECK_FALSE(bad.burg_ok);
}

TEST_CASE("support alignment trims common zeros") {
  ProbVector a = pv({"0.5", "0.5", "0", "0"});
  ProbVector b = pv({"0.7", "0.2", "0.1"});
  auto [x, y] = align_supports(a, b);
  CHECK(x.dim() == 3);
  CHECK(y.dim() == 3);
}

TEST_CASE("scan rows") {
  ProbVector x = pv({"0.5", "0.25", "0.25"});
  ProbVector y = pv({"0.75", "0.25", "0"});
  auto grid = GridSpec::parse("-1:2:0.5").points();
  auto rows = scan_rows(x, y, grid);
  REQUIRE(rows.size() == 5);
  CHECK(rows.front().p == Rational(-1));
  CHECK(rows.front().norm_y.is_zero());
  CHECK(rows.front().renyi_y.neg_inf);
  CHECK(rows.back().norm_x.to_double() == doctest::Approx(std::sqrt(0.375 / 3)));
}
