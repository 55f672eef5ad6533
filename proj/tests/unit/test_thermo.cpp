#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "catamaj/thermo.hpp"

using namespace catamaj;

namespace {
std::vector<Scalar> lv(std::vector<std::string> raw, bool normalize = false) {
  std::vector<Scalar> v;
  for (auto& s : raw) v.push_back(Scalar::parse(s, Backend::Exact));
  return make_level_vector(std::move(v), {.normalize = normalize});
}
double d(const Real& r) { return static_cast<double>(r); }

ThermalSpec paper_spec() {
  return gibbs_vector({Scalar(0), Scalar(1), Scalar(2), Scalar(3)}, Scalar(Rational(6, 5)));
}
const std::vector<std::string> kRho{"0.936918", "0.0467542", "0.0159775", "0.000350242"};
const std::vector<std::string> kSigma{"0.862942", "0.129846", "0.00558697", "0.00162474"};
}  // namespace

TEST_CASE("Gibbs vectors") {
  ThermalSpec hot = gibbs_vector({Scalar(0), Scalar(1), Scalar(5)}, Scalar(0));
  for (const auto& g : hot.g) CHECK(g == Scalar(Rational(1, 3)));
  CHECK(hot.Z->is_exact());

  ThermalSpec single = gibbs_vector({Scalar(7)}, Scalar(2));
  CHECK(single.g[0].to_double() == doctest::Approx(1.0));

  ThermalSpec s = paper_spec();
  CHECK(s.Z->to_double() == doctest::Approx(1.419235887648907).epsilon(1e-14));
  CHECK(s.g[0].to_double() == doctest::Approx(0.7046045049329964).epsilon(1e-14));
  CHECK(s.g[3].to_double() == doctest::Approx(0.01925241792790118).epsilon(1e-14));
  CHECK(s.g_min() == s.g[3]);
  CHECK_THROWS_AS(gibbs_vector({}, Scalar(1)), Error);
}

TEST_CASE("rational approximation") {
  EmbeddingSpec exact = rational_approx(lv({"0.5", "0.25", "0.25"}), Rational(1, 1000));
  CHECK(exact.nu == std::vector<long>{2, 1, 1});
  CHECK(exact.N == 4);
  CHECK(exact.eps.is_zero());

  EmbeddingSpec uni = rational_approx(lv({"0.2", "0.2", "0.2", "0.2", "0.2"}), Rational(1, 10));
  CHECK(uni.nu == std::vector<long>(5, 1));

  ThermalSpec s = paper_spec();
  for (Rational eps : {Rational(1, 10), Rational(1, 100), Rational(1, 1000)}) {
    EmbeddingSpec e = rational_approx(s.g, eps);
    CHECK(e.eps.real() <= Real(eps));
    long total = 0;
    for (long v : e.nu) total += v;
    CHECK(total == e.N);
  }
  try {
    rational_approx(s.g, Rational(0));
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EpsNonPositive);
  }
}

TEST_CASE("embedding") {
  EmbeddingSpec e = embedding_for(lv({"0.5", "0.25", "0.25"}), lv({"0.5", "0.25", "0.25"}));
  ProbVector u = embed(e.g_eps, e);
  CHECK(u == uniform_vector(4));

  ProbVector same = embed(lv({"0.7", "0.2", "0.1"}), embedding_for(lv({"1/3", "1/3", "1/3"}), lv({"1/3", "1/3", "1/3"})));
  CHECK(same[0] == Scalar(Rational(7, 10)));

  EmbeddingSpec one = embedding_for(lv({"1"}), lv({"1"}));
  CHECK(one.N == 1);
  CHECK_THROWS_AS(embed(lv({"0.5", "0.5"}), e), Error);
}

TEST_CASE("Renyi divergence") {
  auto x = lv({"0.5", "0.5"});
  auto g = lv({"0.75", "0.25"});
  CHECK(d(renyi_divergence(x, g, 1).bits) == doctest::Approx(0.5 * std::log2(2.0 / 3.0) + 0.5));
  for (int p : {-3, -1, 2, 5}) CHECK(renyi_divergence(x, x, p).bits == 0);
  CHECK(renyi_divergence(x, x, 1).bits == 0);

  // D_p(x||u) = sign(p) log n - H_p(x)
  auto q = lv({"0.6", "0.3", "0.1"});
  auto u = lv({"1/3", "1/3", "1/3"});
  ProbVector qv = ProbVector::from_scalars(q);
  for (int p : {2, 3, -2}) {
    Real lhs = renyi_divergence(q, u, p).bits;
    Real rhs = (p > 0 ? 1 : -1) * log2(Real(3)) - renyi_entropy(qv, p).bits;
    CHECK(mp::abs(lhs - rhs) < Real("1e-70"));
  }

  auto pure = lv({"1", "0"});
  CHECK(renyi_divergence(pure, g, -1).pos_inf);
  CHECK(d(renyi_divergence(pure, g, 0).bits) == doctest::Approx(-std::log2(0.75)));
  try {
    renyi_divergence(g, pure, 2);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SupportViolation);
  }
}

TEST_CASE("free energy") {
  ThermalSpec s = paper_spec();
  DivergenceValue at_gibbs = free_energy(s.g, s, 2);
  CHECK(d(at_gibbs.bits) == doctest::Approx(-std::log2(1.419235887648907)));
  CHECK(free_energy(s.g, s, 2, Real(0)).bits == 0);

  auto rho = lv(kRho, true);
  CHECK(d(renyi_divergence(rho, s.g, 1).bits) == doctest::Approx(0.2491553903904022).epsilon(1e-13));
  CHECK(d(free_energy(rho, s, 1).bits) == doctest::Approx(-0.2559590056735685).epsilon(1e-13));
  CHECK(d(renyi_divergence(rho, s.g, 2).bits) == doctest::Approx(0.3335697894985344).epsilon(1e-13));
}

TEST_CASE("continuity and slack factors") {
  CHECK(continuity_bound(Real(3), Real(0), Real("0.1")) == 0);
  CHECK(d(continuity_bound(Real(1), Real("0.1"), Real("0.1"))) == doctest::Approx(1.0));
  CHECK(d(continuity_bound(Real(2), Real("0.5"), Real("0.5"))) == doctest::Approx(2.0));
  CHECK(d(continuity_bound(Real("0.5"), Real("0.5"), Real("0.5"))) == doctest::Approx(1.0));

  SlackFactors none = slack_factors(Real(0), Real("0.1"), 4, 3, 2);
  CHECK(none.a_r == 1);
  CHECK(none.a_s == 1);

  SlackFactors forced = slack_factors(Real("0.25"), Real("0.25"), 4, 2, 1);
  CHECK(d(forced.a_r) == doctest::Approx(std::sqrt(2.0)));
  CHECK(d(forced.a_s) == doctest::Approx(std::pow(2.0, 3.75)));

  auto g = lv({"0.5", "0.5"});
  auto ge = lv({"0.75", "0.25"});
  CHECK(d(divergence_shift_bound(g, ge)) == doctest::Approx(1.0));
}

TEST_CASE("Corollary path with a uniform Gibbs vector") {
  ThermalSpec flat = thermal_spec_from_gibbs(lv({"1/4", "1/4", "1/4", "1/4"}));
  auto rho = lv({"0.7315", "0.1211", "0.1374", "0.01"});
  auto sigma = lv({"0.61", "0.3045", "0.0435", "0.042"});
  ThermoVerdict v = check_thermo(rho, sigma, flat);
  CHECK(v.path == ThermoPath::RationalCorollary);
  CHECK(v.status == Status::TrumpingSufficient);
  CHECK(v.slack.a_r == 1);
  CHECK(v.slack.a_s == 1);
  REQUIRE(v.conditions);
  CHECK(v.conditions->exponents.r_bar == 8);
  REQUIRE(v.oracle);
  CHECK(v.oracle->consistent);

  ThermoVerdict same = check_thermo(rho, rho, flat);
  CHECK(same.status == Status::Refuted);

  ThermoVerdict back = check_thermo(sigma, rho, flat);
  CHECK(back.status == Status::Refuted);
}

TEST_CASE("irrational Gibbs vector takes the approximate path") {
  ThermalSpec s = paper_spec();
  auto rho = lv(kRho, true);
  auto sigma = lv(kSigma, true);
  CHECK_FALSE(thermo_majorizes(rho, sigma, s.g));

  ThermoOptions uniform;
  uniform.g_eps = lv({"1/4", "1/4", "1/4", "1/4"});
  ThermoVerdict v = check_thermo(rho, sigma, s, uniform);
  CHECK(v.path == ThermoPath::IrrationalTheorem);
  CHECK(v.embedding.N == 4);
  CHECK(d(v.embedding.eps.real()) == doctest::Approx(0.909209).epsilon(1e-6));
  CHECK(d(v.delta) == doctest::Approx(47.2257).epsilon(1e-5));
  // The top-entry gap is swamped by (1 + eps/g_min)^2.
  CHECK(v.status == Status::Inconclusive);
  REQUIRE(v.conditions);
  CHECK_FALSE(v.conditions->exponents.r_defined);
  REQUIRE(v.oracle);
  CHECK(v.oracle->consistent);

  ThermoOptions fine;
  fine.eps = Rational(1, 10000);
  ThermoVerdict capped = check_thermo(rho, sigma, s, fine);
  CHECK(capped.status == Status::Inconclusive);
  CHECK(capped.embedding.N == 1767);

  ThermoOptions tiny_cap;
  tiny_cap.embedding_cap = 100;
  ThermoVerdict big = check_thermo(rho, sigma, s, tiny_cap);
  CHECK(big.status == Status::Inconclusive);
  CHECK(big.reasons.front().find("embedding too large") != std::string::npos);
}

TEST_CASE("divergence scan") {
  ThermalSpec s = paper_spec();
  auto rho = lv(kRho, true);
  DivergenceScan same = divergence_scan(rho, rho, s.g);
  CHECK_FALSE(same.consistent);
  CHECK(same.refuted_at == "p=-20");
  auto rows = divergence_rows(rho, s.g, s.g, GridSpec::parse("-1:2:0.5").points());
  REQUIRE(rows.size() == 5);
  CHECK(rows[0].sigma.bits == 0);
}
