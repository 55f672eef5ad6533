#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "catamaj/coherence.hpp"

using namespace catamaj;

namespace {
double d(const Real& r) { return static_cast<double>(r); }
PureState amp(std::vector<std::string> a) { return PureState::from_amplitudes(a); }
}  // namespace

TEST_CASE("amplitude ingestion") {
  PureState psi = amp({"sqrt(0.4)", "sqrt(0.4)", "sqrt(0.1)", "sqrt(0.1)"});
  CHECK(psi.weights()[0] == Scalar(Rational(2, 5)));
  PureState half = amp({"0.6", "0.8"});
  CHECK(half.weights()[1] == Scalar(Rational(16, 25)));
  CHECK_THROWS_AS(amp({"0.5", "0.5"}), Error);
  CHECK_THROWS_AS(amp({"-0.6", "0.8"}), Error);
  PureState probs = PureState::from_probabilities({Scalar(Rational(1, 2)), Scalar(Rational(1, 2))});
  CHECK(probs.dim() == 2);
}

TEST_CASE("dephasing") {
  CHECK(dephase_pure(amp({"0", "1", "0"})) == ProbVector::from_scalars({Scalar(1), Scalar(0), Scalar(0)}));
  CHECK(dephase_pure(amp({"sqrt(1/3)", "sqrt(1/3)", "sqrt(1/3)"})) == uniform_vector(3));
  ProbVector q = dephase_pure(amp({"sqrt(0.1)", "sqrt(0.4)", "sqrt(0.1)", "sqrt(0.4)"}));
  CHECK(q[0] == Scalar(Rational(2, 5)));
  CHECK(q[3] == Scalar(Rational(1, 10)));

  PureState a = amp({"sqrt(0.6)", "sqrt(0.4)"});
  PureState b = amp({"sqrt(0.5)", "sqrt(0.25)", "sqrt(0.25)"});
  CHECK(dephase_pure(tensor(a, b)) == tensor(dephase_pure(a), dephase_pure(b)));
}

TEST_CASE("free coherence of pure states") {
  PureState basis = amp({"1", "0"});
  for (int p : {0, 1, 2, 3}) CHECK(free_coherence_pure(basis, p) == 0);

  PureState plus = amp({"sqrt(0.5)", "sqrt(0.5)"});
  CHECK(d(free_coherence_pure(plus, 2)) == doctest::Approx(1.0));
  CHECK(d(free_coherence_pure(plus, 1)) == doctest::Approx(1.0));
  CHECK(d(free_coherence_pure(plus, 0)) == doctest::Approx(1.0));

  PureState psi = amp({"sqrt(0.4)", "sqrt(0.4)", "sqrt(0.1)", "sqrt(0.1)"});
  // p = 1/2: 2 log2(sum q^(3/2))
  double expected = -2.0 * std::log2(2 * std::pow(0.4, 1.5) + 2 * std::pow(0.1, 1.5));
  CHECK(d(free_coherence_pure(psi, Scalar(Rational(1, 2)))) == doctest::Approx(expected));
  CHECK_THROWS_AS(free_coherence_pure(psi, -1), Error);
}

TEST_CASE("catalytic coherent conversion") {
  PureState psi = amp({"sqrt(0.4)", "sqrt(0.4)", "sqrt(0.1)", "sqrt(0.1)"});
  PureState phi = amp({"sqrt(0.5)", "sqrt(0.25)", "sqrt(0.25)"});
  CoherentVerdict v = check_coherent_trumping(psi, phi);
  CHECK(v.trumping.status == Status::TrumpingSufficient);
  CHECK(v.trumping.exponents.r_bar == 7);
  CHECK(v.trumping.weight_branch == WeightBranch::WeightLess);
  CHECK(v.coherence.consistent);
  CHECK(v.coherence.samples.front().p == 0);
  CHECK(v.coherence.samples.back().p == 2);

  PureState chi = amp({"sqrt(0.6)", "sqrt(0.4)"});
  CHECK(majorizes(dephase_pure(tensor(phi, chi)), dephase_pure(tensor(psi, chi))));
  CHECK_FALSE(majorizes(dephase_pure(phi), dephase_pure(psi)));

  CoherentVerdict same = check_coherent_trumping(psi, psi);
  CHECK(same.trumping.status == Status::Refuted);
  CHECK(same.coherence.consistent);

  CoherentVerdict back = check_coherent_trumping(phi, psi);
  CHECK(back.trumping.status == Status::Refuted);
  CHECK_FALSE(back.coherence.consistent);
}

TEST_CASE("uniform superposition to a basis state") {
  PureState uni = amp({"sqrt(1/3)", "sqrt(1/3)", "sqrt(1/3)"});
  PureState basis = amp({"1", "0", "0"});
  CoherentVerdict v = check_coherent_trumping(uni, basis);
  CHECK(v.trumping.status == Status::TrumpingSufficient);
  REQUIRE(v.trumping.closure_report);
  CHECK(v.trumping.closure_report->all_hold);
}
