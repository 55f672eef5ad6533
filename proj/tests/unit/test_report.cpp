#include <doctest.h>

#include <string>
#include <vector>

#include "catamaj/report.hpp"

using namespace catamaj;

namespace {
ProbVector pv(std::vector<std::string> raw, bool normalize = false) {
  return make_prob_vector(raw, {.normalize = normalize});
}
std::vector<Scalar> lv(std::vector<std::string> raw) {
  std::vector<Scalar> v;
  for (auto& s : raw) v.push_back(Scalar::parse(s, Backend::Exact));
  return make_level_vector(std::move(v));
}
}  // namespace

TEST_CASE("decimal numbers keep their source text") {
  json j = parse_json_exact(R"({"x": [0.1, 3, "7/8", 1e-3], "b": true})");
  CHECK(j["x"][0] == "0.1");
  CHECK(j["x"][1] == 3);
  CHECK(j["x"][3] == "1e-3");
  auto v = scalars_from_json(j["x"], Backend::Exact);
  CHECK(v[0] == Scalar(Rational(1, 10)));
  CHECK(v[2] == Scalar(Rational(7, 8)));
  CHECK(v[3] == Scalar(Rational(1, 1000)));
  CHECK_THROWS_AS(parse_json_exact("{\"x\": [1,"), Error);
  CHECK_THROWS_AS(scalars_from_json(j["b"], Backend::Exact), Error);
}

TEST_CASE("trumping verdict round-trips bit-identically") {
  ProbVector x = pv({"0.61", "0.3045", "0.0435", "0.042"});
  ProbVector y = pv({"0.7315", "0.1211", "0.1374", "0.01"});
  TrumpingVerdict v = check_trumping(x, y);
  const std::string text = to_json(v).dump();
  TrumpingVerdict back = trumping_verdict_from_json(parse_json_exact(text));
  CHECK(identical(v, back));
  CHECK(to_json(back).dump() == text);

  json j = json::parse(text);
  CHECK(j["status"] == "TrumpingSufficient");
  CHECK(j["families"][0]["name"] == "closure");
  CHECK(j["families"][0]["per_k"][1]["lhs"] == v.closure_report->per_k[1].lhs.to_string());

  // Refuted verdicts carry no families and a null oracle.
  TrumpingVerdict same = check_trumping(x, x);
  TrumpingVerdict same_back = trumping_verdict_from_json(json::parse(to_json(same).dump()));
  CHECK(identical(same, same_back));
  CHECK(same_back.status == Status::Refuted);

  TrumpingVerdict other = back;
  other.closure_report->per_k[3].lhs = other.closure_report->per_k[3].lhs + Scalar(Rational(1, 1000000));
  CHECK_FALSE(identical(v, other));
}

TEST_CASE("thermo verdict round-trips") {
  ThermalSpec flat = thermal_spec_from_gibbs(lv({"1/4", "1/4", "1/4", "1/4"}));
  ThermoVerdict v = check_thermo(lv({"0.7315", "0.1211", "0.1374", "0.01"}), lv({"0.61", "0.3045", "0.0435", "0.042"}),
                                 flat);
  ThermoVerdict back = thermo_verdict_from_json(json::parse(to_json(v).dump()));
  CHECK(identical(v, back));
  CHECK(back.status == Status::TrumpingSufficient);
}

TEST_CASE("summary reports drop coefficient values") {
  ProbVector x = pv({"0.61", "0.3045", "0.0435", "0.042"});
  ProbVector y = pv({"0.7315", "0.1211", "0.1374", "0.01"});
  json j = to_json(check_trumping(x, y), false);
  CHECK_FALSE(j["families"][0]["per_k"][0].contains("lhs"));
  CHECK(j["families"][0]["per_k"][0].contains("holds"));
}
