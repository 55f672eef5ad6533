#pragma once

#include <optional>
#include <string>
#include <vector>

#include "catamaj/majorization.hpp"
#include "catamaj/sympoly.hpp"
#include "catamaj/vectors.hpp"

namespace catamaj {

struct ExponentPair {
  Real r = 0;
  long r_bar = 0;
  Real s = 0;
  long s_bar = 0;
  bool r_defined = false;
  bool s_defined = false;
};

// r = log n / (log y_1 - log(x_1 theta)), s = log n / (log x_min - log(y_min theta)),
// for x trumped by y. theta = 1 gives the plain LOCC exponents.
ExponentPair compute_exponents(const ProbVector& x, const ProbVector& y, const Scalar& theta = 1);

enum class Status { ClosureSufficient, TrumpingSufficient, Refuted, Inconclusive };
const char* to_string(Status s);

enum class WeightBranch { WeightLess, FullWeight };
const char* to_string(WeightBranch b);

struct EntropyComparison {
  EntropyValue lhs;  // H_1 of the trumped vector
  EntropyValue rhs;
  Real margin = 0;
  bool holds = false;  // lhs > rhs + margin
};

struct TrumpingVerdict {
  Status status = Status::Inconclusive;
  std::vector<std::string> reasons;
  std::size_t dim = 0;
  ExponentPair exponents;
  std::optional<ComparisonReport> closure_report;
  std::optional<ComparisonReport> negative_report;
  std::optional<EntropyComparison> h1;
  WeightBranch weight_branch = WeightBranch::FullWeight;
  std::optional<OracleReport> oracle;
};

struct TrumpingConfig {
  SympolyOptions sympoly;
  bool run_oracle = true;
  GridSpec oracle_grid;
};

// Loosening of the three condition groups. The defaults are the exact
// finite conditions; thermal checks with an approximate Gibbs vector widen them.
struct ConditionSlack {
  Scalar theta = 1;     // multiplies the trumped top entry and the trumping minimum entry
  Scalar a_r = 1;       // F(x) > a_r F(y) in the closure family
  Scalar a_s = 1;       // F(1/x^s) < F(1/y^s) / a_s in the negative family
  Real h1_margin = 0;   // H_1(x) > H_1(y) + margin
};

/// Evaluates the closure, entropy and negative-exponent condition groups for
/// x trumped by y. Both vectors must have the same dimension. Never refutes.
TrumpingVerdict evaluate_sufficient_conditions(const ProbVector& x, const ProbVector& y,
                                               const ConditionSlack& slack = {},
                                               const SympolyOptions& options = {});

/// Finite sufficient test for x ≺_T y, with refutation through necessary
/// conditions (top entry, support, H_1 and the optional oracle grid).
TrumpingVerdict check_trumping(const ProbVector& x, const ProbVector& y, const TrumpingConfig& config = {});

}  // namespace catamaj
