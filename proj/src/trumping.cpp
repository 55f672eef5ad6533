#include "catamaj/trumping.hpp"

#include <cmath>

namespace catamaj {

namespace {

// Keeps r_bar representable; anything this large fails the degree cap anyway.
constexpr double kMaxTruncationOrder = 1e12;

long floor_plus_one(const Real& v) {
  Real f = mp::floor(v + 1);
  if (f > Real(kMaxTruncationOrder)) return static_cast<long>(kMaxTruncationOrder);
  return f.convert_to<long>();
}

std::string k_list(const ComparisonReport& rep) {
  std::string out;
  int shown = 0;
  for (const auto& c : rep.per_k) {
    if (c.identity || c.holds) continue;
    if (shown == 5) {
      out += ", ...";
      break;
    }
    out += (shown++ ? ", " : "") + std::to_string(c.k);
  }
  return out;
}

std::string family_failure(const char* name, const ComparisonReport& rep) {
  if (rep.any_undecided) return std::string(name) + " family undecided within float margin";
  if (rep.first_failure() < 0) return std::string(name) + " family has no informative entry";
  return std::string(name) + " family fails at k = " + k_list(rep);
}

}  // namespace

const char* to_string(Status s) {
  switch (s) {
    case Status::ClosureSufficient: return "ClosureSufficient";
    case Status::TrumpingSufficient: return "TrumpingSufficient";
    case Status::Refuted: return "Refuted";
    case Status::Inconclusive: return "Inconclusive";
  }
  return "?";
}

const char* to_string(WeightBranch b) {
  return b == WeightBranch::WeightLess ? "WeightLess" : "FullWeight";
}

ExponentPair compute_exponents(const ProbVector& x_in, const ProbVector& y_in, const Scalar& theta) {
  const std::size_t n = std::max(x_in.dim(), y_in.dim());
  const ProbVector x = x_in.padded(n);
  const ProbVector y = y_in.padded(n);
  const Real log_n = log2(Real(static_cast<long>(n)));
  const Real log_theta = log2(theta);

  ExponentPair e;
  const Real top_gap = log2(y.largest()) - log2(x.largest()) - log_theta;
  if (top_gap > 0) {
    e.r_defined = true;
    e.r = log_n / top_gap;
    e.r_bar = floor_plus_one(e.r);
  }
  if (x.full_weight() && y.full_weight()) {
    const Real min_gap = log2(x.smallest_nonzero()) - log2(y.smallest_nonzero()) - log_theta;
    if (min_gap > 0) {
      e.s_defined = true;
      e.s = log_n / min_gap;
      e.s_bar = floor_plus_one(e.s);
    }
  }
  return e;
}

TrumpingVerdict evaluate_sufficient_conditions(const ProbVector& x, const ProbVector& y, const ConditionSlack& slack,
                                               const SympolyOptions& options) {
  if (x.dim() != y.dim())
    throw Error(ErrorCode::DimMismatch, "condition vectors must share a dimension");
  const std::size_t n = x.dim();

  TrumpingVerdict v;
  v.dim = n;
  v.exponents = compute_exponents(x, y, slack.theta);
  v.weight_branch = y.weight() < n ? WeightBranch::WeightLess : WeightBranch::FullWeight;

  EntropyComparison h1;
  h1.lhs = shannon_entropy(x.span());
  h1.rhs = shannon_entropy(y.span());
  h1.margin = slack.h1_margin;
  h1.holds = h1.lhs.bits - h1.rhs.bits > slack.h1_margin;
  v.h1 = h1;

  if (!v.exponents.r_defined) {
    v.status = Status::Inconclusive;
    v.reasons.push_back("r undefined");
    return v;
  }
  const long r_bar = v.exponents.r_bar;
  const auto degree = static_cast<double>(n) * static_cast<double>(r_bar);
  if (degree > static_cast<double>(options.degree_cap)) {
    v.status = Status::Inconclusive;
    v.reasons.push_back("degree cap: n*r_bar = " + std::to_string(static_cast<long long>(degree)) +
                        " exceeds " + std::to_string(options.degree_cap));
    return v;
  }

  // k = r_bar is an identity for distributions and is recorded but not counted.
  const int r = static_cast<int>(r_bar);
  v.closure_report = compare_F_family(x.span(), y.span(), r, r, static_cast<int>(n) * r, Relation::StrictGreater,
                                      slack.a_r, options);
  if (!v.closure_report->all_hold) {
    v.status = Status::Inconclusive;
    v.reasons.push_back(family_failure("closure", *v.closure_report));
    return v;
  }
  v.status = Status::ClosureSufficient;

  bool negative_ok = false;
  if (v.weight_branch == WeightBranch::WeightLess) {
    negative_ok = true;
  } else if (!v.exponents.s_defined) {
    v.reasons.push_back("s undefined");
  } else {
    const Scalar power(-v.exponents.s_bar);
    auto inv_x = pointwise_transform(x, Transform::power(power));
    auto inv_y = pointwise_transform(y, Transform::power(power));
    SympolyOptions neg = options;
    neg.skip_identities = false;
    v.negative_report = compare_F_family(inv_x, inv_y, 1, 1, static_cast<int>(n), Relation::StrictLess,
                                         Scalar(1) / slack.a_s, neg);
    negative_ok = v.negative_report->all_hold;
    if (!negative_ok) v.reasons.push_back(family_failure("negative-exponent", *v.negative_report));
  }
  if (!h1.holds) v.reasons.push_back("H1 condition fails");
  if (negative_ok && h1.holds) v.status = Status::TrumpingSufficient;
  return v;
}

TrumpingVerdict check_trumping(const ProbVector& x_in, const ProbVector& y_in, const TrumpingConfig& config) {
  auto [x, y] = align_supports(x_in, y_in);

  TrumpingVerdict v;
  v.dim = x.dim();
  auto refute = [&](std::string reason) {
    v.status = Status::Refuted;
    v.reasons.push_back(std::move(reason));
    v.h1 = EntropyComparison{shannon_entropy(x.span()), shannon_entropy(y.span()), Real(0), false};
    v.h1->holds = v.h1->lhs > v.h1->rhs;
    v.exponents = compute_exponents(x, y);
    v.weight_branch = y.weight() < v.dim ? WeightBranch::WeightLess : WeightBranch::FullWeight;
    return v;
  };

  if (x.largest() > y.largest()) return refute("x1 > y1");
  if (x.weight() < y.weight()) return refute("weight(x) < weight(y)");
  if (!(shannon_entropy(x.span()) > shannon_entropy(y.span()))) return refute("H1(x) <= H1(y)");

  try {
    v = evaluate_sufficient_conditions(x, y, {}, config.sympoly);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegreeCapExceeded) throw;
    v.status = Status::Inconclusive;
    v.reasons.push_back(std::string("degree cap: ") + e.what());
  }

  if (config.run_oracle) {
    v.oracle = oracle_scan(x, y, config.oracle_grid);
    if (!v.oracle->consistent) {
      v.status = Status::Refuted;
      v.reasons.push_back("oracle refutes at " + v.oracle->refuted_at);
    }
  }
  return v;
}

}  // namespace catamaj
