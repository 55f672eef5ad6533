#include "catamaj/coherence.hpp"

#include <algorithm>
#include <cctype>

#include "catamaj/thermo.hpp"

namespace catamaj {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

PureState PureState::from_amplitudes(const std::vector<std::string>& amplitudes, const VectorOptions& options) {
  std::vector<Scalar> weights;
  weights.reserve(amplitudes.size());
  for (const auto& raw : amplitudes) {
    std::string_view s = trim(raw);
    if (s.starts_with("sqrt(") && s.ends_with(")")) {
      Scalar q = Scalar::parse(s.substr(5, s.size() - 6), options.backend);
      if (q.sign() < 0) throw Error(ErrorCode::NegativeEntry, "negative value under sqrt: " + raw);
      weights.push_back(std::move(q));
    } else {
      Scalar a = Scalar::parse(s, options.backend);
      if (a.sign() < 0) throw Error(ErrorCode::NegativeEntry, "amplitude magnitudes must be non-negative: " + raw);
      weights.push_back(a * a);
    }
  }
  return from_probabilities(std::move(weights), options);
}

PureState PureState::from_probabilities(std::vector<Scalar> weights, const VectorOptions& options) {
  PureState s;
  s.weights_ = make_level_vector(std::move(weights), options);
  return s;
}

PureState tensor(const PureState& a, const PureState& b) {
  return PureState::from_probabilities(kron(a.weights(), b.weights()), {.sum_tolerance = 1e-9});
}

ProbVector dephase_pure(const PureState& psi) { return ProbVector::from_scalars(psi.weights()); }

Real free_coherence_pure(const PureState& psi, const Scalar& p) {
  if (p.sign() < 0) throw Error(ErrorCode::InvalidArgument, "free coherence needs p >= 0");
  const auto& q = psi.weights();
  if (p == Scalar(1)) return shannon_entropy(q).bits;
  if (p.is_zero()) {
    Scalar purity = 0;
    for (const auto& v : q) purity += v * v;
    return -log2(purity);
  }
  const Scalar order = Scalar(2) - p;
  Scalar trace = 0;
  for (const auto& v : q)
    if (!is_zero_entry(v)) trace += pow(v, order);
  return log2(trace) / (p.real() - 1);
}

CoherenceReport free_coherence_report(const PureState& psi, const PureState& phi, const GridSpec& grid) {
  std::vector<Rational> ps{Rational(0), Rational(1)};
  for (const auto& p : grid.points())
    if (p >= 0 && p <= 2) ps.push_back(p);
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());

  CoherenceReport report;
  const Real tol("1e-60");
  for (const auto& p : ps) {
    CoherenceSample s{p, free_coherence_pure(psi, Scalar(p)), free_coherence_pure(phi, Scalar(p))};
    s.ok = s.psi >= s.phi - tol * mp::max(Real(1), mp::abs(s.phi));
    if (!s.ok && report.refuted_at.empty()) report.refuted_at = "p=" + Scalar(p).to_decimal(12);
    report.samples.push_back(std::move(s));
  }
  report.consistent = report.refuted_at.empty();
  return report;
}

CoherentVerdict check_coherent_trumping(const PureState& psi, const PureState& phi, const TrumpingConfig& config) {
  CoherentVerdict v;
  v.trumping = check_trumping(dephase_pure(psi), dephase_pure(phi), config);
  v.coherence = free_coherence_report(psi, phi, config.oracle_grid);
  if (!v.coherence.consistent && v.trumping.status != Status::Refuted) {
    v.trumping.status = Status::Refuted;
    v.trumping.reasons.push_back("free coherence increases at " + v.coherence.refuted_at);
  }
  return v;
}

}  // namespace catamaj
