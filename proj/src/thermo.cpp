#include "catamaj/thermo.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <iomanip>
#include <sstream>

namespace catamaj {

namespace {

constexpr long kMaxEmbeddingDim = 10'000'000;
// Largest denominator range rational_approx scans before using the
// guaranteed denominator directly.
constexpr long kDenominatorSearchLimit = 10'000'000;

bool all_exact(std::span<const Scalar> v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_exact(); });
}

Scalar l1_distance(std::span<const Scalar> a, std::span<const Scalar> b) {
  Scalar d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += abs(a[i] - b[i]);
  return d;
}

void check_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b)
    throw Error(ErrorCode::DimMismatch,
                std::string(what) + ": dimensions " + std::to_string(a) + " and " + std::to_string(b) + " differ");
}

void check_support(std::span<const Scalar> x, std::span<const Scalar> g) {
  check_same_dim(x.size(), g.size(), "divergence");
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!is_zero_entry(x[i]) && is_zero_entry(g[i]))
      throw Error(ErrorCode::SupportViolation, "x has weight on level " + std::to_string(i) + " where g vanishes");
}

// nu_i = floor(g_i n) plus one for the largest remainders, then at least 1 each.
std::vector<long> round_to_denominator(std::span<const Real> g, long n) {
  const std::size_t d = g.size();
  std::vector<long> nu(d);
  std::vector<Real> frac(d);
  long used = 0;
  for (std::size_t i = 0; i < d; ++i) {
    Real scaled = g[i] * n;
    Real fl = mp::floor(scaled);
    nu[i] = fl.convert_to<long>();
    frac[i] = scaled - fl;
    used += nu[i];
  }
  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return frac[a] > frac[b]; });
  for (long k = 0; k < n - used && k < static_cast<long>(d); ++k) ++nu[order[k]];
  for (std::size_t i = 0; i < d; ++i) {
    if (nu[i] > 0) continue;
    auto big = std::max_element(nu.begin(), nu.end());
    if (*big <= 1) break;
    --*big;
    nu[i] = 1;
  }
  return nu;
}

EmbeddingSpec spec_from_nu(std::vector<long> nu, std::span<const Scalar> g) {
  long common = 0;
  for (long v : nu) common = std::gcd(common, v);
  EmbeddingSpec s;
  for (auto& v : nu) v /= common;
  s.N = std::accumulate(nu.begin(), nu.end(), 0L);
  s.nu = std::move(nu);
  for (long v : s.nu) s.g_eps.emplace_back(Rational(v, s.N));
  s.eps = l1_distance(g, s.g_eps);
  return s;
}

}  // namespace

Scalar ThermalSpec::g_min() const { return *std::min_element(g.begin(), g.end()); }

std::vector<Scalar> make_level_vector(std::vector<Scalar> q, const VectorOptions& options) {
  if (q.empty()) throw Error(ErrorCode::EmptyInput, "probability vector is empty");
  if (options.normalize) {
    Scalar total = 0;
    for (const auto& e : q) total += e;
    if (total.sign() <= 0) throw Error(ErrorCode::SumNotOne, "cannot normalize a vector with non-positive sum");
    for (auto& e : q) e /= total;
  }
  VectorOptions check = options;
  check.normalize = false;
  ProbVector::from_scalars(q, check);  // validation only
  return q;
}

ThermalSpec gibbs_vector(const std::vector<Scalar>& energies, const Scalar& beta) {
  if (energies.empty()) throw Error(ErrorCode::EmptyInput, "no energy levels");
  if (beta.sign() < 0) throw Error(ErrorCode::InvalidArgument, "beta must be non-negative");
  ThermalSpec s;
  s.energies = energies;
  s.beta = beta;

  std::vector<Scalar> w;
  w.reserve(energies.size());
  for (const auto& e : energies) {
    Scalar be = beta * e;
    // exp(0) = 1 is the only exactly rational Boltzmann weight we produce.
    if (be.is_exact() && be.is_zero())
      w.emplace_back(1);
    else
      w.emplace_back(Real(mp::exp(-be.real())));
  }
  Scalar z = 0;
  for (const auto& v : w) z += v;
  for (auto& v : w) v /= z;
  s.Z = z;
  s.g = std::move(w);
  return s;
}

ThermalSpec thermal_spec_from_gibbs(std::vector<Scalar> g, const VectorOptions& options) {
  ThermalSpec s;
  s.g = make_level_vector(std::move(g), options);
  for (std::size_t i = 0; i < s.g.size(); ++i)
    if (is_zero_entry(s.g[i]))
      throw Error(ErrorCode::GibbsZeroEntry, "Gibbs entry " + std::to_string(i) + " is zero");
  return s;
}

EmbeddingSpec embedding_for(const std::vector<Scalar>& g_eps, const std::vector<Scalar>& g) {
  check_same_dim(g_eps.size(), g.size(), "embedding");
  if (!all_exact(g_eps)) throw Error(ErrorCode::InvalidArgument, "approximating Gibbs vector must be rational");
  Integer l = 1;
  for (const auto& v : g_eps) l = mp::lcm(l, mp::denominator(v.rational()));
  if (l > kMaxEmbeddingDim)
    throw Error(ErrorCode::EmbeddingTooLarge, "embedding dimension " + l.str() + " exceeds " +
                                                  std::to_string(kMaxEmbeddingDim));
  std::vector<long> nu;
  for (const auto& v : g_eps) {
    Integer n = mp::numerator(v.rational()) * (l / mp::denominator(v.rational()));
    if (n <= 0) throw Error(ErrorCode::GibbsZeroEntry, "approximating Gibbs vector has a zero entry");
    nu.push_back(n.convert_to<long>());
  }
  if (std::accumulate(nu.begin(), nu.end(), 0L) != l.convert_to<long>())
    throw Error(ErrorCode::SumNotOne, "approximating Gibbs vector does not sum to 1");
  return spec_from_nu(std::move(nu), g);
}

EmbeddingSpec rational_approx(const std::vector<Scalar>& g, const Rational& eps) {
  if (eps <= 0) throw Error(ErrorCode::EpsNonPositive, "eps must be positive");
  if (g.empty()) throw Error(ErrorCode::EmptyInput, "empty Gibbs vector");
  if (all_exact(g)) return embedding_for(g, g);

  const auto d = static_cast<long>(g.size());
  std::vector<Real> gr;
  for (const auto& v : g) gr.push_back(v.real());
  // Every entry moves by less than 1/N', so N' > d/eps always suffices.
  const Rational bound = Rational(d) / eps;
  const Integer guaranteed = Integer(mp::numerator(bound) / mp::denominator(bound)) + 1;
  if (guaranteed > kMaxEmbeddingDim)
    throw Error(ErrorCode::EmbeddingTooLarge, "eps too small: denominator " + guaranteed.str() + " exceeds " +
                                                  std::to_string(kMaxEmbeddingDim));
  const long upper = guaranteed.convert_to<long>();
  const Real eps_r(eps);

  const long first = upper - d > kDenominatorSearchLimit ? upper : d;
  for (long n = first; n <= upper; ++n) {
    std::vector<long> nu = round_to_denominator(gr, n);
    if (std::accumulate(nu.begin(), nu.end(), 0L) != n) continue;
    if (std::any_of(nu.begin(), nu.end(), [](long v) { return v <= 0; })) continue;
    Real err = 0;
    for (long i = 0; i < d; ++i) err += mp::abs(gr[i] - Real(nu[i]) / n);
    if (err <= eps_r) {
      EmbeddingSpec s = spec_from_nu(std::move(nu), g);
      return s;
    }
  }
  throw Error(ErrorCode::EmbeddingTooLarge, "no denominator up to " + std::to_string(upper) +
                                                " keeps every level populated within eps");
}

ProbVector embed(std::span<const Scalar> q, const EmbeddingSpec& spec) {
  check_same_dim(q.size(), spec.nu.size(), "embed");
  if (spec.N > kMaxEmbeddingDim) throw Error(ErrorCode::EmbeddingTooLarge, "embedding dimension too large");
  std::vector<Scalar> out;
  out.reserve(static_cast<std::size_t>(spec.N));
  for (std::size_t i = 0; i < q.size(); ++i) {
    const Scalar part = q[i] / Scalar(spec.nu[i]);
    for (long k = 0; k < spec.nu[i]; ++k) out.push_back(part);
  }
  return ProbVector::from_scalars(std::move(out));
}

std::string DivergenceValue::to_string(int digits) const {
  if (pos_inf) return "inf";
  std::ostringstream os;
  os << std::setprecision(digits) << bits;
  return os.str();
}

Scalar renyi_trace(std::span<const Scalar> x, std::span<const Scalar> g, const Scalar& p) {
  check_support(x, g);
  const Scalar one_minus_p = Scalar(1) - p;
  Scalar total = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (is_zero_entry(x[i])) continue;
    total += pow(x[i], p) * pow(g[i], one_minus_p);
  }
  return total;
}

DivergenceValue renyi_divergence(std::span<const Scalar> x, std::span<const Scalar> g, const Scalar& p) {
  check_support(x, g);
  if (p == Scalar(1)) {
    Real kl = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (is_zero_entry(x[i])) continue;
      kl += x[i].real() * (log2(x[i]) - log2(g[i]));
    }
    return {false, kl};
  }
  if (p.is_zero()) {
    Scalar mass = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!is_zero_entry(x[i])) mass += g[i];
    return {false, Real(-log2(mass))};
  }
  if (p.sign() < 0) {
    for (std::size_t i = 0; i < x.size(); ++i)
      if (is_zero_entry(x[i]) && !is_zero_entry(g[i])) return {true, Real(0)};
  }
  const Scalar trace = renyi_trace(x, g, p);
  const Real factor = Real(p.sign()) / (p.real() - 1);
  return {false, Real(factor * log2(trace))};
}

DivergenceValue free_energy(std::span<const Scalar> x, const ThermalSpec& spec, const Scalar& p, const Real& kT) {
  if (kT == 0) return {false, Real(0)};
  DivergenceValue d = renyi_divergence(x, spec.g, p);
  if (d.pos_inf) return d;
  const Real log_z = spec.Z ? log2(*spec.Z) : Real(0);
  return {false, Real(kT * (d.bits - log_z))};
}

Real continuity_bound(const Real& p, const Real& eps, const Real& g_min) {
  if (g_min <= 0) throw Error(ErrorCode::InvalidArgument, "g_min must be positive");
  if (eps < 0) throw Error(ErrorCode::InvalidArgument, "eps must be non-negative");
  const Real base = log2(Real(1 + eps / g_min));
  if (p == 1) return base;
  return mp::max(Real(1), Real(p / mp::abs(p - 1))) * base;
}

Real divergence_shift_bound(std::span<const Scalar> g, std::span<const Scalar> g_eps) {
  check_same_dim(g.size(), g_eps.size(), "shift bound");
  Real worst = 0;
  for (std::size_t i = 0; i < g.size(); ++i) worst = mp::max(worst, Real(mp::abs(log2(g_eps[i]) - log2(g[i]))));
  return worst;
}

SlackFactors slack_factors(const Real& eps, const Real& g_min, long N, long r_bar, long s_bar) {
  if (g_min <= 0 || N < 1) throw Error(ErrorCode::InvalidArgument, "slack factors need g_min > 0 and N >= 1");
  const Real grow = 1 + eps / g_min;
  const Real inv_n = Real(1) / N;
  const Real two(2);
  const Real inv_ar = mp::max(Real(mp::pow(two, -inv_n * mp::pow(grow, 2 * r_bar))),
                              Real(mp::pow(two, -2 * eps / (N * g_min))));
  const Real inv_as = mp::pow(two, -inv_n * (mp::pow(grow, 2 * (1 + s_bar)) - 1));
  return {Real(1 / inv_ar), Real(1 / inv_as)};
}

DivergenceScan divergence_scan(std::span<const Scalar> q_rho, std::span<const Scalar> q_sigma,
                               std::span<const Scalar> g, const GridSpec& grid) {
  DivergenceScan scan;
  scan.grid = grid.points();
  for (const auto& p : scan.grid) {
    const Scalar ps(p);
    const DivergenceValue a = renyi_divergence(q_rho, g, ps);
    const DivergenceValue b = renyi_divergence(q_sigma, g, ps);
    // Both infinite carries no order information.
    if (a.pos_inf && b.pos_inf) continue;
    if (!(a > b)) {
      scan.failures.push_back({ps, a.to_string(20), b.to_string(20)});
      if (scan.refuted_at.empty()) scan.refuted_at = "p=" + ps.to_decimal(12);
    }
  }
  const DivergenceValue ka = renyi_divergence(q_rho, g, 1);
  const DivergenceValue kb = renyi_divergence(q_sigma, g, 1);
  scan.kl_ok = ka > kb;
  if (!scan.kl_ok) {
    scan.failures.push_back({Scalar(1), ka.to_string(20), kb.to_string(20)});
    if (scan.refuted_at.empty()) scan.refuted_at = "KL";
  }
  scan.consistent = scan.failures.empty();
  return scan;
}

std::vector<DivergenceRow> divergence_rows(std::span<const Scalar> q_rho, std::span<const Scalar> q_sigma,
                                           std::span<const Scalar> g, std::span<const Rational> grid) {
  std::vector<DivergenceRow> rows;
  for (const auto& p : grid)
    rows.push_back({p, renyi_divergence(q_rho, g, Scalar(p)), renyi_divergence(q_sigma, g, Scalar(p))});
  return rows;
}

const char* to_string(ThermoPath p) {
  return p == ThermoPath::RationalCorollary ? "RationalCorollary" : "IrrationalTheorem";
}

ThermoVerdict check_thermo(std::span<const Scalar> q_rho, std::span<const Scalar> q_sigma, const ThermalSpec& spec,
                           const ThermoOptions& options) {
  check_same_dim(q_rho.size(), spec.g.size(), "q_rho vs g");
  check_same_dim(q_sigma.size(), spec.g.size(), "q_sigma vs g");

  ThermoVerdict v;
  if (options.g_eps)
    v.embedding = embedding_for(*options.g_eps, spec.g);
  else
    v.embedding = rational_approx(spec.g, options.eps);
  v.path = v.embedding.eps.is_zero() ? ThermoPath::RationalCorollary : ThermoPath::IrrationalTheorem;

  auto finish = [&]() -> ThermoVerdict& {
    if (options.run_oracle) {
      v.oracle = divergence_scan(q_rho, q_sigma, spec.g, options.oracle_grid);
      if (!v.oracle->consistent) {
        v.status = Status::Refuted;
        v.reasons.push_back("oracle refutes at " + v.oracle->refuted_at);
      }
    }
    return v;
  };

  if (static_cast<std::size_t>(v.embedding.N) > options.embedding_cap) {
    v.status = Status::Inconclusive;
    v.reasons.push_back("embedding too large: N = " + std::to_string(v.embedding.N) + " exceeds " +
                        std::to_string(options.embedding_cap));
    return finish();
  }

  // After embedding the thermal transition is sigma trumped by rho.
  const ProbVector x = embed(q_sigma, v.embedding);
  const ProbVector y = embed(q_rho, v.embedding);

  ConditionSlack slack;
  if (v.path == ThermoPath::IrrationalTheorem) {
    const Real g_min = spec.g_min().real();
    v.delta = v.embedding.eps.real() / g_min;
    const Real grow = 1 + v.delta;
    slack.theta = Scalar(Real(grow * grow));
    const ExponentPair e = compute_exponents(x, y, slack.theta);
    v.slack = slack_factors(v.embedding.eps.real(), g_min, v.embedding.N, e.r_bar, e.s_bar);
    slack.a_r = Scalar(v.slack.a_r);
    slack.a_s = Scalar(v.slack.a_s);
    slack.h1_margin = 2 * log2(grow);
  }

  try {
    v.conditions = evaluate_sufficient_conditions(x, y, slack, options.sympoly);
    v.status = v.conditions->status;
    v.reasons = v.conditions->reasons;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegreeCapExceeded) throw;
    v.status = Status::Inconclusive;
    v.reasons.push_back(std::string("degree cap: ") + e.what());
  }
  if (v.status == Status::ClosureSufficient) {
    v.status = Status::Inconclusive;
    v.reasons.insert(v.reasons.begin(), "only the closure conditions hold");
  }
  return finish();
}

}  // namespace catamaj
