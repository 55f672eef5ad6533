#pragma once

#include <optional>
#include <string>
#include <vector>

#include "catamaj/majorization.hpp"
#include "catamaj/trumping.hpp"

namespace catamaj {

inline constexpr std::size_t kDefaultEmbeddingCap = 10'000;

// Vectors in this module are in energy-level order unless stated otherwise;
// q_i always pairs with g_i.
struct ThermalSpec {
  std::vector<Scalar> energies;  // empty when g was given directly
  Scalar beta = 0;
  std::optional<Scalar> Z;
  std::vector<Scalar> g;  // level order, unit sum, no zeros

  Scalar g_min() const;
};

ThermalSpec gibbs_vector(const std::vector<Scalar>& energies, const Scalar& beta);
// Validates a directly supplied Gibbs vector (no partition function).
ThermalSpec thermal_spec_from_gibbs(std::vector<Scalar> g, const VectorOptions& options = {});

// Validated level-ordered distribution; optionally normalized.
std::vector<Scalar> make_level_vector(std::vector<Scalar> q, const VectorOptions& options = {});

struct EmbeddingSpec {
  std::vector<long> nu;
  long N = 0;
  std::vector<Scalar> g_eps;  // nu_i / N, level order
  Scalar eps = 0;             // achieved ||g - g_eps||_1
};

/// Rational approximation of g within l1 distance eps. Exact g is returned
/// with its reduced denominators and zero error. Throws EpsNonPositive.
EmbeddingSpec rational_approx(const std::vector<Scalar>& g, const Rational& eps);
// Embedding data for a rational vector given directly.
EmbeddingSpec embedding_for(const std::vector<Scalar>& g_eps, const std::vector<Scalar>& g);

/// Replicates q_i into nu_i entries q_i / nu_i. Output is sorted, dimension N.
ProbVector embed(std::span<const Scalar> q, const EmbeddingSpec& spec);

struct DivergenceValue {
  bool pos_inf = false;
  Real bits;

  friend bool operator>(const DivergenceValue& a, const DivergenceValue& b) {
    if (a.pos_inf) return !b.pos_inf;
    if (b.pos_inf) return false;
    return a.bits > b.bits;
  }
  std::string to_string(int digits = 17) const;
};

// sum_i x_i^p g_i^(1-p) over the support of x; exact for integer p and exact inputs.
Scalar renyi_trace(std::span<const Scalar> x, std::span<const Scalar> g, const Scalar& p);

/// D_p(x||g) in bits: KL at p = 1, -log sum_{x_i>0} g_i at p = 0, +inf for
/// p < 0 when x misses part of the support of g. Throws SupportViolation.
DivergenceValue renyi_divergence(std::span<const Scalar> x, std::span<const Scalar> g, const Scalar& p);

// kT (D_p(x||g) - log Z); log Z is 0 when Z is unknown.
DivergenceValue free_energy(std::span<const Scalar> x, const ThermalSpec& spec, const Scalar& p,
                            const Real& kT = Real(1));

// max{1, p/|p-1|} log(1 + eps/g_min), or log(1 + eps/g_min) at p = 1.
Real continuity_bound(const Real& p, const Real& eps, const Real& g_min);
// max_i |log(g_eps_i / g_i)|: bounds |D_p(x||g_eps) - D_p(x||g)| for every p != 0.
Real divergence_shift_bound(std::span<const Scalar> g, std::span<const Scalar> g_eps);

struct SlackFactors {
  Real a_r = 1;
  Real a_s = 1;
};
SlackFactors slack_factors(const Real& eps, const Real& g_min, long N, long r_bar, long s_bar);

struct DivergenceFailure {
  Scalar p;
  std::string rho;
  std::string sigma;
};

// D_p(q_rho||g) > D_p(q_sigma||g) on a grid, plus the KL order.
struct DivergenceScan {
  std::vector<Rational> grid;
  std::vector<DivergenceFailure> failures;
  bool kl_ok = false;
  bool consistent = false;
  std::string refuted_at;
};

DivergenceScan divergence_scan(std::span<const Scalar> q_rho, std::span<const Scalar> q_sigma,
                               std::span<const Scalar> g, const GridSpec& grid = {});

struct DivergenceRow {
  Rational p;
  DivergenceValue rho;
  DivergenceValue sigma;
};
std::vector<DivergenceRow> divergence_rows(std::span<const Scalar> q_rho, std::span<const Scalar> q_sigma,
                                           std::span<const Scalar> g, std::span<const Rational> grid);

enum class ThermoPath { RationalCorollary, IrrationalTheorem };
const char* to_string(ThermoPath p);

struct ThermoOptions {
  std::optional<std::vector<Scalar>> g_eps;  // level order
  Rational eps = Rational(1, 1000);
  std::size_t embedding_cap = kDefaultEmbeddingCap;
  SympolyOptions sympoly;
  bool run_oracle = true;
  GridSpec oracle_grid;
};

struct ThermoVerdict {
  Status status = Status::Inconclusive;
  std::vector<std::string> reasons;
  ThermoPath path = ThermoPath::RationalCorollary;
  EmbeddingSpec embedding;
  Real delta = 0;  // eps / g_min
  SlackFactors slack;
  std::optional<TrumpingVerdict> conditions;
  std::optional<DivergenceScan> oracle;
};

/// Finite sufficient test for a catalytic thermal transition q_rho -> q_sigma.
ThermoVerdict check_thermo(std::span<const Scalar> q_rho, std::span<const Scalar> q_sigma, const ThermalSpec& spec,
                           const ThermoOptions& options = {});

}  // namespace catamaj
