#pragma once

#include <string>
#include <vector>

#include "catamaj/trumping.hpp"

namespace catamaj {

// Pure state in a fixed incoherent basis, kept as squared magnitudes |psi_i|^2.
class PureState {
 public:
  // Amplitude magnitudes as decimals, fractions or "sqrt(q)".
  static PureState from_amplitudes(const std::vector<std::string>& amplitudes, const VectorOptions& options = {});
  static PureState from_probabilities(std::vector<Scalar> weights, const VectorOptions& options = {});

  const std::vector<Scalar>& weights() const { return weights_; }
  std::size_t dim() const { return weights_.size(); }

 private:
  std::vector<Scalar> weights_;
};

PureState tensor(const PureState& a, const PureState& b);

/// Diagonal of the dephased state, sorted non-increasing.
ProbVector dephase_pure(const PureState& psi);

/// A_p(psi) = D_p(psi || Delta psi) in bits, p >= 0. Uses
/// Tr[psi (Delta psi)^(1-p)] = sum_i q_i^(2-p); entropy of q at p = 1 and
/// -log sum q_i^2 at p = 0.
Real free_coherence_pure(const PureState& psi, const Scalar& p);

struct CoherenceSample {
  Rational p;
  Real psi;
  Real phi;
  bool ok = false;  // psi >= phi
};

// Monotonicity of A_p under incoherent operations, over p in [0, 2].
struct CoherenceReport {
  std::vector<CoherenceSample> samples;
  bool consistent = false;
  std::string refuted_at;
};

CoherenceReport free_coherence_report(const PureState& psi, const PureState& phi, const GridSpec& grid = {});

struct CoherentVerdict {
  TrumpingVerdict trumping;
  CoherenceReport coherence;
};

/// Catalytic incoherent conversion psi -> phi with a pure catalyst.
CoherentVerdict check_coherent_trumping(const PureState& psi, const PureState& phi,
                                        const TrumpingConfig& config = {});

}  // namespace catamaj
