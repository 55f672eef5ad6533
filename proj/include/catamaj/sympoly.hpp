#pragma once

#include <span>
#include <vector>

#include "catamaj/scalar.hpp"

namespace catamaj {

inline constexpr std::size_t kDefaultDegreeCap = 4096;
// Relative margin below which a float comparison is left undecided.
inline constexpr double kFloatComparisonMargin = 1e-20;

// Coefficients of prod_i P_r(x_i t), P_r the degree-r Taylor polynomial of
// exp: coeffs[k] = F_{k,r}(x), k = 0..n*r.
struct PolyCoeffs {
  std::vector<Scalar> coeffs;
  std::size_t n = 0;
  int r = 0;
};

struct SympolyOptions {
  std::size_t degree_cap = kDefaultDegreeCap;
  unsigned threads = 1;
  double float_margin = kFloatComparisonMargin;
  // Mark k <= r entries of equal-sum inputs as identities. Off for families
  // whose inputs are not distributions.
  bool skip_identities = true;
};

// Exact whenever every entry is exact. Throws DegreeCapExceeded.
PolyCoeffs f_poly_coeffs(std::span<const Scalar> x, int r, const SympolyOptions& options = {});

// Single coefficient; repeated calls on the same (x, r) reuse a per-thread cache.
Scalar F_coeff(std::span<const Scalar> x, int k, int r, const SympolyOptions& options = {});

enum class Relation { StrictGreater, StrictLess };

struct KComparison {
  int k = 0;
  Scalar lhs;  // F_{k,r}(lhs vector)
  Scalar rhs;  // F_{k,r}(rhs vector), before the slack multiplier
  bool holds = false;
  // k <= r with equal input sums: both sides equal (sum)^k / k! identically,
  // so the entry carries no information and is excluded from all_hold.
  bool identity = false;
  // Float comparison inside the relative margin.
  bool undecided = false;

  friend bool operator==(const KComparison&, const KComparison&) = default;
};

struct ComparisonReport {
  Relation relation = Relation::StrictGreater;
  int r = 0;
  int k_lo = 0;
  int k_hi = 0;
  Scalar slack = 1;
  std::vector<KComparison> per_k;
  bool all_hold = false;
  bool any_undecided = false;

  // First k whose comparison does not hold (ignoring identity entries), or -1.
  int first_failure() const;
  friend bool operator==(const ComparisonReport&, const ComparisonReport&) = default;
};

/// Checks F_{k,r}(lhs) REL slack * F_{k,r}(rhs) for k in [k_lo, k_hi].
///
/// Vectors of different length are zero-padded. Exact inputs with an exact
/// slack are decided exactly; otherwise comparisons closer than the relative
/// margin are marked undecided and do not hold.
ComparisonReport compare_F_family(std::span<const Scalar> lhs, std::span<const Scalar> rhs, int r,
                                  int k_lo, int k_hi, Relation relation, const Scalar& slack = 1,
                                  const SympolyOptions& options = {});

}  // namespace catamaj
