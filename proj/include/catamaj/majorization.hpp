#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "catamaj/scalar.hpp"
#include "catamaj/vectors.hpp"

namespace catamaj {

// Default absolute tolerance for Lorenz-curve comparisons with float inputs.
inline constexpr double kLorenzTolerance = 1e-12;

/// True iff x is majorized by y (x ≺ y); shorter vectors are zero-padded.
bool majorizes(const ProbVector& y, const ProbVector& x);

/// True iff the Lorenz curve of (p, g) lies on or above that of (q, g).
///
/// All three vectors are in energy-level order and must have equal length;
/// g must have no zero entries. Exact inputs are compared exactly at the
/// union of both curves' breakpoints; otherwise `tolerance` is allowed.
bool thermo_majorizes(std::span<const Scalar> p, std::span<const Scalar> q, std::span<const Scalar> g,
                      double tolerance = kLorenzTolerance);

struct Catalyst {
  ProbVector vector;
  std::size_t dim() const { return vector.dim(); }
};

struct LoccMode {};

// Level-ordered Gibbs vectors of the system and catalyst. An empty
// catalyst_gibbs means a trivial catalyst Hamiltonian (uniform).
struct ThermoMode {
  std::vector<Scalar> gibbs;
  std::vector<Scalar> catalyst_gibbs;
  double tolerance = kLorenzTolerance;
};

using CatalystMode = std::variant<LoccMode, ThermoMode>;

// LOCC: x⊗c ≺ y⊗c. Thermo: x⊗c thermo-majorizes y⊗c against g⊗g_cat, with
// x, y, c taken in level order.
bool verify_catalyst(std::span<const Scalar> x, std::span<const Scalar> y, std::span<const Scalar> c,
                     const CatalystMode& mode);
bool verify_catalyst(const ProbVector& x, const ProbVector& y, const Catalyst& c, const CatalystMode& mode);

struct SearchOptions {
  unsigned threads = 1;
  std::size_t point_budget = 10'000'000;
};

struct SearchResult {
  std::optional<Catalyst> catalyst;
  // Number of sorted grid points of the simplex at this resolution.
  std::size_t grid_points = 0;
  bool trivial = false;
};

/// Exhaustive search over sorted grid points of the (dim-1)-simplex with the
/// given step. Returns the lexicographically greatest passing catalyst, or
/// the trivial catalyst (1) when none is needed. Throws GridTooLarge.
SearchResult search_catalyst(std::span<const Scalar> x, std::span<const Scalar> y, std::size_t dim,
                             const Rational& resolution, const CatalystMode& mode,
                             const SearchOptions& options = {});

// Number of non-increasing compositions of m into `parts` non-negative parts,
// saturating at `limit`.
std::size_t count_sorted_grid_points(std::size_t m, std::size_t parts, std::size_t limit);

struct GridSpec {
  Rational p_min = -20;
  Rational p_max = 20;
  Rational step = Rational(1, 20);

  // p_min + i*step up to p_max, without 0 and 1.
  std::vector<Rational> points() const;
  static GridSpec parse(const std::string& spec);  // "min:max:step"
};

struct OracleFailure {
  Scalar p;  // meaningless for the H1 / Burg checks
  std::string which;  // "p>1", "p<1", "H1", "burg"
  std::string lhs;
  std::string rhs;
};

/// Dense-grid evaluation of the necessary trumping conditions.
struct OracleReport {
  std::vector<Rational> grid;
  std::vector<OracleFailure> failures;
  bool h1_ok = false;
  bool burg_ok = false;
  bool consistent = false;
  // Empty when consistent; otherwise "p=<value>", "H1" or "burg".
  std::string refuted_at;
};

OracleReport oracle_scan(const ProbVector& x, const ProbVector& y, const GridSpec& grid = {});

struct ScanRow {
  Rational p;
  Scalar norm_x;
  Scalar norm_y;
  EntropyValue renyi_x;
  EntropyValue renyi_y;
};

std::vector<ScanRow> scan_rows(const ProbVector& x, const ProbVector& y, std::span<const Rational> grid);

// Pads to a common dimension, then drops positions that are zero in both.
std::pair<ProbVector, ProbVector> align_supports(const ProbVector& x, const ProbVector& y);

}  // namespace catamaj
