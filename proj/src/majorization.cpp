#include "catamaj/majorization.hpp"

#include <algorithm>
#include <numeric>

#include "catamaj/detail/parallel.hpp"

namespace catamaj {

namespace {

bool all_exact(std::span<const Scalar> v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_exact(); });
}

// a <= b, with an absolute allowance for float operands.
bool leq(const Scalar& a, const Scalar& b, const Real& tol) {
  if (a.is_exact() && b.is_exact()) return a <= b;
  return a.real() <= b.real() + tol;
}

struct LorenzPoint {
  Scalar g;  // cumulative Gibbs weight
  Scalar p;  // cumulative probability
};

std::vector<LorenzPoint> lorenz_curve(std::span<const Scalar> p, std::span<const Scalar> g) {
  std::vector<std::size_t> order(p.size());
  std::iota(order.begin(), order.end(), 0);
  // Descending p_i/g_i, compared as p_i g_j > p_j g_i to stay exact.
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return p[i] * g[j] > p[j] * g[i]; });
  std::vector<LorenzPoint> curve;
  curve.reserve(p.size() + 1);
  curve.push_back({Scalar(0), Scalar(0)});
  for (std::size_t i : order) curve.push_back({curve.back().g + g[i], curve.back().p + p[i]});
  return curve;
}

// Height of a piecewise-linear curve at abscissa a; `hint` advances monotonically.
Scalar curve_at(const std::vector<LorenzPoint>& c, const Scalar& a, std::size_t& hint) {
  while (hint + 1 < c.size() - 1 && c[hint + 1].g < a) ++hint;
  const auto& lo = c[hint];
  const auto& hi = c[hint + 1];
  if (a >= hi.g) return hi.p;
  if (a <= lo.g) return lo.p;
  return lo.p + (hi.p - lo.p) * (a - lo.g) / (hi.g - lo.g);
}

std::vector<Scalar> as_vector(std::span<const Scalar> v) { return {v.begin(), v.end()}; }

}  // namespace

bool majorizes(const ProbVector& y, const ProbVector& x) {
  const std::size_t n = std::max(x.dim(), y.dim());
  const ProbVector xp = x.padded(n);
  const ProbVector yp = y.padded(n);
  const Real tol(kLorenzTolerance);
  Scalar sx = 0;
  Scalar sy = 0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    sx += xp[k];
    sy += yp[k];
    if (!leq(sx, sy, tol)) return false;
  }
  return true;
}

bool thermo_majorizes(std::span<const Scalar> p, std::span<const Scalar> q, std::span<const Scalar> g,
                      double tolerance) {
  if (p.size() != q.size() || p.size() != g.size())
    throw Error(ErrorCode::DimMismatch, "thermo-majorization needs equal dimensions, got " +
                                            std::to_string(p.size()) + ", " + std::to_string(q.size()) +
                                            ", " + std::to_string(g.size()));
  if (p.empty()) throw Error(ErrorCode::EmptyInput, "thermo-majorization of empty vectors");
  for (std::size_t i = 0; i < g.size(); ++i)
    if (is_zero_entry(g[i]))
      throw Error(ErrorCode::GibbsZeroEntry, "Gibbs entry " + std::to_string(i) + " is zero");

  const auto cp = lorenz_curve(p, g);
  const auto cq = lorenz_curve(q, g);
  const Real tol(tolerance);

  // Both curves are concave, so comparing at the union of breakpoints suffices.
  std::size_t hp = 0;
  std::size_t hq = 0;
  std::size_t i = 1;
  std::size_t j = 1;
  while (i < cp.size() || j < cq.size()) {
    const Scalar* a;
    if (j >= cq.size() || (i < cp.size() && cp[i].g <= cq[j].g))
      a = &cp[i++].g;
    else
      a = &cq[j++].g;
    if (!leq(curve_at(cq, *a, hq), curve_at(cp, *a, hp), tol)) return false;
  }
  return true;
}

bool verify_catalyst(std::span<const Scalar> x, std::span<const Scalar> y, std::span<const Scalar> c,
                     const CatalystMode& mode) {
  if (const auto* thermo = std::get_if<ThermoMode>(&mode)) {
    if (x.size() != thermo->gibbs.size() || y.size() != thermo->gibbs.size())
      throw Error(ErrorCode::DimMismatch, "state and Gibbs vector dimensions differ");
    std::vector<Scalar> gc = thermo->catalyst_gibbs;
    if (gc.empty()) {
      gc.assign(c.size(), Scalar(Rational(1, static_cast<long>(c.size()))));
    } else if (gc.size() != c.size()) {
      throw Error(ErrorCode::DimMismatch, "catalyst and catalyst Gibbs dimensions differ");
    }
    return thermo_majorizes(kron(x, c), kron(y, c), kron(thermo->gibbs, gc), thermo->tolerance);
  }
  VectorOptions opts{.backend = Backend::Exact};
  ProbVector xv = ProbVector::from_scalars(as_vector(x), opts);
  ProbVector yv = ProbVector::from_scalars(as_vector(y), opts);
  ProbVector cv = ProbVector::from_scalars(as_vector(c), opts);
  return majorizes(tensor(yv, cv), tensor(xv, cv));
}

bool verify_catalyst(const ProbVector& x, const ProbVector& y, const Catalyst& c, const CatalystMode& mode) {
  return verify_catalyst(x.span(), y.span(), c.vector.span(), mode);
}

std::size_t count_sorted_grid_points(std::size_t m, std::size_t parts, std::size_t limit) {
  parts = std::min(parts, std::max<std::size_t>(m, 1));
  // dp[j] = partitions of j into parts of size <= k, i.e. into at most k parts.
  std::vector<std::size_t> dp(m + 1, 0);
  dp[0] = 1;
  for (std::size_t k = 1; k <= parts; ++k)
    for (std::size_t j = k; j <= m; ++j) dp[j] = std::min(limit, dp[j] + dp[j - k]);
  return dp[m];
}

SearchResult search_catalyst(std::span<const Scalar> x, std::span<const Scalar> y, std::size_t dim,
                             const Rational& resolution, const CatalystMode& mode,
                             const SearchOptions& options) {
  if (dim == 0) throw Error(ErrorCode::InvalidArgument, "catalyst dimension must be positive");
  if (resolution <= 0 || resolution > 1)
    throw Error(ErrorCode::InvalidArgument, "resolution must lie in (0, 1]");
  const Rational steps = 1 / resolution;
  if (mp::denominator(steps) != 1)
    throw Error(ErrorCode::InvalidArgument, "1/resolution must be an integer");
  if (steps > 100'000'000)
    throw Error(ErrorCode::GridTooLarge, "resolution too fine");
  const auto m = static_cast<std::size_t>(mp::numerator(steps).convert_to<unsigned long long>());

  SearchResult result;
  const std::size_t limit = options.point_budget + 1;
  result.grid_points = count_sorted_grid_points(m, dim, limit);
  if (result.grid_points > options.point_budget)
    throw Error(ErrorCode::GridTooLarge, "catalyst grid exceeds " + std::to_string(options.point_budget) +
                                             " points (dim " + std::to_string(dim) + ", 1/resolution " +
                                             std::to_string(m) + ")");

  const std::vector<Scalar> one{Scalar(1)};
  if (verify_catalyst(x, y, one, mode)) {
    result.trivial = true;
    result.catalyst = Catalyst{ProbVector::from_scalars({Scalar(1)})};
    return result;
  }

  auto to_catalyst = [&](const std::vector<std::size_t>& parts) {
    std::vector<Scalar> c;
    c.reserve(parts.size());
    for (auto v : parts) c.emplace_back(Rational(static_cast<long>(v), static_cast<long>(m)));
    return c;
  };

  // First passing point in lex-descending order with leading part `first`.
  auto search_leading = [&](std::size_t first) -> std::optional<std::vector<std::size_t>> {
    std::vector<std::size_t> parts(dim, 0);
    parts[0] = first;
    std::optional<std::vector<std::size_t>> found;
    auto recurse = [&](auto&& self, std::size_t idx, std::size_t remaining) -> bool {
      if (idx == dim) {
        if (remaining != 0) return false;
        if (verify_catalyst(x, y, to_catalyst(parts), mode)) {
          found = parts;
          return true;
        }
        return false;
      }
      const std::size_t slots = dim - idx;
      const std::size_t hi = std::min(parts[idx - 1], remaining);
      const std::size_t lo = (remaining + slots - 1) / slots;
      for (std::size_t v = hi + 1; v-- > lo;) {
        parts[idx] = v;
        if (self(self, idx + 1, remaining - v)) return true;
      }
      return false;
    };
    recurse(recurse, 1, m - first);
    return found;
  };

  const std::size_t top = m;
  const std::size_t bottom = (m + dim - 1) / dim;
  const unsigned threads = std::max(1u, options.threads);
  // Leading parts are processed in batches; the largest passing leading part in
  // a batch wins, so the answer does not depend on the thread count.
  for (std::size_t start = top + 1; start-- > bottom;) {
    const std::size_t batch = std::min<std::size_t>(threads, start - bottom + 1);
    std::vector<std::optional<std::vector<std::size_t>>> hits(batch);
    detail::parallel_for(batch, threads, [&](std::size_t i) { hits[i] = search_leading(start - i); });
    for (auto& h : hits) {
      if (h) {
        result.catalyst = Catalyst{ProbVector::from_scalars(to_catalyst(*h))};
        return result;
      }
    }
    start -= batch - 1;
  }
  return result;
}

std::vector<Rational> GridSpec::points() const {
  if (step <= 0) throw Error(ErrorCode::InvalidArgument, "grid step must be positive");
  if (p_max < p_min) throw Error(ErrorCode::InvalidArgument, "grid max below min");
  const Rational count = (p_max - p_min) / step;
  if (count > 1'000'000) throw Error(ErrorCode::GridTooLarge, "grid has more than 10^6 points");
  std::vector<Rational> out;
  for (Rational p = p_min; p <= p_max; p += step)
    if (p != 0 && p != 1) out.push_back(p);
  return out;
}

GridSpec GridSpec::parse(const std::string& spec) {
  const auto a = spec.find(':');
  const auto b = a == std::string::npos ? a : spec.find(':', a + 1);
  if (b == std::string::npos)
    throw Error(ErrorCode::InvalidArgument, "grid must look like min:max:step, got '" + spec + "'");
  GridSpec g;
  g.p_min = parse_rational(spec.substr(0, a));
  g.p_max = parse_rational(spec.substr(a + 1, b - a - 1));
  g.step = parse_rational(spec.substr(b + 1));
  if (g.step <= 0) throw Error(ErrorCode::InvalidArgument, "grid step must be positive");
  if (g.p_max < g.p_min) throw Error(ErrorCode::InvalidArgument, "grid max below min");
  return g;
}

std::pair<ProbVector, ProbVector> align_supports(const ProbVector& x, const ProbVector& y) {
  const std::size_t n = std::max(x.dim(), y.dim());
  // Both are sorted, so common zeros sit at the tail.
  const std::size_t keep = std::max(x.weight(), y.weight());
  return {x.padded(n).truncated(keep), y.padded(n).truncated(keep)};
}

namespace {

Scalar power_sum(const ProbVector& v, const Scalar& p) {
  Scalar total = 0;
  for (const auto& e : v.entries())
    if (!is_zero_entry(e)) total += pow(e, p);
  return total;
}

std::string p_label(const Rational& p) { return Scalar(p).to_decimal(12); }

}  // namespace

OracleReport oracle_scan(const ProbVector& x_in, const ProbVector& y_in, const GridSpec& grid) {
  const auto [x, y] = align_supports(x_in, y_in);
  OracleReport report;
  report.grid = grid.points();

  // ||x||_p vs ||y||_p reduces to the power sums: x^(1/p) is increasing for
  // p > 0 and decreasing for p < 0.
  for (const auto& p : report.grid) {
    const Scalar ps(p);
    bool ok;
    if (p < 0 && (!x.full_weight() || !y.full_weight())) {
      // A deficient vector has norm 0 here.
      ok = x.full_weight() && !y.full_weight();
    } else {
      const Scalar sx = power_sum(x, ps);
      const Scalar sy = power_sum(y, ps);
      ok = (p > 1 || p < 0) ? sx < sy : sx > sy;
    }
    if (!ok) {
      report.failures.push_back({ps, p > 1 ? "p>1" : "p<1", scaled_p_norm(x, ps).to_decimal(20),
                                 scaled_p_norm(y, ps).to_decimal(20)});
      if (report.refuted_at.empty()) report.refuted_at = "p=" + p_label(p);
    }
  }

  const EntropyValue hx = shannon_entropy(x.span());
  const EntropyValue hy = shannon_entropy(y.span());
  report.h1_ok = hx > hy;
  if (!report.h1_ok) {
    report.failures.push_back({Scalar(1), "H1", hx.to_string(20), hy.to_string(20)});
    if (report.refuted_at.empty()) report.refuted_at = "H1";
  }
  const EntropyValue bx = burg_entropy(x);
  const EntropyValue by = burg_entropy(y);
  report.burg_ok = bx > by;
  if (!report.burg_ok) {
    report.failures.push_back({Scalar(0), "burg", bx.to_string(20), by.to_string(20)});
    if (report.refuted_at.empty()) report.refuted_at = "burg";
  }
  report.consistent = report.failures.empty();
  return report;
}

std::vector<ScanRow> scan_rows(const ProbVector& x, const ProbVector& y, std::span<const Rational> grid) {
  std::vector<ScanRow> rows;
  rows.reserve(grid.size());
  for (const auto& p : grid) {
    const Scalar ps(p);
    rows.push_back({p, scaled_p_norm(x, ps), scaled_p_norm(y, ps), renyi_entropy(x, ps), renyi_entropy(y, ps)});
  }
  return rows;
}

}  // namespace catamaj
