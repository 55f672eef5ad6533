#include "catamaj/sympoly.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "catamaj/detail/parallel.hpp"
#include "catamaj/vectors.hpp"

namespace catamaj {

namespace {

// Exact inputs x_i = a_i / L are handled through integer coefficients
//   Q_k = sum over compositions of prod_i a_i^{k_i} * r! / k_i!
// so that F_{k,r}(x) = Q_k / ((r!)^n L^k). Every factor is an integer
// polynomial and the convolution never needs a gcd.
using IntPoly = std::vector<Integer>;
using RealPoly = std::vector<Real>;

IntPoly multiply(const IntPoly& a, const IntPoly& b) {
  IntPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    const mpz_t& ai = a[i].backend().data();
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0) continue;
      mpz_addmul(out[i + j].backend().data(), ai, b[j].backend().data());
    }
  }
  return out;
}

RealPoly multiply(const RealPoly& a, const RealPoly& b) {
  RealPoly out(a.size() + b.size() - 1, Real(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

template <class Poly>
Poly product_tree(std::vector<Poly> level, unsigned threads) {
  while (level.size() > 1) {
    std::vector<Poly> next((level.size() + 1) / 2);
    detail::parallel_for(level.size() / 2, threads,
                         [&](std::size_t i) { next[i] = multiply(level[2 * i], level[2 * i + 1]); });
    if (level.size() % 2 == 1) next.back() = std::move(level.back());
    level = std::move(next);
  }
  return std::move(level.front());
}

bool all_exact(std::span<const Scalar> x) {
  return std::all_of(x.begin(), x.end(), [](const Scalar& s) { return s.is_exact(); });
}

void check_cap(std::size_t n, int r, const SympolyOptions& options) {
  if (r < 1) throw Error(ErrorCode::InvalidArgument, "truncation order r must be >= 1");
  if (n == 0) throw Error(ErrorCode::EmptyInput, "polynomial of an empty vector");
  const std::size_t degree = n * static_cast<std::size_t>(r);
  if (degree > options.degree_cap)
    throw Error(ErrorCode::DegreeCapExceeded, "degree n*r = " + std::to_string(degree) +
                                                  " exceeds cap " + std::to_string(options.degree_cap));
}

Integer common_denominator(std::span<const Scalar> a, std::span<const Scalar> b) {
  Integer l = 1;
  for (auto part : {a, b})
    for (const auto& s : part) {
      const Integer& d = mp::denominator(s.rational());
      l = mp::lcm(l, d);
    }
  return l;
}

// Q_k for the scaled integer entries; length n*r + 1 after zero-padding to n.
IntPoly scaled_coefficients(std::span<const Scalar> x, std::size_t n, int r, const Integer& L,
                            unsigned threads) {
  // falling[j] = r! / j!
  std::vector<Integer> falling(r + 1);
  falling[r] = 1;
  for (int j = r - 1; j >= 0; --j) falling[j] = falling[j + 1] * (j + 1);

  std::vector<IntPoly> factors;
  factors.reserve(n);
  for (const auto& s : x) {
    const Rational& q = s.rational();
    Integer a = mp::numerator(q) * (L / mp::denominator(q));
    IntPoly f(r + 1);
    Integer power = 1;
    for (int j = 0; j <= r; ++j) {
      f[j] = power * falling[j];
      power *= a;
    }
    factors.push_back(std::move(f));
  }
  // Zero entries (and padding) contribute the constant factor r!.
  for (std::size_t i = x.size(); i < n; ++i) factors.push_back(IntPoly{falling[0]});
  IntPoly q = product_tree(std::move(factors), threads);
  q.resize(n * r + 1);
  return q;
}

RealPoly float_coefficients(std::span<const Scalar> x, std::size_t n, int r, unsigned threads) {
  std::vector<Real> inv_fact(r + 1);
  inv_fact[0] = 1;
  for (int j = 1; j <= r; ++j) inv_fact[j] = inv_fact[j - 1] / j;

  std::vector<RealPoly> factors;
  factors.reserve(n);
  for (const auto& s : x) {
    Real v = s.real();
    RealPoly f(r + 1);
    Real power = 1;
    for (int j = 0; j <= r; ++j) {
      f[j] = power * inv_fact[j];
      power *= v;
    }
    factors.push_back(std::move(f));
  }
  RealPoly p = product_tree(std::move(factors), threads);
  p.resize(n * r + 1, Real(0));
  return p;
}

// Denominators (r!)^n L^k for k = 0..n*r.
std::vector<Integer> scaled_denominators(std::size_t n, int r, const Integer& L) {
  Integer fact = 1;
  for (int j = 2; j <= r; ++j) fact *= j;
  std::vector<Integer> den(n * r + 1);
  den[0] = mp::pow(fact, static_cast<unsigned>(n));
  for (std::size_t k = 1; k < den.size(); ++k) den[k] = den[k - 1] * L;
  return den;
}

Scalar sum_of(std::span<const Scalar> v) {
  Scalar s = 0;
  for (const auto& e : v) s += e;
  return s;
}

bool relation_holds(int cmp, Relation rel) {
  return rel == Relation::StrictGreater ? cmp > 0 : cmp < 0;
}

}  // namespace

PolyCoeffs f_poly_coeffs(std::span<const Scalar> x, int r, const SympolyOptions& options) {
  check_cap(x.size(), r, options);
  PolyCoeffs out;
  out.n = x.size();
  out.r = r;
  if (all_exact(x)) {
    Integer L = common_denominator(x, {});
    IntPoly q = scaled_coefficients(x, x.size(), r, L, options.threads);
    std::vector<Integer> den = scaled_denominators(x.size(), r, L);
    out.coeffs.reserve(q.size());
    for (std::size_t k = 0; k < q.size(); ++k) out.coeffs.emplace_back(Rational(q[k], den[k]));
  } else {
    RealPoly p = float_coefficients(x, x.size(), r, options.threads);
    out.coeffs.reserve(p.size());
    for (auto& v : p) out.coeffs.emplace_back(std::move(v));
  }
  return out;
}

Scalar F_coeff(std::span<const Scalar> x, int k, int r, const SympolyOptions& options) {
  if (r < 1) throw Error(ErrorCode::InvalidArgument, "truncation order r must be >= 1");
  const auto top = static_cast<long>(x.size()) * r;
  if (k < 0 || k > top)
    throw Error(ErrorCode::KOutOfRange, "k = " + std::to_string(k) + " outside [0, " + std::to_string(top) + "]");

  thread_local std::map<std::string, PolyCoeffs> cache;
  std::string key = std::to_string(r);
  for (const auto& s : x) key += (s.is_exact() ? "|q" : "|f") + s.to_string();
  auto it = cache.find(key);
  if (it == cache.end()) {
    if (cache.size() >= 16) cache.clear();
    it = cache.emplace(std::move(key), f_poly_coeffs(x, r, options)).first;
  }
  return it->second.coeffs[k];
}

int ComparisonReport::first_failure() const {
  for (const auto& c : per_k)
    if (!c.identity && !c.holds) return c.k;
  return -1;
}

ComparisonReport compare_F_family(std::span<const Scalar> lhs, std::span<const Scalar> rhs, int r,
                                  int k_lo, int k_hi, Relation relation, const Scalar& slack,
                                  const SympolyOptions& options) {
  if (slack.sign() <= 0) throw Error(ErrorCode::InvalidArgument, "slack must be positive");
  const std::size_t n = std::max(lhs.size(), rhs.size());
  check_cap(n, r, options);
  const int top = static_cast<int>(n) * r;
  if (k_lo < 0 || k_hi > top || k_lo > k_hi)
    throw Error(ErrorCode::KOutOfRange, "k range [" + std::to_string(k_lo) + ", " + std::to_string(k_hi) +
                                            "] outside [0, " + std::to_string(top) + "]");

  ComparisonReport report;
  report.relation = relation;
  report.r = r;
  report.k_lo = k_lo;
  report.k_hi = k_hi;
  report.slack = slack;

  const Scalar lhs_sum = sum_of(lhs);
  const Scalar rhs_sum = sum_of(rhs);
  const bool exact = all_exact(lhs) && all_exact(rhs);
  bool sums_equal;
  if (exact)
    sums_equal = lhs_sum == rhs_sum;
  else
    sums_equal = mp::abs(lhs_sum.real() - rhs_sum.real()) <= Real(options.float_margin) * mp::abs(lhs_sum.real());

  const Real margin(options.float_margin);

  if (exact) {
    Integer L = common_denominator(lhs, rhs);
    IntPoly ql = scaled_coefficients(lhs, n, r, L, options.threads);
    IntPoly qr = scaled_coefficients(rhs, n, r, L, options.threads);
    std::vector<Integer> den = scaled_denominators(n, r, L);
    for (int k = k_lo; k <= k_hi; ++k) {
      KComparison c;
      c.k = k;
      c.lhs = Scalar(Rational(ql[k], den[k]));
      c.rhs = Scalar(Rational(qr[k], den[k]));
      c.identity = options.skip_identities && sums_equal && k <= r;
      if (slack.is_exact()) {
        const Rational& s = slack.rational();
        Integer left = ql[k] * mp::denominator(s);
        Integer right = qr[k] * mp::numerator(s);
        c.holds = relation_holds(left.compare(right), relation);
      } else {
        Real left(ql[k]);
        Real right = Real(qr[k]) * slack.real();
        Real scale = mp::max(mp::abs(left), mp::abs(right));
        if (mp::abs(left - right) <= margin * scale) {
          c.undecided = true;
          c.holds = false;
        } else {
          c.holds = relation_holds(left.compare(right), relation);
        }
      }
      report.per_k.push_back(std::move(c));
    }
  } else {
    RealPoly pl = float_coefficients(lhs, n, r, options.threads);
    RealPoly pr = float_coefficients(rhs, n, r, options.threads);
    for (int k = k_lo; k <= k_hi; ++k) {
      KComparison c;
      c.k = k;
      c.lhs = Scalar(pl[k]);
      c.rhs = Scalar(pr[k]);
      c.identity = options.skip_identities && sums_equal && k <= r;
      Real right = pr[k] * slack.real();
      Real scale = mp::max(mp::abs(pl[k]), mp::abs(right));
      if (mp::abs(pl[k] - right) <= margin * scale) {
        c.undecided = !c.identity;
        c.holds = false;
      } else {
        c.holds = relation_holds(pl[k].compare(right), relation);
      }
      report.per_k.push_back(std::move(c));
    }
  }

  // A family made only of identity entries establishes nothing.
  bool informative = false;
  report.all_hold = true;
  for (const auto& c : report.per_k) {
    if (c.identity) continue;
    informative = true;
    report.any_undecided = report.any_undecided || c.undecided;
    report.all_hold = report.all_hold && c.holds;
  }
  report.all_hold = report.all_hold && informative;
  return report;
}

}  // namespace catamaj
