#include "catamaj/vectors.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace catamaj {

namespace {

void sort_descending(std::vector<Scalar>& v) {
  std::sort(v.begin(), v.end(), [](const Scalar& a, const Scalar& b) { return a > b; });
}

Scalar sum_of(std::span<const Scalar> v) {
  Scalar s = 0;
  for (const auto& e : v) s += e;
  return s;
}

bool any_zero(std::span<const Scalar> v) {
  return std::any_of(v.begin(), v.end(), [](const Scalar& e) { return is_zero_entry(e); });
}

}  // namespace

bool is_zero_entry(const Scalar& v) {
  if (v.is_exact()) return v.is_zero();
  return mp::abs(v.real()) < Real(kFloatZeroThreshold);
}

ProbVector ProbVector::from_scalars(std::vector<Scalar> entries, const VectorOptions& options) {
  if (entries.empty()) throw Error(ErrorCode::EmptyInput, "probability vector is empty");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].sign() < 0)
      throw Error(ErrorCode::NegativeEntry, "entry " + std::to_string(i) + " is negative: " + entries[i].to_decimal(12));
  }
  Scalar total = sum_of(entries);
  if (options.normalize) {
    if (total.is_zero()) throw Error(ErrorCode::SumNotOne, "cannot normalize a zero vector");
    for (auto& e : entries) e /= total;
  } else {
    Scalar deviation = abs(total - Scalar(1));
    bool ok = total.is_exact() ? deviation.is_zero()
                               : deviation.real() <= Real(options.sum_tolerance);
    if (!ok)
      throw Error(ErrorCode::SumNotOne, "entries sum to " + total.to_decimal(17) +
                                            " (deviation " + deviation.to_decimal(6) + ")");
  }
  sort_descending(entries);

  ProbVector v;
  v.backend_ = entries.front().backend();
  v.weight_ = static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [](const Scalar& e) { return !is_zero_entry(e); }));
  v.entries_ = std::move(entries);
  return v;
}

ProbVector ProbVector::padded(std::size_t n) const {
  if (n <= dim()) return *this;
  ProbVector v = *this;
  Scalar zero = backend_ == Backend::Exact ? Scalar(0) : Scalar(Real(0));
  v.entries_.resize(n, zero);
  return v;
}

ProbVector ProbVector::truncated(std::size_t n) const {
  if (n < weight_) throw Error(ErrorCode::InvalidArgument, "truncation would drop nonzero entries");
  if (n >= dim()) return *this;
  ProbVector v = *this;
  v.entries_.resize(n);
  return v;
}

ProbVector make_prob_vector(std::span<const std::string> raw, const VectorOptions& options) {
  if (raw.empty()) throw Error(ErrorCode::EmptyInput, "probability vector is empty");
  std::vector<Scalar> entries;
  entries.reserve(raw.size());
  for (const auto& s : raw) entries.push_back(Scalar::parse(s, options.backend));
  return ProbVector::from_scalars(std::move(entries), options);
}

ProbVector make_prob_vector(std::span<const double> raw, const VectorOptions& options) {
  if (raw.empty()) throw Error(ErrorCode::EmptyInput, "probability vector is empty");
  std::vector<Scalar> entries;
  entries.reserve(raw.size());
  for (double d : raw) entries.push_back(Scalar::from_double(d, options.backend));
  return ProbVector::from_scalars(std::move(entries), options);
}

ProbVector uniform_vector(std::size_t n, Backend backend) {
  Rational q(1, static_cast<long>(n));
  std::vector<Scalar> e(n, backend == Backend::Exact ? Scalar(q) : Scalar(Real(q)));
  return ProbVector::from_scalars(std::move(e), {.backend = backend, .normalize = backend == Backend::Float});
}

ProbVector tensor(const ProbVector& x, const ProbVector& y) {
  std::vector<Scalar> out = kron(x.span(), y.span());
  VectorOptions opts{.backend = out.front().backend()};
  // Float products drift from unit sum by a few ulps; exact ones cannot.
  opts.sum_tolerance = 1e-9;
  return ProbVector::from_scalars(std::move(out), opts);
}

std::vector<Scalar> kron(std::span<const Scalar> x, std::span<const Scalar> y) {
  std::vector<Scalar> out;
  out.reserve(x.size() * y.size());
  for (const auto& a : x)
    for (const auto& b : y) out.push_back(a * b);
  return out;
}

std::vector<Scalar> pointwise_transform(std::span<const Scalar> x, const Transform& mode) {
  std::vector<Scalar> out;
  out.reserve(x.size());
  for (const auto& e : x) {
    if (mode.kind == Transform::Kind::Reciprocal) {
      if (is_zero_entry(e)) throw Error(ErrorCode::ReciprocalOfZero, "reciprocal of a zero entry");
      out.push_back(Scalar(1) / e);
    } else if (is_zero_entry(e)) {
      out.push_back(e.is_exact() ? Scalar(0) : Scalar(Real(0)));
    } else {
      out.push_back(pow(e, mode.exponent));
    }
  }
  sort_descending(out);
  return out;
}

std::vector<Scalar> pointwise_transform(const ProbVector& x, const Transform& mode) {
  return pointwise_transform(x.span(), mode);
}

Scalar scaled_p_norm(std::span<const Scalar> x, const Scalar& p) {
  const auto n = static_cast<long>(x.size());
  if (n == 0) throw Error(ErrorCode::EmptyInput, "norm of an empty vector");

  if (p.is_zero()) {
    if (any_zero(x)) return 0;
    Real mean_log = 0;
    for (const auto& e : x) mean_log += log2(e);
    return Scalar(Real(mp::exp2(mean_log / n)));
  }
  if (p.sign() < 0 && any_zero(x)) return 0;

  Scalar total = 0;
  for (const auto& e : x) {
    if (is_zero_entry(e)) continue;
    total += pow(e, p);
  }
  Scalar mean = total / Scalar(n);
  if (p == Scalar(1)) return mean;
  if (p == Scalar(-1)) return Scalar(1) / mean;
  if (mean.is_zero()) return mean;
  return Scalar(Real(mp::pow(mean.real(), Real(1) / p.real())));
}

std::string EntropyValue::to_string(int digits) const {
  if (neg_inf) return "-inf";
  std::ostringstream os;
  os << std::setprecision(digits) << bits;
  return os.str();
}

EntropyValue shannon_entropy(std::span<const Scalar> x) {
  Real h = 0;
  for (const auto& e : x) {
    if (is_zero_entry(e)) continue;
    h -= e.real() * log2(e);
  }
  return {false, h};
}

EntropyValue renyi_entropy(const ProbVector& x, const Scalar& p) {
  if (p.is_zero()) throw Error(ErrorCode::PZero, "Renyi entropy at p = 0; use burg_entropy");
  if (p == Scalar(1)) return shannon_entropy(x.span());
  if (p.sign() < 0 && !x.full_weight()) return EntropyValue::minus_infinity();

  Scalar total = 0;
  for (const auto& e : x.entries()) {
    if (is_zero_entry(e)) continue;
    total += pow(e, p);
  }
  Real one_minus_p = Real(1) - p.real();
  Real factor = Real(p.sign()) / one_minus_p;
  return {false, Real(factor * log2(total))};
}

EntropyValue burg_entropy(const ProbVector& x) {
  if (!x.full_weight()) return EntropyValue::minus_infinity();
  Real total = 0;
  for (const auto& e : x.entries()) total += log2(e);
  return {false, Real(total / static_cast<long>(x.dim()))};
}

}  // namespace catamaj
