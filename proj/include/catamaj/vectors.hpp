#pragma once

#include <span>
#include <string>
#include <vector>

#include "catamaj/scalar.hpp"

namespace catamaj {

struct VectorOptions {
  Backend backend = Backend::Exact;
  // Divide by the (exact) sum instead of rejecting inputs that miss 1.
  bool normalize = false;
  double sum_tolerance = 1e-9;
};

// Float entries below this count as zero when computing the weight.
inline constexpr double kFloatZeroThreshold = 1e-15;

bool is_zero_entry(const Scalar& v);

/// Probability vector, sorted in non-increasing order.
class ProbVector {
 public:
  ProbVector() = default;

  // Validates and sorts. Throws Error{EmptyInput, NegativeEntry, SumNotOne}.
  static ProbVector from_scalars(std::vector<Scalar> entries, const VectorOptions& options = {});

  const std::vector<Scalar>& entries() const { return entries_; }
  std::span<const Scalar> span() const { return entries_; }
  const Scalar& operator[](std::size_t i) const { return entries_[i]; }
  std::size_t dim() const { return entries_.size(); }
  std::size_t weight() const { return weight_; }
  bool full_weight() const { return weight_ == entries_.size(); }
  Backend backend() const { return backend_; }

  const Scalar& largest() const { return entries_.front(); }
  // Smallest nonzero entry.
  const Scalar& smallest_nonzero() const { return entries_[weight_ - 1]; }

  ProbVector padded(std::size_t n) const;
  // Drops trailing zeros down to dimension n (n >= weight).
  ProbVector truncated(std::size_t n) const;

  friend bool operator==(const ProbVector& a, const ProbVector& b) { return a.entries_ == b.entries_; }

 private:
  std::vector<Scalar> entries_;
  std::size_t weight_ = 0;
  Backend backend_ = Backend::Exact;
};

ProbVector make_prob_vector(std::span<const std::string> raw, const VectorOptions& options = {});
ProbVector make_prob_vector(std::span<const double> raw, const VectorOptions& options = {});
ProbVector uniform_vector(std::size_t n, Backend backend = Backend::Exact);

ProbVector tensor(const ProbVector& x, const ProbVector& y);

// Level-ordered Kronecker product (no re-sorting). Used where entries are
// paired with energy levels.
std::vector<Scalar> kron(std::span<const Scalar> x, std::span<const Scalar> y);

struct Transform {
  enum class Kind { Power, Reciprocal };
  Kind kind = Kind::Power;
  Scalar exponent = 1;

  static Transform power(Scalar m) { return {Kind::Power, std::move(m)}; }
  static Transform reciprocal() { return {Kind::Reciprocal, -1}; }
};

// Element-wise x^m (0^m = 0) or 1/x; not renormalized; sorted descending.
std::vector<Scalar> pointwise_transform(const ProbVector& x, const Transform& mode);
std::vector<Scalar> pointwise_transform(std::span<const Scalar> x, const Transform& mode);

// ((1/n) sum x_i^p)^(1/p); geometric mean at p = 0; 0 for p < 0 on deficient support.
Scalar scaled_p_norm(std::span<const Scalar> x, const Scalar& p);
inline Scalar scaled_p_norm(const ProbVector& x, const Scalar& p) { return scaled_p_norm(x.span(), p); }

/// Entropy in bits, or minus infinity.
struct EntropyValue {
  bool neg_inf = false;
  Real bits;

  static EntropyValue minus_infinity() { return {true, Real(0)}; }
  friend bool operator<(const EntropyValue& a, const EntropyValue& b) {
    if (a.neg_inf) return !b.neg_inf;
    if (b.neg_inf) return false;
    return a.bits < b.bits;
  }
  friend bool operator>(const EntropyValue& a, const EntropyValue& b) { return b < a; }
  std::string to_string(int digits = 17) const;
};

EntropyValue renyi_entropy(const ProbVector& x, const Scalar& p);
EntropyValue shannon_entropy(std::span<const Scalar> x);
EntropyValue burg_entropy(const ProbVector& x);

}  // namespace catamaj
