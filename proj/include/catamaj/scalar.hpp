#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace catamaj {

namespace mp = boost::multiprecision;

using Integer = mp::mpz_int;
using Rational = mp::mpq_rational;
using Real = mp::mpfr_float;

enum class Backend { Exact, Float };

enum class ErrorCode {
  EmptyInput,
  NegativeEntry,
  SumNotOne,
  ParseError,
  ReciprocalOfZero,
  PZero,
  DegreeCapExceeded,
  KOutOfRange,
  DimMismatch,
  SupportViolation,
  EpsNonPositive,
  GibbsZeroEntry,
  GridTooLarge,
  EmbeddingTooLarge,
  InvalidArgument,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Working precision of every Real created afterwards. Process-wide; call it
// before building any values (the CLI and the Python module do so at start).
void set_float_precision(unsigned bits);
unsigned float_precision();

// Parses "0.0435", "-1.5e-3", "7", "3/8" without any binary round trip.
Rational parse_rational(std::string_view text);

// Shortest decimal that round-trips the double, then parsed exactly.
Rational rational_from_double(double value);

/// A real number that is either an exact rational or an MPFR float.
///
/// Arithmetic between two exact values stays exact; anything touching a
/// float is carried out in floating point at the working precision.
class Scalar {
 public:
  Scalar() : value_(Rational(0)) {}
  Scalar(int v) : value_(Rational(v)) {}  // NOLINT(google-explicit-constructor)
  Scalar(long v) : value_(Rational(v)) {}  // NOLINT(google-explicit-constructor)
  Scalar(Rational v) : value_(std::move(v)) {}  // NOLINT
  Scalar(Real v) : value_(std::move(v)) {}  // NOLINT
  Scalar(double) = delete;  // use from_double() and pick a backend

  static Scalar parse(std::string_view text, Backend backend);
  static Scalar from_double(double value, Backend backend);

  bool is_exact() const { return std::holds_alternative<Rational>(value_); }
  Backend backend() const { return is_exact() ? Backend::Exact : Backend::Float; }
  const Rational& rational() const;
  Real real() const;
  double to_double() const;

  int sign() const;
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  Scalar operator-() const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b);
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return (a <=> b) == std::strong_ordering::equal;
  }

  // Exact values render as "p/q" (or "p"); floats in scientific notation so
  // the two forms never collide when parsed back by from_string().
  std::string to_string() const;
  static Scalar from_string(std::string_view text);
  std::string to_decimal(int significant_digits) const;

  // Bitwise identity of representation, not numeric equality.
  bool same_representation(const Scalar& o) const;

 private:
  std::variant<Rational, Real> value_;
};

Scalar abs(const Scalar& x);
Scalar pow(const Scalar& base, long exponent);
// Exact when the exponent is an integer and the base exact; Real otherwise.
Scalar pow(const Scalar& base, const Scalar& exponent);
Real log2(const Scalar& x);
Real log2(const Real& x);

}  // namespace catamaj
