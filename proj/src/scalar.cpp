#include "catamaj/scalar.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace catamaj {

namespace {

std::atomic<unsigned> g_precision_bits{256};

unsigned bits_to_digits10(unsigned bits) {
  return static_cast<unsigned>(std::floor(bits * 0.30102999566398120)) + 1;
}

struct PrecisionInit {
  PrecisionInit() { Real::default_precision(bits_to_digits10(256)); }
};
const PrecisionInit precision_init;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void parse_fail(std::string_view text) {
  throw Error(ErrorCode::ParseError, "cannot parse number '" + std::string(text) + "'");
}

Integer parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) parse_fail(whole);
  for (char c : digits)
    if (c < '0' || c > '9') parse_fail(whole);
  // Strip leading zeros: the string constructor reads "0..." as octal.
  std::size_t first = digits.find_first_not_of('0');
  if (first == std::string_view::npos) return Integer(0);
  return Integer(std::string(digits.substr(first)));
}

Integer pow10(unsigned e) { return mp::pow(Integer(10), e); }

}  // namespace

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::SumNotOne: return "SumNotOne";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ReciprocalOfZero: return "ReciprocalOfZero";
    case ErrorCode::PZero: return "PZero";
    case ErrorCode::DegreeCapExceeded: return "DegreeCapExceeded";
    case ErrorCode::KOutOfRange: return "KOutOfRange";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::SupportViolation: return "SupportViolation";
    case ErrorCode::EpsNonPositive: return "EpsNonPositive";
    case ErrorCode::GibbsZeroEntry: return "GibbsZeroEntry";
    case ErrorCode::GridTooLarge: return "GridTooLarge";
    case ErrorCode::EmbeddingTooLarge: return "EmbeddingTooLarge";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

void set_float_precision(unsigned bits) {
  if (bits < 128) throw Error(ErrorCode::InvalidArgument, "float precision must be at least 128 bits");
  g_precision_bits = bits;
  Real::default_precision(bits_to_digits10(bits));
}

unsigned float_precision() { return g_precision_bits; }

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) parse_fail(text);

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Rational num = parse_rational(s.substr(0, slash));
    Rational den = parse_rational(s.substr(slash + 1));
    if (den == 0) parse_fail(text);
    return num / den;
  }

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = s.substr(e + 1);
    if (exp_part.empty()) parse_fail(text);
    auto [ptr, ec] = std::from_chars(exp_part.data() + (exp_part.front() == '+' ? 1 : 0),
                                     exp_part.data() + exp_part.size(), exponent);
    if (ec != std::errc() || ptr != exp_part.data() + exp_part.size()) parse_fail(text);
    s = s.substr(0, e);
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac_part = s.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) parse_fail(text);
    digits.append(int_part).append(frac_part);
    exponent -= static_cast<long>(frac_part.size());
  } else {
    digits.assign(s);
  }
  Integer mantissa = parse_integer(digits, text);
  Rational value(mantissa);
  if (exponent > 0)
    value *= Rational(pow10(static_cast<unsigned>(exponent)));
  else if (exponent < 0)
    value /= Rational(pow10(static_cast<unsigned>(-exponent)));
  return negative ? Rational(-value) : value;
}

Rational rational_from_double(double value) {
  if (!std::isfinite(value))
    throw Error(ErrorCode::ParseError, "non-finite number");
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw Error(ErrorCode::ParseError, "double formatting failed");
  return parse_rational(std::string_view(buf, ptr - buf));
}

Scalar Scalar::parse(std::string_view text, Backend backend) {
  Rational q = parse_rational(text);
  if (backend == Backend::Exact) return Scalar(q);
  return Scalar(Real(q));
}

Scalar Scalar::from_double(double value, Backend backend) {
  Rational q = rational_from_double(value);
  if (backend == Backend::Exact) return Scalar(q);
  return Scalar(Real(q));
}

const Rational& Scalar::rational() const {
  if (const auto* q = std::get_if<Rational>(&value_)) return *q;
  throw Error(ErrorCode::InvalidArgument, "scalar is not exact");
}

Real Scalar::real() const {
  if (const auto* q = std::get_if<Rational>(&value_)) return Real(*q);
  return std::get<Real>(value_);
}

double Scalar::to_double() const {
  if (const auto* q = std::get_if<Rational>(&value_)) return q->convert_to<double>();
  return std::get<Real>(value_).convert_to<double>();
}

int Scalar::sign() const {
  return std::visit([](const auto& v) { return v.sign(); }, value_);
}

bool Scalar::is_integer() const {
  if (const auto* q = std::get_if<Rational>(&value_)) return mp::denominator(*q) == 1;
  const Real& r = std::get<Real>(value_);
  return mp::floor(r) == r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (is_exact() && o.is_exact())
    std::get<Rational>(value_) += o.rational();
  else
    value_ = Real(real() + o.real());
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (is_exact() && o.is_exact())
    std::get<Rational>(value_) -= o.rational();
  else
    value_ = Real(real() - o.real());
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (is_exact() && o.is_exact())
    std::get<Rational>(value_) *= o.rational();
  else
    value_ = Real(real() * o.real());
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw Error(ErrorCode::InvalidArgument, "division by zero");
  if (is_exact() && o.is_exact())
    std::get<Rational>(value_) /= o.rational();
  else
    value_ = Real(real() / o.real());
  return *this;
}

Scalar Scalar::operator-() const {
  if (is_exact()) return Scalar(Rational(-rational()));
  return Scalar(Real(-std::get<Real>(value_)));
}

std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
  int c;
  if (a.is_exact() && b.is_exact())
    c = a.rational().compare(b.rational());
  else
    c = a.real().compare(b.real());
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::string Scalar::to_string() const {
  if (is_exact()) return rational().str();
  const Real& r = std::get<Real>(value_);
  std::ostringstream os;
  os << std::scientific << std::setprecision(static_cast<int>(r.precision()) + 3) << r;
  return os.str();
}

Scalar Scalar::from_string(std::string_view text) {
  std::string_view s = trim(text);
  if (s == "inf" || s == "-inf" || s == "nan")
    throw Error(ErrorCode::ParseError, "non-finite scalar '" + std::string(s) + "'");
  bool floaty = s.find_first_of(".eE") != std::string_view::npos && s.find('/') == std::string_view::npos;
  if (!floaty) return Scalar(parse_rational(s));
  return Scalar(Real(std::string(s)));
}

std::string Scalar::to_decimal(int significant_digits) const {
  Real r = real();
  std::ostringstream os;
  os << std::setprecision(significant_digits) << r;
  return os.str();
}

bool Scalar::same_representation(const Scalar& o) const {
  if (is_exact() != o.is_exact()) return false;
  return to_string() == o.to_string();
}

Scalar abs(const Scalar& x) { return x.sign() < 0 ? -x : x; }

Scalar pow(const Scalar& base, long exponent) {
  if (base.is_exact()) {
    const Rational& q = base.rational();
    if (exponent >= 0) {
      Integer num = mp::pow(mp::numerator(q), static_cast<unsigned>(exponent));
      Integer den = mp::pow(mp::denominator(q), static_cast<unsigned>(exponent));
      return Scalar(Rational(num, den));
    }
    if (q == 0) throw Error(ErrorCode::InvalidArgument, "zero to a negative power");
    auto e = static_cast<unsigned>(-exponent);
    Integer num = mp::pow(mp::denominator(q), e);
    Integer den = mp::pow(mp::numerator(q), e);
    return Scalar(Rational(num, den));
  }
  return Scalar(Real(mp::pow(base.real(), exponent)));
}

Scalar pow(const Scalar& base, const Scalar& exponent) {
  if (exponent.is_integer() && base.is_exact()) {
    Real e = exponent.real();
    if (mp::abs(e) < Real(1L << 30)) return pow(base, e.convert_to<long>());
  }
  if (base.is_zero()) return Scalar(Real(0));
  return Scalar(Real(mp::pow(base.real(), exponent.real())));
}

Real log2(const Real& x) { return mp::log2(x); }

Real log2(const Scalar& x) {
  if (x.is_exact()) {
    // log2(p/q) = log2 p - log2 q keeps full relative precision for tiny values.
    const Rational& q = x.rational();
    return mp::log2(Real(mp::numerator(q))) - mp::log2(Real(mp::denominator(q)));
  }
  return mp::log2(x.real());
}

}  // namespace catamaj
