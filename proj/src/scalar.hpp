#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>
#include <mpfr.h>

namespace bratspec {

using Integer = mpz_class;
using Rational = mpq_class;

std::string to_string(const Rational& q);
Rational parse_rational(std::string_view text);

// Multiple-precision binary float, round-to-nearest at its own precision.
class ApproxReal {
 public:
  explicit ApproxReal(long precision = 53);
  ApproxReal(double value, long precision);
  ApproxReal(const Rational& value, long precision);
  ApproxReal(const ApproxReal& other);
  ApproxReal(ApproxReal&& other) noexcept;
  ApproxReal& operator=(const ApproxReal& other);
  ApproxReal& operator=(ApproxReal&& other) noexcept;
  ~ApproxReal();

  long precision() const { return static_cast<long>(mpfr_get_prec(value_)); }
  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get() { return value_; }

  double to_double() const;
  int sign() const;
  bool is_zero() const { return sign() == 0; }
  ApproxReal abs() const;
  ApproxReal sqrt() const;
  ApproxReal log() const;
  ApproxReal exp() const;
  ApproxReal pow(const ApproxReal& exponent) const;
  ApproxReal pow(long exponent) const;
  ApproxReal root(unsigned long k) const;
  // Decimal with `digits` significant digits.
  std::string to_string(int digits) const;

  friend ApproxReal operator+(const ApproxReal& x, const ApproxReal& y);
  friend ApproxReal operator-(const ApproxReal& x, const ApproxReal& y);
  friend ApproxReal operator*(const ApproxReal& x, const ApproxReal& y);
  friend ApproxReal operator/(const ApproxReal& x, const ApproxReal& y);
  friend ApproxReal operator-(const ApproxReal& x);
  friend std::strong_ordering operator<=>(const ApproxReal& x, const ApproxReal& y);
  friend bool operator==(const ApproxReal& x, const ApproxReal& y);

 private:
  mpfr_t value_;
};

// a + b*sqrt(D) with D square-free and D >= 2.
class QuadraticNumber {
 public:
  QuadraticNumber(Rational a, Rational b, long discriminant);
  static QuadraticNumber from_rational(const Rational& a, long discriminant) {
    return QuadraticNumber(a, Rational(0), discriminant);
  }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  long discriminant() const { return d_; }

  int sign() const;
  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  QuadraticNumber conjugate() const { return QuadraticNumber(a_, -b_, d_); }
  Rational norm() const;
  QuadraticNumber inverse() const;
  ApproxReal embed(long precision) const;

  friend QuadraticNumber operator+(const QuadraticNumber& x, const QuadraticNumber& y);
  friend QuadraticNumber operator-(const QuadraticNumber& x, const QuadraticNumber& y);
  friend QuadraticNumber operator*(const QuadraticNumber& x, const QuadraticNumber& y);
  friend QuadraticNumber operator/(const QuadraticNumber& x, const QuadraticNumber& y);
  friend QuadraticNumber operator-(const QuadraticNumber& x);
  friend std::strong_ordering operator<=>(const QuadraticNumber& x, const QuadraticNumber& y);
  friend bool operator==(const QuadraticNumber& x, const QuadraticNumber& y);

 private:
  Rational a_;
  Rational b_;
  long d_;
};

QuadraticNumber quad_mul(const QuadraticNumber& x, const QuadraticNumber& y);
bool is_square_free(long n);

enum class BackendKind { rational, quadratic, approx };

struct Backend {
  BackendKind kind = BackendKind::rational;
  long discriminant = 0;
  long precision = 0;

  static Backend rational() { return {}; }
  static Backend quadratic(long d);
  static Backend approx(long bits);
  // "rational", "quadratic:D", "approx:BITS"
  static Backend parse(std::string_view text);

  bool exact() const { return kind != BackendKind::approx; }
  std::string to_string() const;
  // Comment line declaring how exact values are written.
  std::string basis_header() const;
  friend bool operator==(const Backend&, const Backend&) = default;
};

class Scalar {
 public:
  using Value = std::variant<Rational, QuadraticNumber, ApproxReal>;

  Scalar() : value_(Rational(0)) {}
  Scalar(Rational q) : value_(std::move(q)) {}
  Scalar(QuadraticNumber q) : value_(std::move(q)) {}
  Scalar(ApproxReal x) : value_(std::move(x)) {}

  static Scalar from_integer(const Backend& backend, long n);
  static Scalar from_rational(const Backend& backend, const Rational& q);
  static Scalar from_double(const Backend& backend, double x);

  BackendKind kind() const { return static_cast<BackendKind>(value_.index()); }
  bool is_exact() const { return kind() != BackendKind::approx; }
  Backend backend() const;
  const Value& value() const { return value_; }

  int sign() const;
  bool is_zero() const { return sign() == 0; }
  Scalar abs() const { return sign() < 0 ? -*this : *this; }
  Scalar inverse() const;
  Scalar pow(long exponent) const;
  double to_double() const;
  ApproxReal embed(long precision) const;
  // Same value carried by an approx backend.
  Scalar to_approx(long precision) const { return Scalar(embed(precision)); }
  // Canonical exact text (see Backend::basis_header); approx values as decimals.
  std::string exact_string() const;

  friend Scalar operator+(const Scalar& x, const Scalar& y);
  friend Scalar operator-(const Scalar& x, const Scalar& y);
  friend Scalar operator*(const Scalar& x, const Scalar& y);
  friend Scalar operator/(const Scalar& x, const Scalar& y);
  friend Scalar operator-(const Scalar& x);
  Scalar& operator+=(const Scalar& y) { return *this = *this + y; }
  Scalar& operator-=(const Scalar& y) { return *this = *this - y; }
  Scalar& operator*=(const Scalar& y) { return *this = *this * y; }
  Scalar& operator/=(const Scalar& y) { return *this = *this / y; }

  friend std::strong_ordering compare(const Scalar& x, const Scalar& y);
  friend std::strong_ordering operator<=>(const Scalar& x, const Scalar& y) { return compare(x, y); }
  friend bool operator==(const Scalar& x, const Scalar& y) { return compare(x, y) == 0; }

 private:
  Value value_;
};

std::string format_double(double x);

}  // namespace bratspec
