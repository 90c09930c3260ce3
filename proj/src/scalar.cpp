#include "scalar.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

#include "error.hpp"

namespace bratspec {

namespace {

constexpr mpfr_rnd_t kRound = MPFR_RNDN;

long checked_precision(long bits) {
  if (bits < 53) fail(ErrorCode::invalid_argument, "approx precision must be at least 53 bits");
  return bits;
}

long max_prec(const ApproxReal& x, const ApproxReal& y) { return std::max(x.precision(), y.precision()); }

void require_same_d(const QuadraticNumber& x, const QuadraticNumber& y) {
  if (x.discriminant() != y.discriminant())
    fail(ErrorCode::backend_mismatch, "quadratic numbers over different discriminants");
}

}  // namespace

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  Rational q;
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    // Finite decimal, taken exactly.
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t frac = s.size() - dot - 1;
    Integer num;
    if (num.set_str(digits, 10) != 0) fail(ErrorCode::parse, "not a number: " + s);
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
    q = Rational(num, den);
  } else if (q.set_str(s, 10) != 0) {
    fail(ErrorCode::parse, "not a rational: " + s);
  }
  if (sgn(q.get_den()) == 0) fail(ErrorCode::parse, "zero denominator: " + s);
  q.canonicalize();
  return q;
}

// ---- ApproxReal

ApproxReal::ApproxReal(long precision) {
  mpfr_init2(value_, checked_precision(precision));
  mpfr_set_zero(value_, 1);
}

ApproxReal::ApproxReal(double value, long precision) : ApproxReal(precision) { mpfr_set_d(value_, value, kRound); }

ApproxReal::ApproxReal(const Rational& value, long precision) : ApproxReal(precision) {
  mpfr_set_q(value_, value.get_mpq_t(), kRound);
}

ApproxReal::ApproxReal(const ApproxReal& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, kRound);
}

ApproxReal::ApproxReal(ApproxReal&& other) noexcept {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_swap(value_, other.value_);
}

ApproxReal& ApproxReal::operator=(const ApproxReal& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, kRound);
  }
  return *this;
}

ApproxReal& ApproxReal::operator=(ApproxReal&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

ApproxReal::~ApproxReal() { mpfr_clear(value_); }

double ApproxReal::to_double() const { return mpfr_get_d(value_, kRound); }

int ApproxReal::sign() const {
  if (mpfr_nan_p(value_)) fail(ErrorCode::numeric, "NaN in approx arithmetic");
  return mpfr_sgn(value_);
}

ApproxReal ApproxReal::abs() const {
  ApproxReal r(precision());
  mpfr_abs(r.value_, value_, kRound);
  return r;
}

ApproxReal ApproxReal::sqrt() const {
  if (sign() < 0) fail(ErrorCode::numeric, "square root of a negative number");
  ApproxReal r(precision());
  mpfr_sqrt(r.value_, value_, kRound);
  return r;
}

ApproxReal ApproxReal::log() const {
  if (sign() <= 0) fail(ErrorCode::numeric, "logarithm of a nonpositive number");
  ApproxReal r(precision());
  mpfr_log(r.value_, value_, kRound);
  return r;
}

ApproxReal ApproxReal::exp() const {
  ApproxReal r(precision());
  mpfr_exp(r.value_, value_, kRound);
  return r;
}

ApproxReal ApproxReal::pow(const ApproxReal& exponent) const {
  ApproxReal r(max_prec(*this, exponent));
  mpfr_pow(r.value_, value_, exponent.value_, kRound);
  return r;
}

ApproxReal ApproxReal::pow(long exponent) const {
  ApproxReal r(precision());
  mpfr_pow_si(r.value_, value_, exponent, kRound);
  return r;
}

ApproxReal ApproxReal::root(unsigned long k) const {
  if (k == 0) fail(ErrorCode::invalid_argument, "zeroth root");
  if (sign() < 0) fail(ErrorCode::numeric, "root of a negative number");
  ApproxReal r(precision());
  mpfr_rootn_ui(r.value_, value_, k, kRound);
  return r;
}

std::string ApproxReal::to_string(int digits) const {
  if (is_zero()) return "0";
  std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, value_);
  return std::string(buf.data());
}

ApproxReal operator+(const ApproxReal& x, const ApproxReal& y) {
  ApproxReal r(max_prec(x, y));
  mpfr_add(r.get(), x.get(), y.get(), kRound);
  return r;
}

ApproxReal operator-(const ApproxReal& x, const ApproxReal& y) {
  ApproxReal r(max_prec(x, y));
  mpfr_sub(r.get(), x.get(), y.get(), kRound);
  return r;
}

ApproxReal operator*(const ApproxReal& x, const ApproxReal& y) {
  ApproxReal r(max_prec(x, y));
  mpfr_mul(r.get(), x.get(), y.get(), kRound);
  return r;
}

ApproxReal operator/(const ApproxReal& x, const ApproxReal& y) {
  if (y.is_zero()) fail(ErrorCode::numeric, "division by zero");
  ApproxReal r(max_prec(x, y));
  mpfr_div(r.get(), x.get(), y.get(), kRound);
  return r;
}

ApproxReal operator-(const ApproxReal& x) {
  ApproxReal r(x.precision());
  mpfr_neg(r.get(), x.get(), kRound);
  return r;
}

std::strong_ordering operator<=>(const ApproxReal& x, const ApproxReal& y) {
  if (mpfr_nan_p(x.get()) || mpfr_nan_p(y.get())) fail(ErrorCode::numeric, "NaN in comparison");
  int c = mpfr_cmp(x.get(), y.get());
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

bool operator==(const ApproxReal& x, const ApproxReal& y) { return (x <=> y) == 0; }

// ---- QuadraticNumber

bool is_square_free(long n) {
  if (n < 2) return false;
  for (long p = 2; p * p <= n; ++p)
    if (n % (p * p) == 0) return false;
  return true;
}

QuadraticNumber::QuadraticNumber(Rational a, Rational b, long discriminant)
    : a_(std::move(a)), b_(std::move(b)), d_(discriminant) {
  if (!is_square_free(d_)) fail(ErrorCode::invalid_argument, "discriminant must be square-free and >= 2");
}

int QuadraticNumber::sign() const {
  int sa = sgn(a_);
  int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: the larger of a^2 and b^2 D wins.
  Rational lhs = a_ * a_;
  Rational rhs = b_ * b_ * d_;
  return lhs > rhs ? sa : sb;
}

Rational QuadraticNumber::norm() const { return Rational(a_ * a_ - b_ * b_ * d_); }

QuadraticNumber QuadraticNumber::inverse() const {
  if (is_zero()) fail(ErrorCode::numeric, "division by zero");
  Rational n = norm();
  return QuadraticNumber(Rational(a_ / n), Rational(-b_ / n), d_);
}

ApproxReal QuadraticNumber::embed(long precision) const {
  // Work with guard bits so the final rounding dominates the error.
  long work = checked_precision(precision) + 32;
  ApproxReal root(Rational(d_), work);
  root = root.sqrt();
  ApproxReal r = ApproxReal(a_, work) + ApproxReal(b_, work) * root;
  ApproxReal out(precision);
  mpfr_set(out.get(), r.get(), kRound);
  return out;
}

QuadraticNumber operator+(const QuadraticNumber& x, const QuadraticNumber& y) {
  require_same_d(x, y);
  return QuadraticNumber(Rational(x.a() + y.a()), Rational(x.b() + y.b()), x.discriminant());
}

QuadraticNumber operator-(const QuadraticNumber& x, const QuadraticNumber& y) {
  require_same_d(x, y);
  return QuadraticNumber(Rational(x.a() - y.a()), Rational(x.b() - y.b()), x.discriminant());
}

QuadraticNumber operator*(const QuadraticNumber& x, const QuadraticNumber& y) {
  require_same_d(x, y);
  Rational a = x.a() * y.a() + x.b() * y.b() * x.discriminant();
  Rational b = x.a() * y.b() + x.b() * y.a();
  return QuadraticNumber(std::move(a), std::move(b), x.discriminant());
}

QuadraticNumber operator/(const QuadraticNumber& x, const QuadraticNumber& y) {
  require_same_d(x, y);
  return x * y.inverse();
}

QuadraticNumber operator-(const QuadraticNumber& x) {
  return QuadraticNumber(Rational(-x.a()), Rational(-x.b()), x.discriminant());
}

std::strong_ordering operator<=>(const QuadraticNumber& x, const QuadraticNumber& y) {
  int s = (x - y).sign();
  return s < 0 ? std::strong_ordering::less : s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

bool operator==(const QuadraticNumber& x, const QuadraticNumber& y) {
  require_same_d(x, y);
  return x.a() == y.a() && x.b() == y.b();
}

QuadraticNumber quad_mul(const QuadraticNumber& x, const QuadraticNumber& y) { return x * y; }

// ---- Backend

Backend Backend::quadratic(long d) {
  if (!is_square_free(d)) fail(ErrorCode::invalid_argument, "quadratic backend needs a square-free D >= 2");
  return {BackendKind::quadratic, d, 0};
}

Backend Backend::approx(long bits) { return {BackendKind::approx, 0, checked_precision(bits)}; }

Backend Backend::parse(std::string_view text) {
  auto number_after = [&](std::string_view prefix) {
    std::string rest(text.substr(prefix.size()));
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(rest, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (rest.empty() || used != rest.size()) fail(ErrorCode::parse, "bad backend: " + std::string(text));
    return v;
  };
  if (text == "rational") return rational();
  if (text.starts_with("quadratic:")) return quadratic(number_after("quadratic:"));
  if (text.starts_with("approx:")) return approx(number_after("approx:"));
  fail(ErrorCode::parse, "unknown backend: " + std::string(text));
}

std::string Backend::to_string() const {
  switch (kind) {
    case BackendKind::rational:
      return "rational";
    case BackendKind::quadratic:
      return "quadratic:" + std::to_string(discriminant);
    case BackendKind::approx:
      return "approx:" + std::to_string(precision);
  }
  return {};
}

namespace {

// Name of the second basis element for Q(sqrt D).
std::string omega_name(long d) {
  if (d == 5) return "phi";
  if (d % 4 == 1) return "w";
  return "sqrt(" + std::to_string(d) + ")";
}

}  // namespace

std::string Backend::basis_header() const {
  switch (kind) {
    case BackendKind::rational:
      return "# field: Q";
    case BackendKind::quadratic: {
      std::string d = std::to_string(discriminant);
      if (discriminant % 4 == 1)
        return "# field: Q(sqrt(" + d + ")); exact values c0 + c1*" + omega_name(discriminant) + " with " +
               omega_name(discriminant) + " = (1+sqrt(" + d + "))/2";
      return "# field: Q(sqrt(" + d + ")); exact values c0 + c1*sqrt(" + d + ")";
    }
    case BackendKind::approx:
      return "# field: R (" + std::to_string(precision) + "-bit binary floats)";
  }
  return {};
}

// ---- Scalar

namespace {

[[noreturn]] void mixed() { fail(ErrorCode::backend_mismatch, "mixed scalar backends"); }

template <class Op>
Scalar binary(const Scalar& x, const Scalar& y, Op op) {
  if (x.kind() != y.kind()) mixed();
  return std::visit(
      [&](const auto& a) -> Scalar {
        using T = std::decay_t<decltype(a)>;
        return Scalar(T(op(a, std::get<T>(y.value()))));
      },
      x.value());
}

}  // namespace

Scalar Scalar::from_integer(const Backend& backend, long n) { return from_rational(backend, Rational(n)); }

Scalar Scalar::from_rational(const Backend& backend, const Rational& q) {
  switch (backend.kind) {
    case BackendKind::rational:
      return Scalar(q);
    case BackendKind::quadratic:
      return Scalar(QuadraticNumber::from_rational(q, backend.discriminant));
    case BackendKind::approx:
      return Scalar(ApproxReal(q, backend.precision));
  }
  mixed();
}

Scalar Scalar::from_double(const Backend& backend, double x) {
  if (backend.kind == BackendKind::approx) return Scalar(ApproxReal(x, backend.precision));
  Rational q(x);
  return from_rational(backend, q);
}

Backend Scalar::backend() const {
  switch (kind()) {
    case BackendKind::rational:
      return Backend::rational();
    case BackendKind::quadratic:
      return Backend::quadratic(std::get<QuadraticNumber>(value_).discriminant());
    case BackendKind::approx:
      return Backend::approx(std::get<ApproxReal>(value_).precision());
  }
  return {};
}

int Scalar::sign() const {
  return std::visit(
      [](const auto& a) -> int {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, Rational>)
          return sgn(a);
        else
          return a.sign();
      },
      value_);
}

Scalar Scalar::inverse() const { return from_integer(backend(), 1) / *this; }

Scalar Scalar::pow(long exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  if (kind() == BackendKind::approx) return Scalar(std::get<ApproxReal>(value_).pow(exponent));
  Scalar result = from_integer(backend(), 1);
  Scalar base = *this;
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    exponent >>= 1;
    if (exponent) base *= base;
  }
  return result;
}

double Scalar::to_double() const { return embed(64).to_double(); }

ApproxReal Scalar::embed(long precision) const {
  return std::visit(
      [&](const auto& a) -> ApproxReal {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, Rational>) {
          return ApproxReal(a, precision);
        } else if constexpr (std::is_same_v<T, QuadraticNumber>) {
          return a.embed(precision);
        } else {
          ApproxReal out(precision);
          mpfr_set(out.get(), a.get(), kRound);
          return out;
        }
      },
      value_);
}

std::string Scalar::exact_string() const {
  return std::visit(
      [](const auto& a) -> std::string {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, Rational>) {
          return to_string(a);
        } else if constexpr (std::is_same_v<T, QuadraticNumber>) {
          long d = a.discriminant();
          if (d % 4 == 1) {
            // sqrt(D) = 2w - 1
            Rational c0 = a.a() - a.b();
            Rational c1 = 2 * a.b();
            return "(" + to_string(c0) + ") + (" + to_string(c1) + ")*" + omega_name(d);
          }
          return "(" + to_string(a.a()) + ") + (" + to_string(a.b()) + ")*" + omega_name(d);
        } else {
          return a.to_string(static_cast<int>(a.precision() * 0.30103) + 1);
        }
      },
      value_);
}

Scalar operator+(const Scalar& x, const Scalar& y) {
  return binary(x, y, [](const auto& a, const auto& b) { return a + b; });
}

Scalar operator-(const Scalar& x, const Scalar& y) {
  return binary(x, y, [](const auto& a, const auto& b) { return a - b; });
}

Scalar operator*(const Scalar& x, const Scalar& y) {
  return binary(x, y, [](const auto& a, const auto& b) { return a * b; });
}

Scalar operator/(const Scalar& x, const Scalar& y) {
  if (y.is_zero()) fail(ErrorCode::numeric, "division by zero");
  return binary(x, y, [](const auto& a, const auto& b) { return a / b; });
}

Scalar operator-(const Scalar& x) {
  return std::visit([](const auto& a) -> Scalar { return Scalar(std::decay_t<decltype(a)>(-a)); }, x.value());
}

std::strong_ordering compare(const Scalar& x, const Scalar& y) {
  if (x.kind() != y.kind()) mixed();
  int s = (x - y).sign();
  return s < 0 ? std::strong_ordering::less : s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

std::string format_double(double x) {
  if (x == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace bratspec
