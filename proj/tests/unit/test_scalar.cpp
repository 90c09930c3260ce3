#include <doctest.h>

#include <cmath>
#include <random>

#include "scalar.hpp"

using namespace bratspec;

namespace {

// Compare an exact quadratic number with an mpfr value at 100 bits.
bool close_100(const QuadraticNumber& exact, const ApproxReal& approx) {
  ApproxReal diff = exact.embed(100) - approx;
  ApproxReal scale = approx.abs() + ApproxReal(1.0, 100);
  return (diff.abs() / scale).to_double() < 1e-25;
}

}  // namespace

TEST_CASE("quadratic arithmetic agrees with a 100-bit embedding") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coef(-40, 40), den(1, 12);
  for (long d : {2L, 3L, 5L, 7L}) {
    for (int trial = 0; trial < 200; ++trial) {
      QuadraticNumber x(Rational(coef(rng), den(rng)), Rational(coef(rng), den(rng)), d);
      QuadraticNumber y(Rational(coef(rng), den(rng)), Rational(coef(rng), den(rng)), d);
      ApproxReal xe = x.embed(100), ye = y.embed(100);
      CHECK(close_100(x * y, xe * ye));
      CHECK(close_100(x + y, xe + ye));
      CHECK(close_100(x - y, xe - ye));
      if (!y.is_zero()) CHECK(close_100(x / y, xe / ye));
      CHECK((x < y) == (xe < ye));
    }
  }
}

TEST_CASE("quadratic sign near cancellation") {
  // 3363/2378 approximates sqrt(2) from above.
  QuadraticNumber x(Rational(3363, 2378), Rational(-1), 2);
  CHECK(x.sign() > 0);
  CHECK((-x).sign() < 0);
  QuadraticNumber y(Rational(1393, 985), Rational(-1), 2);
  CHECK(y.sign() < 0);
  CHECK(QuadraticNumber(Rational(0), Rational(0), 5).sign() == 0);
}

TEST_CASE("norm and inverse") {
  QuadraticNumber phi(Rational(1, 2), Rational(1, 2), 5);
  CHECK(phi.norm() == Rational(-1));
  QuadraticNumber one = phi * phi.inverse();
  CHECK(one == QuadraticNumber::from_rational(Rational(1), 5));
  CHECK(phi * phi == phi + QuadraticNumber::from_rational(Rational(1), 5));
}

TEST_CASE("backend parsing") {
  CHECK(Backend::parse("rational") == Backend::rational());
  CHECK(Backend::parse("quadratic:5") == Backend::quadratic(5));
  CHECK(Backend::parse("approx:300").precision == 300);
  CHECK_THROWS(Backend::parse("quadratic:4"));
  CHECK_THROWS(Backend::parse("approx:x"));
  CHECK_THROWS(Backend::parse("float"));
  CHECK(Backend::quadratic(5).to_string() == "quadratic:5");
}

TEST_CASE("exact strings use the declared basis") {
  Scalar phi(QuadraticNumber(Rational(1, 2), Rational(1, 2), 5));
  CHECK(phi.exact_string() == "(0) + (1)*phi");
  Scalar x = Scalar::from_integer(Backend::quadratic(5), -1) - Scalar::from_integer(Backend::quadratic(5), 2) * phi;
  CHECK(x.exact_string() == "(-1) + (-2)*phi");
  CHECK(Scalar(Rational(-7, 3)).exact_string() == "-7/3");
  Scalar r2(QuadraticNumber(Rational(1), Rational(1), 2));
  CHECK(r2.exact_string() == "(1) + (1)*sqrt(2)");
}

TEST_CASE("mixed backends are rejected") {
  Scalar a(Rational(1));
  Scalar b(QuadraticNumber(Rational(1), Rational(1), 5));
  Scalar c(QuadraticNumber(Rational(1), Rational(1), 2));
  CHECK_THROWS(a + b);
  CHECK_THROWS(b + c);
}

TEST_CASE("format_double round-trips") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    double x = u(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
    CHECK(std::stod(format_double(x)) == x);
  }
  CHECK(format_double(0.0) == "0");
}

TEST_CASE("approx real") {
  ApproxReal two(2.0, 200);
  ApproxReal r = two.sqrt();
  CHECK(std::abs((r * r - two).to_double()) < 1e-55);
  CHECK(ApproxReal(8.0, 100).root(3).to_double() == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(ApproxReal(Rational(1, 3), 128).to_double() == doctest::Approx(1.0 / 3));
}
