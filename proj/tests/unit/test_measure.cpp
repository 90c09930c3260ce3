#include <doctest.h>

#include <cmath>

#include "error.hpp"
#include "measure.hpp"
#include "polynomial.hpp"

using namespace bratspec;

TEST_CASE("characteristic and minimal polynomials") {
  CHECK(characteristic_polynomial({{1, 1}, {1, 0}}) == IntPolynomial{-1, -1, 1});
  CHECK(characteristic_polynomial({{2, 1}, {1, 1}}) == IntPolynomial{1, -3, 1});
  // Thue-Morse: x^2 - 2x, Perron factor x - 2.
  CHECK(perron_minimal_polynomial({{1, 1}, {1, 1}}) == IntPolynomial{-2, 1});
  CHECK(perron_minimal_polynomial({{2}}) == IntPolynomial{-2, 1});
  // Block with a rational and a quadratic factor: (x - 2)(x^2 - x - 1) appears for this 3x3.
  IntMatrix a{{1, 1, 0}, {1, 0, 1}, {0, 1, 1}};
  IntPolynomial chi = characteristic_polynomial(a);
  IntPolynomial mp = perron_minimal_polynomial(a);
  CHECK(remainder_monic(chi, mp).empty());
  double rho = perron_estimate(a);
  double value = 0;
  for (int k = degree(mp); k >= 0; --k) value = value * rho + mp[k].get_d();
  CHECK(std::abs(value) < 1e-9);
}

TEST_CASE("Perron data on the golden field") {
  auto d = BratteliDiagram::build({{1, 1}, {1, 0}}, 1);
  PerronData p = perron(d, Backend::quadratic(5));
  Scalar phi(QuadraticNumber(Rational(1, 2), Rational(1, 2), 5));
  CHECK(p.theta == phi);
  // A v = theta v and u A = theta u.
  const auto& a = d.matrix();
  for (int i = 0; i < 2; ++i) {
    Scalar row = Scalar::from_integer(p.backend, 0), col = row;
    for (int j = 0; j < 2; ++j) {
      row += Scalar::from_integer(p.backend, a[i][j]) * p.v_right[j];
      col += p.v_left[j] * Scalar::from_integer(p.backend, a[j][i]);
    }
    CHECK(row == p.theta * p.v_right[i]);
    CHECK(col == p.theta * p.v_left[i]);
  }
  CHECK_THROWS_AS(perron(d, Backend::rational()), Error);
  CHECK_THROWS_AS(perron(d, Backend::quadratic(2)), Error);
}

TEST_CASE("cylinder measures sum to one at every generation") {
  for (auto [a, g, backend] : {std::tuple{IntMatrix{{1, 1}, {1, 0}}, 1, Backend::quadratic(5)},
                               std::tuple{IntMatrix{{2, 1}, {1, 1}}, 20, Backend::quadratic(5)},
                               std::tuple{IntMatrix{{1, 1}, {1, 1}}, 1, Backend::rational()},
                               std::tuple{IntMatrix{{2}}, 1, Backend::rational()}}) {
    auto d = BratteliDiagram::build(a, g);
    PerronData p = perron(d, backend);
    for (int n = 1; n <= 6; ++n) {
      Scalar total = Scalar::from_integer(backend, 0);
      for (const auto& path : enumerate_paths(d, n).paths) total += mu(p, d, path);
      CHECK(total == Scalar::from_integer(backend, 1));
    }
  }
}

TEST_CASE("Penrose root-generation measures") {
  auto d = BratteliDiagram::build({{2, 1}, {1, 1}}, 20);
  PerronData p = perron(d, Backend::quadratic(5));
  Scalar alpha = p.v_right[0] / p.v_right[1];
  Scalar phi(QuadraticNumber(Rational(1, 2), Rational(1, 2), 5));
  CHECK(alpha == phi);
  CHECK(mu_at(p, 0, 1) / mu_at(p, 1, 1) == phi);
  CHECK(mu_at(p, 0, 2) * p.theta == mu_at(p, 0, 1));
}

TEST_CASE("zeta partial sums follow a geometric law") {
  auto d = BratteliDiagram::build({{1, 1}, {1, 0}}, 1);
  PerronData p = perron(d, Backend::approx(200));
  const double phi = (1 + std::sqrt(5.0)) / 2;
  for (double s : {0.5, 1.0, 2.0}) {
    auto rows = zeta_partial(WeightSystem::measure_root(), p, d, s, 24);
    REQUIRE(rows.size() == 25);
    CHECK(rows[0].cumulative == 1.0);
    CHECK(rows[24].ratio == doctest::Approx(std::pow(phi, 1 - s)).epsilon(1e-6));
  }
}

TEST_CASE("ultrametric distance") {
  auto d = BratteliDiagram::build({{1, 1}, {1, 1}}, 1);
  PerronData p = perron(d, Backend::rational());
  auto t = enumerate_paths(d, 3);
  WeightSystem w = WeightSystem::measure_root();
  CHECK(ultrametric_distance(w, p, d, t.paths[0], t.paths[0]).is_zero());
  // Paths sharing a generation-2 prefix sit at distance w(prefix) = mu(prefix) = 1/4.
  CHECK(ultrametric_distance(w, p, d, t.paths[0], t.paths[1]) == Scalar(Rational(1, 4)));
  CHECK(ultrametric_distance(w, p, d, t.paths[0], t.paths[7]) == Scalar(Rational(1)));
}
