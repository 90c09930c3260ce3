#include <doctest.h>

#include <cmath>

#include "companion.hpp"
#include "error.hpp"
#include "support.hpp"

using namespace bratspec;
using bratspec::testing::session;

TEST_CASE("Fibonacci companion matrix") {
  auto s = session("fibonacci", 1.0, "quadratic:5");
  const auto& p = s.model().perron();
  CompanionData c = companion_embedding(p.minimal_polynomial, 1, &p);
  CHECK(c.c == std::vector<std::vector<Rational>>{{1, 1}, {1, 2}});
  CHECK(c.pisot);
  CHECK(c.action_verified);
  CHECK(c.action_exact);
  const double phi = (1 + std::sqrt(5.0)) / 2;
  CHECK(c.stable_norm == doctest::Approx(1 / (phi * phi)));
}

TEST_CASE("coordinates round-trip through the lattice") {
  auto s = session("penrose", std::nullopt, "quadratic:5");
  const auto& m = s.model();
  const auto& p = m.perron();
  CompanionData c = companion_embedding(p.minimal_polynomial, p.dimension, &p);
  for (const auto& r : full_spectrum(m, 3)) {
    LatticeVector x = lattice_coords(c, p, r.eigenvalue);
    CHECK(from_coords(p, x) == r.eigenvalue);
    // C acts as multiplication by theta^(2/d).
    CHECK(from_coords(p, apply_companion(c, x)) == r.eigenvalue * p.theta);
  }
}

TEST_CASE("distance to the unstable line") {
  auto s = session("fibonacci", 1.0, "quadratic:5");
  const auto& p = s.model().perron();
  CompanionData c = companion_embedding(p.minimal_polynomial, 1, &p);
  CHECK(c.distance_to_unstable({Rational(0), Rational(0)}) == 0.0);
  LatticeVector x{Rational(3), Rational(5)};
  double direct = c.distance_to_unstable(x);
  LatticeVector y = apply_companion(c, x);
  // Iterating C contracts the stable component by the stable eigenvalue.
  CHECK(c.distance_to_unstable(y) == doctest::Approx(direct * c.stable_norm).epsilon(1e-9));
}

TEST_CASE("Thue-Morse eigenvalues lie on the line") {
  auto s = session("thue-morse", 1.0, "rational");
  StripRun run = run_strip(s.model(), 8);
  CHECK(run.report.max_distance == 0.0);
  CHECK(run.report.within_bound);
}

TEST_CASE("strip refuses approximate backends") {
  auto s = session("penrose");
  CHECK_THROWS_AS(run_strip(s.model(), 3), Error);
}
