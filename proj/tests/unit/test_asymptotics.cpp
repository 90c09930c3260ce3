#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "asymptotics.hpp"
#include "error.hpp"
#include "support.hpp"

using namespace bratspec;
using bratspec::testing::session;

namespace {

std::vector<long> brute_factors(const std::vector<int>& w, int n_max) {
  std::vector<long> out(n_max + 1, 0);
  out[0] = 1;
  for (int n = 1; n <= n_max; ++n) {
    std::set<std::vector<int>> seen;
    for (std::size_t i = 0; i + n <= w.size(); ++i) seen.emplace(w.begin() + i, w.begin() + i + n);
    out[n] = static_cast<long>(seen.size());
  }
  return out;
}

}  // namespace

TEST_CASE("suffix automaton counts agree with explicit factor sets") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    std::uniform_int_distribution<int> letter(0, 1 + trial % 3);
    std::vector<int> w(50 + trial * 7);
    for (auto& x : w) x = letter(rng);
    CHECK(factor_counts(w, 25) == brute_factors(w, 25));
  }
  auto tm = SubstitutionRule::from_strings({{'0', "01"}, {'1', "10"}});
  auto prefix = fixed_point_prefix(tm, 0, 1, 4096);
  CHECK(factor_counts(prefix, 40) == brute_factors(prefix, 40));
}

TEST_CASE("fixed point prefixes") {
  auto fib = SubstitutionRule::from_strings({{'a', "ab"}, {'b', "a"}});
  CHECK(fixed_point_prefix(fib, 0, 1, 13) == std::vector<int>{0, 1, 0, 0, 1, 0, 1, 0, 0, 1, 0, 0, 1});
  auto tm = SubstitutionRule::from_strings({{'0', "01"}, {'1', "10"}});
  CHECK(fixed_point_prefix(tm, 0, 1, 8) == std::vector<int>{0, 1, 1, 0, 1, 0, 0, 1});
}

TEST_CASE("Sturmian and Thue-Morse complexity") {
  auto fib = SubstitutionRule::from_strings({{'a', "ab"}, {'b', "a"}});
  ComplexityTable t = factor_complexity(fib, 200);
  for (int n = 1; n <= 200; ++n) CHECK(t.counts[n] == n + 1);
  auto tm = SubstitutionRule::from_strings({{'0', "01"}, {'1', "10"}});
  ComplexityTable u = factor_complexity(tm, 10);
  CHECK(std::vector<long>(u.counts.begin() + 1, u.counts.end()) == std::vector<long>{2, 4, 6, 10, 12, 16, 20, 22, 24, 28});
  auto two_d = SubstitutionRule::from_strings({{'a', "ab"}, {'b', "a"}}, 2);
  CHECK_THROWS_AS(factor_complexity(two_d, 5), Error);
}

TEST_CASE("log-log fit recovers a power law") {
  std::vector<double> x, y;
  for (int i = 1; i <= 20; ++i) {
    x.push_back(i * 3.0);
    y.push_back(2.5 * std::pow(i * 3.0, 0.75));
  }
  FitResult f = fit_loglog(x, y);
  CHECK(f.slope == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(std::exp(f.intercept) == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(f.residual < 1e-12);
  CHECK_THROWS_AS(fit_loglog({1, 2}, {1, 0}), Error);
}

TEST_CASE("counting function") {
  std::vector<SpectralLevel> levels{{0, 0.0, 1}, {0, 4.0, 1}, {1, 18.0, 2}, {2, 74.0, 4}};
  CHECK(counting_function(levels, 3.9) == 1);
  CHECK(counting_function(levels, 4.0) == 2);
  CHECK(counting_function(levels, 73.0) == 4);
  CHECK(counting_function(levels, 1e9) == 8);
}

TEST_CASE("heat trace value and tail") {
  std::vector<SpectralLevel> levels{{0, 0.0, 1}, {0, 4.0, 1}, {1, 18.0, 2}};
  CHECK(heat_trace_value(levels, 0.1) == doctest::Approx(1 + std::exp(-0.4) + 2 * std::exp(-1.8)));
  auto s = session("thue-morse", 1.0, "rational");
  auto deep = spectral_levels(s.model(), 14);
  auto shallow = spectral_levels(s.model(), 8);
  // The certified tail dominates what the next generations actually contribute.
  for (double t : {1e-5, 1e-4, 1e-3}) {
    double actual = heat_trace_value(deep, t) - heat_trace_value(shallow, t);
    CHECK(heat_tail(s.model().diagram(), shallow, 8, 4.0, 2.0, t) >= actual);
  }
}

TEST_CASE("Thue-Morse levels") {
  auto s = session("thue-morse", 1.0, "rational");
  auto levels = spectral_levels(s.model(), 6);
  double total = 0;
  for (const auto& l : levels) total += l.multiplicity;
  CHECK(total == 128);
  auto w = weyl_count(s.model(), levels, 6);
  CHECK(w.exponent == 0.5);
  CHECK(w.covered_max > 0);
}

TEST_CASE("norm bound needs s > d + 2") {
  auto s = session("fibonacci", 2.0);
  CHECK_THROWS_AS(norm_bound_check(s.model(), 5), Error);
  auto b = session("fibonacci", 5.0);
  NormBoundReport r = norm_bound_check(b.model(), 12);
  CHECK(r.within);
  CHECK(r.sup <= r.bound);
}
