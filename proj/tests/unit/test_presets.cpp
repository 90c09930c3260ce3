#include <doctest.h>

#include <cmath>

#include "dense.hpp"
#include "error.hpp"
#include "support.hpp"

using namespace bratspec;
using bratspec::testing::session;

TEST_CASE("presets load with their matrices") {
  CHECK(load_preset("fibonacci").matrix == IntMatrix{{1, 1}, {1, 0}});
  CHECK(load_preset("fibonacci-conjugate").matrix == IntMatrix{{2, 1}, {1, 1}});
  CHECK(load_preset("thue-morse").matrix == IntMatrix{{1, 1}, {1, 1}});
  CHECK(load_preset("dyadic-odometer").matrix == IntMatrix{{2}});
  Preset p = load_preset("penrose");
  CHECK(p.matrix == IntMatrix{{2, 1}, {1, 1}});
  CHECK(p.dimension == 2);
  CHECK(p.symmetry_order == 20);
  CHECK(load_preset("ammann-a2").symmetry_order == 4);
  CHECK_FALSE(load_preset("fibonacci").transversal_faithful);
  CHECK(load_preset("fibonacci-conjugate").transversal_faithful);
  CHECK_THROWS_AS(load_preset("hat"), Error);
  for (const auto& name : preset_names()) CHECK_NOTHROW(load_preset(name).diagram());
}

TEST_CASE("every preset verifies at generation 4") {
  for (const auto& name : preset_names()) {
    auto s = session(name);
    CHECK_MESSAGE(verify_spectrum(s.model(), 4).passed, name);
  }
}

TEST_CASE("Penrose and Ammann differ only through g") {
  auto p = session("penrose", std::nullopt, "quadratic:5");
  auto a = session("ammann-a2", std::nullopt, "quadratic:5");
  // Below the root, mu scales by 1/g and G by 1/g^2; differences of eigenvalues that share
  // the root term therefore scale by g.
  Path x{0, {0}}, y{0, {2}}, z{0, {0, 3}};
  Scalar five = Scalar::from_integer(Backend::quadratic(5), 5);
  CHECK(p.model().eigenvalue(x) - p.model().eigenvalue(y) == five * (a.model().eigenvalue(x) - a.model().eigenvalue(y)));
  CHECK(p.model().eigenvalue(z) - p.model().eigenvalue(y) == five * (a.model().eigenvalue(z) - a.model().eigenvalue(y)));
  CHECK_FALSE(p.model().eigenvalue(x) == five * a.model().eigenvalue(x));
}

TEST_CASE("matrix files") {
  Preset p = parse_matrix_json(R"({"letters": ["a", "b"], "matrix": [[1, 1], [1, 0]],
                                   "images": {"a": ["a", "b"], "b": ["a"]}, "backend": "quadratic:5"})");
  CHECK(p.matrix == IntMatrix{{1, 1}, {1, 0}});
  REQUIRE(p.rule);
  CHECK(p.rule->images[0] == std::vector<int>{0, 1});
  CHECK(p.recommended_backend() == Backend::quadratic(5));
  CHECK_THROWS_AS(parse_matrix_json(R"({"matrix": [[1, 1], [1]]})"), Error);
  CHECK_THROWS_AS(parse_matrix_json(R"({"matrix": [[1, 1], [1, 0]], "images": {"a": ["a"], "b": ["a"]}})"), Error);
  CHECK_THROWS_AS(parse_matrix_json("{"), Error);
  CHECK_THROWS_AS(parse_matrix_json(R"({"letters": ["a"], "matrix": [[1, 1], [1, 0]]})"), Error);
  CHECK_THROWS_AS(load_matrix_file("/nonexistent/file.json"), Error);
}

TEST_CASE("Fibonacci quoted constants carry a sign typo") {
  auto s = session("fibonacci", 1.0, "quadratic:5");
  auto checks = check_discrepancies(s.preset(), s.model());
  REQUIRE(checks.size() == 2);
  Scalar p2 = testing::phi() * testing::phi();
  auto q = [](long n) { return Scalar::from_integer(Backend::quadratic(5), n); };
  CHECK(checks[0].quantity == "root");
  CHECK(checks[0].computed_magnitude == q(2) * p2 - q(1));
  CHECK(checks[1].quantity == "a");
  CHECK(checks[1].computed_magnitude == q(6) * p2 - q(3));
  for (const auto& c : checks) {
    CHECK_FALSE(c.matches_printed);
    CHECK(c.matches_flipped);
  }
  auto notes = discrepancy_notes(checks);
  REQUIRE(notes.size() == 2);
  CHECK(notes[0].find("sign") != std::string::npos);
  auto other = session("fibonacci", 2.0, "quadratic:5");
  CHECK(check_discrepancies(other.preset(), other.model()).empty());
}

TEST_CASE("Thue-Morse counting bounds") {
  auto [lo, hi] = thue_morse_weyl_bounds(4.0);
  CHECK(lo == doctest::Approx(0.5 * std::sqrt(34.0 / 7)));
  CHECK(hi == doctest::Approx(std::sqrt(4.0)));
}
