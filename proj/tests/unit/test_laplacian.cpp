#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "dense.hpp"
#include "error.hpp"
#include "support.hpp"

using namespace bratspec;
using bratspec::testing::phi;
using bratspec::testing::session;

TEST_CASE("Thue-Morse closed form") {
  auto s = session("thue-morse", 1.0, "rational");
  auto records = full_spectrum(s.model(), 12);
  // lambda_k = -(2/3)(7*4^k - 1) for generation k, 2^k paths each of multiplicity one.
  std::vector<long> per_generation(13, 0);
  for (const auto& r : records) {
    if (r.label == RecordLabel::zero) {
      CHECK(r.eigenvalue.is_zero());
      continue;
    }
    Rational expected = Rational(-2, 3) * (Rational(7) * Rational(mpz_class(1) << (2 * r.generation)) - 1);
    CHECK(r.eigenvalue == Scalar(expected));
    CHECK(r.multiplicity == 1);
    per_generation[r.generation] += r.multiplicity;
  }
  for (int k = 0; k <= 12; ++k) CHECK(per_generation[k] == (1L << k));
}

TEST_CASE("eigenvectors satisfy the dense operator exactly") {
  for (auto [name, n] : {std::pair{"fibonacci", 5}, std::pair{"thue-morse", 4}, std::pair{"dyadic-odometer", 4}}) {
    auto s = session(name);
    const auto& m = s.model();
    DenseOperator op = dense_restriction(m, n);
    REQUIRE(op.has_exact());
    for (const auto& rec : full_spectrum(m, n - 1)) {
      if (rec.label == RecordLabel::zero) continue;
      for (const auto& spec : eigenbasis(m, rec.path)) {
        std::vector<Scalar> v = expand_eigenvector(m, spec, op.basis);
        for (std::size_t i = 0; i < op.size(); ++i) {
          Scalar lhs = m.zero();
          for (std::size_t j = 0; j < op.size(); ++j) lhs += op.exact[i * op.size() + j] * v[j];
          CHECK(lhs == rec.eigenvalue * v[i]);
        }
      }
    }
  }
}

TEST_CASE("symmetry reduction matches the full solve") {
  for (auto [name, n] : {std::pair{"penrose", 3}, std::pair{"ammann-a2", 4}, std::pair{"fibonacci", 7}}) {
    auto s = session(name);
    DenseOperator op = dense_restriction(s.model(), n, kDefaultDenseCap, false);
    auto reduced = dense_eigenvalues(op, s.model(), true);
    auto full = dense_eigenvalues(op, s.model(), false);
    REQUIRE(reduced.size() == full.size());
    double scale = std::max(std::abs(full.front()), 1.0);
    for (std::size_t i = 0; i < full.size(); ++i) CHECK(std::abs(reduced[i] - full[i]) <= 1e-9 * scale);
  }
}

TEST_CASE("total multiplicity counts paths") {
  for (const auto& name : preset_names()) {
    auto s = session(name);
    for (int n = 1; n <= 6; ++n) {
      long total = total_multiplicity(full_spectrum(s.model(), n - 1));
      CHECK(Integer(total) == predicted_path_count(s.model().diagram(), n));
    }
  }
}

TEST_CASE("threads do not change the records") {
  auto s = session("penrose");
  SpectrumOptions one, four;
  four.threads = 4;
  auto a = full_spectrum(s.model(), 6, one);
  auto b = full_spectrum(s.model(), 6, four);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].path == b[i].path);
    CHECK(a[i].eigenvalue.exact_string() == b[i].eigenvalue.exact_string());
    CHECK(a[i].multiplicity == b[i].multiplicity);
  }
}

TEST_CASE("Penrose family root eigenvalue") {
  for (auto [name, g] : {std::pair{"penrose", 20}, std::pair{"ammann-a2", 4}}) {
    auto s = session(name, std::nullopt, "quadratic:5");
    CHECK(s.model().root_eigenvalue() == penrose_root_formula(g, Backend::quadratic(5)));
    CHECK(s.model().root_multiplicity() == 2 * g - 1);
    auto approx = session(name);
    CHECK(approx.model().root_eigenvalue().to_double() ==
          doctest::Approx(penrose_root_formula(g, Backend::quadratic(5)).to_double()).epsilon(1e-14));
  }
}

TEST_CASE("exact backend falls back when diam^(2-s) leaves the field") {
  auto s = session("fibonacci", 1.5, "quadratic:5");
  CHECK(s.model().fell_back());
  CHECK(s.model().backend().kind == BackendKind::approx);
  auto t = session("fibonacci", 2.0, "quadratic:5");
  CHECK_FALSE(t.model().fell_back());
}

TEST_CASE("verify on Fibonacci") {
  auto s = session("fibonacci", 1.0, "quadratic:5");
  VerifyReport r = verify_spectrum(s.model(), 5);
  CHECK(r.passed);
  CHECK(r.exact_checked);
  CHECK(r.exact_passed);
  CHECK(r.total_multiplicity == static_cast<long>(r.dimension));
  CHECK_THROWS_AS(verify_spectrum(s.model(), 0), Error);
}
