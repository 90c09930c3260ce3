#include "companion.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "error.hpp"

namespace bratspec {

namespace {

using RationalMatrix = std::vector<std::vector<Rational>>;

RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b) {
  const std::size_t n = a.size();
  RationalMatrix c(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (sgn(a[i][k]) != 0)
        for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

double norm(const LatticeVector& x) {
  double s = 0;
  for (const auto& q : x) s += q.get_d() * q.get_d();
  return std::sqrt(s);
}

}  // namespace

CompanionData companion_embedding(const IntPolynomial& minimal_polynomial, int d, const PerronData* perron) {
  if (d < 1) fail(ErrorCode::invalid_argument, "dimension must be >= 1");
  if (minimal_polynomial.size() < 2 || minimal_polynomial.back() != 1)
    fail(ErrorCode::invalid_argument, "minimal polynomial must be monic of degree >= 1");
  CompanionData data;
  data.dimension = d;
  data.minimal_polynomial = minimal_polynomial;
  const int stretch = d % 2 == 0 ? d / 2 : d;
  const int deg_p = degree(minimal_polynomial);
  data.q_polynomial.assign(static_cast<std::size_t>(deg_p * stretch + 1), Integer(0));
  for (int i = 0; i <= deg_p; ++i) data.q_polynomial[i * stretch] = minimal_polynomial[i];
  const int r = degree(data.q_polynomial);
  data.degree = r;

  RationalMatrix k(r, std::vector<Rational>(r));
  for (int i = 0; i + 1 < r; ++i) k[i + 1][i] = 1;
  for (int j = 0; j < r; ++j) k[j][r - 1] = Rational(-data.q_polynomial[j]);
  data.c = d % 2 == 0 ? k : multiply(k, k);

  Eigen::MatrixXd cm(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) cm(i, j) = data.c[i][j].get_d();
  Eigen::EigenSolver<Eigen::MatrixXd> es(cm);
  if (es.info() != Eigen::Success) fail(ErrorCode::numeric, "companion eigen-decomposition failed");
  int unstable = 0;
  bool near_one = false;
  data.stable_norm = 0;
  for (int i = 0; i < r; ++i) {
    std::complex<double> z = es.eigenvalues()[i];
    data.eigenvalues.push_back(z);
    double a = std::abs(z);
    if (std::abs(a - 1.0) < 1e-9) near_one = true;
    if (a > 1.0) ++unstable;
    if (a < 1.0) data.stable_norm = std::max(data.stable_norm, a);
  }
  data.hyperbolic = !near_one;
  data.pisot = !near_one && unstable == 1;

  // P with unit columns; ||P^-1|| = 1 / sigma_min(P).
  Eigen::MatrixXcd p = es.eigenvectors();
  for (int j = 0; j < r; ++j) p.col(j).normalize();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(p);
  double smin = svd.singularValues()(r - 1);
  if (!(smin > 0)) fail(ErrorCode::numeric, "companion matrix is not diagonalizable");
  data.p_inverse_norm = 1.0 / smin;

  std::vector<Eigen::VectorXd> span;
  for (int j = 0; j < r; ++j) {
    if (std::abs(data.eigenvalues[j]) <= 1.0) continue;
    span.push_back(p.col(j).real());
    if (std::abs(data.eigenvalues[j].imag()) > 1e-12) span.push_back(p.col(j).imag());
  }
  if (!span.empty()) {
    Eigen::MatrixXd m(r, static_cast<Eigen::Index>(span.size()));
    for (std::size_t j = 0; j < span.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = span[j];
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
    Eigen::Index rank = qr.rank();
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(r, rank);
    for (Eigen::Index j = 0; j < rank; ++j) {
      std::vector<double> col(r);
      for (int i = 0; i < r; ++i) col[i] = q(i, j);
      data.unstable_basis.push_back(std::move(col));
    }
  }

  // Action check: C e_i must be the coordinates of theta^(2/d) x^i.
  if (perron && perron->backend.exact() && d <= 2) {
    const Scalar& theta = perron->theta;
    Scalar mult = d == 1 ? theta * theta : theta;
    bool ok = true;
    for (int i = 0; i < r && ok; ++i) {
      LatticeVector col(r);
      for (int j = 0; j < r; ++j) col[j] = data.c[j][i];
      ok = from_coords(*perron, col) == mult * theta.pow(i);
    }
    if (!ok) fail(ErrorCode::numeric, "companion matrix does not act as multiplication by theta^(2/d)");
    data.action_exact = true;
  } else {
    double theta = perron ? perron->theta.to_double() : 0.0;
    if (!perron) {
      // theta from the largest real eigenvalue of C.
      for (const auto& z : data.eigenvalues)
        if (std::abs(z.imag()) < 1e-12) theta = std::max(theta, std::pow(std::abs(z.real()), d / 2.0));
    }
    const double x = d % 2 == 0 ? std::pow(theta, 2.0 / d) : std::pow(theta, 1.0 / d);
    const double mult = std::pow(theta, 2.0 / d);
    for (int i = 0; i < r; ++i) {
      double lhs = 0;
      for (int j = 0; j < r; ++j) lhs += data.c[j][i].get_d() * std::pow(x, j);
      double rhs = mult * std::pow(x, i);
      if (std::abs(lhs - rhs) > 1e-9 * std::max(1.0, std::abs(rhs)))
        fail(ErrorCode::numeric, "companion matrix does not act as multiplication by theta^(2/d)");
    }
  }
  data.action_verified = true;
  return data;
}

double CompanionData::distance_to_unstable(const LatticeVector& x) const {
  std::vector<double> v(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) v[i] = x[i].get_d();
  for (const auto& q : unstable_basis) {
    double dot = 0;
    for (std::size_t i = 0; i < v.size(); ++i) dot += q[i] * x[i].get_d();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= dot * q[i];
  }
  double s = 0;
  for (double t : v) s += t * t;
  return std::sqrt(s);
}

LatticeVector apply_companion(const CompanionData& data, const LatticeVector& x) {
  LatticeVector y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j)
      if (sgn(data.c[i][j]) != 0) y[i] += data.c[i][j] * x[j];
  return y;
}

LatticeVector lattice_coords(const CompanionData& data, const PerronData& perron, const Scalar& value) {
  if (!value.is_exact() || !perron.theta.is_exact() || data.dimension > 2)
    fail(ErrorCode::unsupported, "value has no exact lattice coordinates (approx value or dimension above 2)");
  if (data.degree == 1) {
    if (value.kind() == BackendKind::rational) return {std::get<Rational>(value.value())};
    const auto& q = std::get<QuadraticNumber>(value.value());
    if (sgn(q.b()) != 0) fail(ErrorCode::unsupported, "irrational value in a rank-one lattice");
    return {q.a()};
  }
  if (data.degree != 2 || value.kind() != BackendKind::quadratic)
    fail(ErrorCode::unsupported, "lattice coordinates need a quadratic field");
  const auto& t = std::get<QuadraticNumber>(perron.theta.value());
  const auto& q = std::get<QuadraticNumber>(value.value());
  Rational c1 = q.b() / t.b();
  Rational c0 = q.a() - c1 * t.a();
  return {c0, c1};
}

Scalar from_coords(const PerronData& perron, const LatticeVector& coords) {
  Scalar sum = Scalar::from_integer(perron.backend, 0);
  Scalar power = Scalar::from_integer(perron.backend, 1);
  for (const auto& c : coords) {
    sum += Scalar::from_rational(perron.backend, c) * power;
    power *= perron.theta;
  }
  return sum;
}

StripReport strip_check(const CompanionData& data, const std::vector<SpectralRecord>& records,
                        const std::vector<LatticeVector>& beta_coords, const std::vector<LatticeVector>& seed_coords,
                        double s) {
  if (std::abs(s - data.dimension) > 1e-12)
    fail(ErrorCode::unsupported, "strip analysis needs s equal to the dimension");
  if (!data.pisot && !data.hyperbolic)
    fail(ErrorCode::unsupported, "non-hyperbolic companion matrix (eigenvalue of modulus 1): bound unavailable");
  StripReport report;
  double largest = 0;
  for (const auto& b : beta_coords) largest = std::max(largest, norm(b));
  for (const auto& l : seed_coords) largest = std::max(largest, norm(l));
  report.m = data.p_inverse_norm * data.p_inverse_norm * largest;
  report.bound = report.m / (1.0 - data.stable_norm);
  for (const auto& r : records) {
    if (r.label != RecordLabel::path) continue;
    if (!r.coords) fail(ErrorCode::invalid_argument, "record without lattice coordinates");
    double dist = data.distance_to_unstable(*r.coords);
    report.rows.push_back({r.path, r.generation, dist});
    report.depth = std::max(report.depth, r.generation);
    if (static_cast<int>(report.max_by_generation.size()) <= r.generation)
      report.max_by_generation.resize(r.generation + 1, 0.0);
    report.max_by_generation[r.generation] = std::max(report.max_by_generation[r.generation], dist);
    report.max_distance = std::max(report.max_distance, dist);
  }
  report.within_bound = report.max_distance <= report.bound;
  report.ratio = report.bound > 0 ? report.max_distance / report.bound : 0.0;
  return report;
}

StripRun run_strip(const LaplacianModel& model, int max_length) {
  if (!model.exact())
    fail(ErrorCode::unsupported, "strip analysis needs an exact backend (rational or quadratic)");
  StripRun run;
  const PerronData& perron = model.perron();
  run.companion = companion_embedding(perron.minimal_polynomial, perron.dimension, &perron);
  run.table = affine_table(model);
  for (const auto& b : run.table.beta) run.beta_coords.push_back(lattice_coords(run.companion, perron, b));
  std::vector<SpectralRecord> seeds = seed_records(model);
  for (auto& r : seeds) {
    r.coords = lattice_coords(run.companion, perron, r.eigenvalue);
    if (r.label == RecordLabel::path) run.seed_coords.push_back(*r.coords);
  }
  RecursionOptions options;
  options.companion = &run.companion;
  for (const auto& b : run.beta_coords) options.beta_coords.push_back(b);
  run.records = recursive_spectrum(model, run.table, seeds, max_length, options);
  for (const auto& r : run.records)
    if (r.coords && from_coords(perron, *r.coords) != r.eigenvalue)
      fail(ErrorCode::numeric, "lattice coordinates do not reconstruct the eigenvalue");
  run.report = strip_check(run.companion, run.records, run.beta_coords, run.seed_coords, model.s());
  return run;
}

}  // namespace bratspec
