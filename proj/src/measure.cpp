#include "measure.hpp"

#include <cmath>
#include <limits>

#include "error.hpp"

namespace bratspec {

namespace {

using ScalarMatrix = std::vector<std::vector<Scalar>>;

// Spanning vector of a one-dimensional kernel, by exact row reduction.
std::vector<Scalar> null_vector(ScalarMatrix m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  std::vector<int> pivot_col;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < rows; ++c) {
    std::size_t p = row;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[row]);
    Scalar inv = m[row][c].inverse();
    for (std::size_t j = c; j < cols; ++j) m[row][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == row || m[i][c].is_zero()) continue;
      Scalar f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[row][j];
    }
    pivot_col.push_back(static_cast<int>(c));
    ++row;
  }
  if (pivot_col.size() + 1 != cols) fail(ErrorCode::numeric, "Perron eigenspace is not one-dimensional");
  std::size_t free_col = 0;
  for (std::size_t c = 0, k = 0; c < cols; ++c) {
    if (k < pivot_col.size() && pivot_col[k] == static_cast<int>(c)) {
      ++k;
      continue;
    }
    free_col = c;
  }
  Backend b = m[0][0].backend();
  std::vector<Scalar> x(cols, Scalar::from_integer(b, 0));
  x[free_col] = Scalar::from_integer(b, 1);
  for (std::size_t k = 0; k < pivot_col.size(); ++k) x[pivot_col[k]] = -m[k][free_col];
  return x;
}

Scalar exact_theta(const IntPolynomial& p, const Backend& backend) {
  if (degree(p) == 1) return Scalar::from_rational(backend, Rational(-p[0]));
  if (degree(p) != 2)
    fail(ErrorCode::unsupported, "Perron eigenvalue has algebraic degree " + std::to_string(degree(p)) +
                                     "; use the approx backend");
  // x^2 + b x + c, disc = s^2 * D
  Integer b = p[1], c = p[0];
  Integer disc = b * b - 4 * c;
  Integer s = 1, rest = disc;
  for (Integer f = 2; f * f <= rest; ++f)
    while (rest % (f * f) == 0) {
      rest /= f * f;
      s *= f;
    }
  if (backend.kind == BackendKind::rational)
    fail(ErrorCode::unsupported, "Perron eigenvalue is quadratic irrational; use quadratic:" + rest.get_str() +
                                     " or an approx backend");
  if (rest != backend.discriminant)
    fail(ErrorCode::backend_mismatch, "Perron eigenvalue lies in Q(sqrt(" + rest.get_str() + ")), not Q(sqrt(" +
                                          std::to_string(backend.discriminant) + "))");
  Rational x(Integer(-b), Integer(2)), y(s, Integer(2));
  x.canonicalize();
  y.canonicalize();
  return Scalar(QuadraticNumber(x, y, backend.discriminant));
}

std::vector<Scalar> exact_vector(const IntMatrix& a, const Scalar& theta, bool transpose) {
  const std::size_t n = a.size();
  Backend b = theta.backend();
  ScalarMatrix m(n, std::vector<Scalar>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      m[i][j] = Scalar::from_integer(b, transpose ? a[j][i] : a[i][j]);
      if (i == j) m[i][j] -= theta;
    }
  return null_vector(std::move(m));
}

// Power iteration at the backend precision, started from a double estimate.
std::vector<Scalar> approx_vector(const IntMatrix& a, long prec, bool transpose, Scalar* theta_out) {
  const std::size_t n = a.size();
  std::vector<double> start;
  perron_estimate(a, &start, transpose);
  std::vector<ApproxReal> v;
  for (double x : start) v.emplace_back(x, prec);
  auto entry = [&](std::size_t i, std::size_t j) { return transpose ? a[j][i] : a[i][j]; };
  auto apply = [&](const std::vector<ApproxReal>& x) {
    std::vector<ApproxReal> y(n, ApproxReal(prec));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (entry(i, j)) y[i] = y[i] + ApproxReal(Rational(entry(i, j)), prec) * x[j];
    return y;
  };
  auto normalize = [&](std::vector<ApproxReal>& x) {
    ApproxReal sum(prec);
    for (const auto& e : x) sum = sum + e;
    for (auto& e : x) e = e / sum;
    return sum;
  };
  normalize(v);
  ApproxReal tol = ApproxReal(2.0, prec).pow(8 - prec);
  ApproxReal theta(prec);
  bool converged = false;
  for (int iter = 0; iter < 100000 && !converged; ++iter) {
    std::vector<ApproxReal> w = apply(v);
    theta = normalize(w);
    ApproxReal diff(prec);
    for (std::size_t i = 0; i < n; ++i) {
      ApproxReal d = (w[i] - v[i]).abs();
      if (d > diff) diff = d;
    }
    v = std::move(w);
    converged = diff <= tol;
  }
  if (!converged) fail(ErrorCode::numeric, "power iteration did not converge");
  std::vector<ApproxReal> av = apply(v);
  ApproxReal residual(prec);
  for (std::size_t i = 0; i < n; ++i) {
    ApproxReal d = (av[i] - theta * v[i]).abs();
    if (d > residual) residual = d;
  }
  if (residual > ApproxReal(2.0, prec).pow(16 - prec)) fail(ErrorCode::numeric, "Perron residual check failed");
  if (theta_out) *theta_out = Scalar(theta);
  std::vector<Scalar> out;
  for (auto& x : v) out.emplace_back(std::move(x));
  return out;
}

}  // namespace

std::optional<Scalar> exact_sqrt(const Scalar& x) {
  if (x.sign() < 0) return std::nullopt;
  auto rational_sqrt = [](const Rational& q) -> std::optional<Rational> {
    if (sgn(q) < 0) return std::nullopt;
    Integer n = q.get_num(), d = q.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
    Integer rn = sqrt(n), rd = sqrt(d);
    return Rational(rn, rd);
  };
  if (x.kind() == BackendKind::rational) {
    auto r = rational_sqrt(std::get<Rational>(x.value()));
    if (!r) return std::nullopt;
    return Scalar(*r);
  }
  if (x.kind() != BackendKind::quadratic) return std::nullopt;
  const auto& q = std::get<QuadraticNumber>(x.value());
  const long d = q.discriminant();
  if (sgn(q.b()) == 0) {
    if (auto r = rational_sqrt(q.a())) return Scalar(QuadraticNumber(*r, 0, d));
    if (auto r = rational_sqrt(Rational(q.a() / d))) return Scalar(QuadraticNumber(0, *r, d));
    return std::nullopt;
  }
  // (u + v sqrt D)^2 = a + b sqrt D  =>  u^2 = (a +- sqrt(a^2 - D b^2)) / 2
  auto n = rational_sqrt(q.norm());
  if (!n) return std::nullopt;
  for (int sgn_choice : {1, -1}) {
    Rational u2 = (q.a() + sgn_choice * *n) / 2;
    auto u = rational_sqrt(u2);
    if (!u || sgn(*u) == 0) continue;
    Rational v = q.b() / (2 * *u);
    QuadraticNumber r(*u, v, d);
    if (r.sign() < 0) r = -r;
    if (r * r == q) return Scalar(r);
  }
  return std::nullopt;
}

PerronData perron(const BratteliDiagram& diagram, const Backend& backend) {
  const IntMatrix& a = diagram.matrix();
  if (!is_primitive(a)) fail(ErrorCode::not_primitive, "matrix is not primitive");
  PerronData p;
  p.backend = backend;
  p.symmetry_order = diagram.symmetry_order();
  p.dimension = diagram.dimension();
  p.minimal_polynomial = perron_minimal_polynomial(a);
  if (backend.exact()) {
    p.theta = exact_theta(p.minimal_polynomial, backend);
    p.v_right = exact_vector(a, p.theta, false);
    p.v_left = exact_vector(a, p.theta, true);
  } else {
    p.v_right = approx_vector(a, backend.precision, false, &p.theta);
    Scalar theta_left;
    p.v_left = approx_vector(a, backend.precision, true, &theta_left);
  }
  Scalar sum = Scalar::from_integer(backend, 0);
  for (const auto& x : p.v_right) sum += x;
  sum *= Scalar::from_integer(backend, p.symmetry_order);
  for (auto& x : p.v_right) {
    x /= sum;
    if (x.sign() <= 0) fail(ErrorCode::numeric, "Perron vector is not positive");
  }
  Scalar dot = Scalar::from_integer(backend, 0);
  for (std::size_t i = 0; i < a.size(); ++i) dot += p.v_left[i] * p.v_right[i];
  for (auto& x : p.v_left) x /= dot;

  long prec = backend.exact() ? kDefaultPrecision : backend.precision;
  p.inflation = p.theta.embed(prec).root(static_cast<unsigned long>(p.dimension));
  if (backend.exact()) {
    if (p.dimension == 1)
      p.inflation_exact = p.theta;
    else if (p.dimension == 2)
      p.inflation_exact = exact_sqrt(p.theta);
  } else {
    p.inflation_exact = Scalar(p.inflation);
  }
  return p;
}

PerronData PerronData::to_approx(long precision) const {
  PerronData p = *this;
  p.backend = Backend::approx(precision);
  p.theta = theta.to_approx(precision);
  for (auto& x : p.v_right) x = x.to_approx(precision);
  for (auto& x : p.v_left) x = x.to_approx(precision);
  p.inflation = theta.embed(precision).root(static_cast<unsigned long>(dimension));
  p.inflation_exact = Scalar(p.inflation);
  return p;
}

Scalar mu_at(const PerronData& perron, int vertex, int generation) {
  if (generation <= 0) return Scalar::from_integer(perron.backend, 1);
  return perron.v_right[vertex] * perron.theta.pow(-(generation - 1));
}

Scalar mu(const PerronData& perron, const BratteliDiagram& diagram, const Path& path) {
  if (path.empty()) return Scalar::from_integer(perron.backend, 1);
  return mu_at(perron, end_vertex(diagram, path), path.length());
}

WeightSystem WeightSystem::custom(std::vector<Scalar> base, long precision) {
  for (const auto& w : base)
    if (w.sign() <= 0) fail(ErrorCode::invalid_argument, "base weights must be positive");
  return {WeightMode::custom, std::move(base), precision};
}

Scalar weight_at(const WeightSystem& ws, const PerronData& perron, int vertex, int generation) {
  if (generation <= 0) return Scalar::from_integer(perron.backend, 1);
  const int d = perron.dimension;
  if (ws.mode == WeightMode::measure_root) {
    Scalar m = mu_at(perron, vertex, generation);
    if (d == 1) return m;
    if (!m.is_exact()) return Scalar(m.embed(ws.precision).root(static_cast<unsigned long>(d)));
    if (d == 2)
      if (auto r = exact_sqrt(m)) return *r;
    return Scalar(m.embed(ws.precision).root(static_cast<unsigned long>(d)));
  }
  if (ws.base.size() != perron.v_right.size()) fail(ErrorCode::invalid_argument, "one base weight per letter");
  const Scalar& w1 = ws.base[vertex];
  if (perron.inflation_exact && w1.kind() == perron.inflation_exact->kind())
    return w1 * perron.inflation_exact->pow(-(generation - 1));
  return Scalar(w1.embed(ws.precision) * perron.theta.embed(ws.precision)
                                             .root(static_cast<unsigned long>(d))
                                             .pow(static_cast<long>(-(generation - 1))));
}

Scalar weight(const WeightSystem& ws, const PerronData& perron, const BratteliDiagram& diagram, const Path& path) {
  if (path.empty()) return Scalar::from_integer(perron.backend, 1);
  return weight_at(ws, perron, end_vertex(diagram, path), path.length());
}

double weight_value(const WeightSystem& ws, const PerronData& perron, int vertex, int generation) {
  if (generation <= 0) return 1.0;
  const double log_theta = std::log(perron.theta.to_double());
  const double d = perron.dimension;
  if (ws.mode == WeightMode::measure_root)
    return std::exp((std::log(perron.v_right[vertex].to_double()) - (generation - 1) * log_theta) / d);
  return ws.base[vertex].to_double() * std::exp(-(generation - 1) * log_theta / d);
}

Scalar ultrametric_distance(const WeightSystem& ws, const PerronData& perron, const BratteliDiagram& diagram,
                            const Path& x, const Path& y) {
  Path p = longest_common_prefix(x, y);
  // Equal paths, or one truncation extending the other: not separated.
  if (p.length() == std::min(x.length(), y.length())) return Scalar::from_integer(perron.backend, 0);
  return weight(ws, perron, diagram, p);
}

std::vector<long double> paths_ending_at(const BratteliDiagram& diagram, int generation) {
  const int r = diagram.vertex_count();
  std::vector<long double> c(r, static_cast<long double>(diagram.symmetry_order()));
  for (int n = 1; n < generation; ++n) {
    std::vector<long double> next(r, 0.0L);
    for (int p = 0; p < r; ++p)
      for (int q = 0; q < r; ++q) next[q] += c[p] * diagram.matrix()[p][q];
    c = std::move(next);
  }
  return c;
}

std::vector<ZetaRow> zeta_partial(const WeightSystem& ws, const PerronData& perron, const BratteliDiagram& diagram,
                                  double s, int max_generation) {
  if (max_generation < 1) fail(ErrorCode::invalid_argument, "zeta depth must be >= 1");
  std::vector<ZetaRow> rows;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  long double cumulative = 1.0L;
  long double previous = 1.0L;
  rows.push_back({0, 1.0, 1.0, nan});
  std::vector<long double> count = paths_ending_at(diagram, 1);
  for (int n = 1; n <= max_generation; ++n) {
    if (n > 1) {
      std::vector<long double> next(count.size(), 0.0L);
      for (std::size_t p = 0; p < count.size(); ++p)
        for (std::size_t q = 0; q < count.size(); ++q) next[q] += count[p] * diagram.matrix()[p][q];
      count = std::move(next);
    }
    long double inc = 0.0L;
    for (int v = 0; v < diagram.vertex_count(); ++v)
      inc += count[v] * std::pow(static_cast<long double>(weight_value(ws, perron, v, n)), static_cast<long double>(s));
    if (!std::isfinite(static_cast<double>(inc)) || inc > 1e300L)
      fail(ErrorCode::limit, "zeta increments overflow at generation " + std::to_string(n));
    cumulative += inc;
    rows.push_back({n, static_cast<double>(inc), static_cast<double>(cumulative),
                    n == 1 ? nan : static_cast<double>(inc / previous)});
    previous = inc;
  }
  return rows;
}

}  // namespace bratspec
