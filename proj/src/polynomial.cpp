#include "polynomial.hpp"

#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "error.hpp"

namespace bratspec {

namespace {

void trim(IntPolynomial& f) {
  while (!f.empty() && sgn(f.back()) == 0) f.pop_back();
}

}  // namespace

int degree(const IntPolynomial& f) { return static_cast<int>(f.size()) - 1; }

IntPolynomial characteristic_polynomial(const IntMatrix& a) {
  // Faddeev-LeVerrier over the rationals.
  const std::size_t n = a.size();
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n)), am(n, std::vector<Rational>(n));
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    // M_k = A M_{k-1} + c_{n-k+1} I, with M_0 = 0
    std::vector<std::vector<Rational>> next(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) next[i][j] = am[i][j] + (i == j ? c[n - k + 1] : Rational(0));
    m = std::move(next);
    Rational trace = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Rational s = 0;
        for (std::size_t l = 0; l < n; ++l) s += a[i][l] * m[l][j];
        am[i][j] = s;
        if (i == j) trace += s;
      }
    c[n - k] = -trace / static_cast<long>(k);
  }
  IntPolynomial out(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    if (c[i].get_den() != 1) fail(ErrorCode::numeric, "non-integral characteristic polynomial");
    out[i] = c[i].get_num();
  }
  return out;
}

IntPolynomial multiply(const IntPolynomial& f, const IntPolynomial& g) {
  if (f.empty() || g.empty()) return {};
  IntPolynomial h(f.size() + g.size() - 1);
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) h[i + j] += f[i] * g[j];
  trim(h);
  return h;
}

IntPolynomial remainder_monic(const IntPolynomial& f, const IntPolynomial& g) {
  if (g.empty() || g.back() != 1) fail(ErrorCode::invalid_argument, "divisor must be monic");
  IntPolynomial r = f;
  trim(r);
  const int dg = degree(g);
  while (degree(r) >= dg) {
    Integer lead = r.back();
    int shift = degree(r) - dg;
    for (int i = 0; i <= dg; ++i) r[shift + i] -= lead * g[i];
    trim(r);
  }
  return r;
}

std::string to_string(const IntPolynomial& f, const std::string& var) {
  std::string out;
  for (int i = degree(f); i >= 0; --i) {
    const Integer& c = f[i];
    if (sgn(c) == 0) continue;
    Integer mag = abs(c);
    out += out.empty() ? (sgn(c) < 0 ? "-" : "") : (sgn(c) < 0 ? " - " : " + ");
    if (mag != 1 || i == 0) out += mag.get_str();
    if (i > 0) out += var;
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

double perron_estimate(const IntMatrix& a, std::vector<double>* vector, bool transpose) {
  const auto n = static_cast<Eigen::Index>(a.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = static_cast<double>(transpose ? a[j][i] : a[i][j]);
  Eigen::EigenSolver<Eigen::MatrixXd> es(m);
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < n; ++i)
    if (es.eigenvalues()[i].real() > es.eigenvalues()[best].real()) best = i;
  if (vector) {
    vector->assign(static_cast<std::size_t>(n), 0.0);
    double sum = 0;
    for (Eigen::Index i = 0; i < n; ++i) sum += es.eigenvectors()(i, best).real();
    for (Eigen::Index i = 0; i < n; ++i) (*vector)[i] = std::abs(es.eigenvectors()(i, best).real() / sum);
  }
  return es.eigenvalues()[best].real();
}

IntPolynomial perron_minimal_polynomial(const IntMatrix& a) {
  IntPolynomial chi = characteristic_polynomial(a);
  const auto n = static_cast<Eigen::Index>(a.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = static_cast<double>(a[i][j]);
  Eigen::VectorXcd roots = Eigen::EigenSolver<Eigen::MatrixXd>(m, false).eigenvalues();
  Eigen::Index top = 0;
  for (Eigen::Index i = 1; i < n; ++i)
    if (roots[i].real() > roots[top].real()) top = i;
  std::vector<std::complex<double>> others;
  for (Eigen::Index i = 0; i < n; ++i)
    if (i != top) others.push_back(roots[i]);

  const std::size_t m_other = others.size();
  if (m_other > 20) fail(ErrorCode::unsupported, "matrix too large for minimal polynomial search");
  for (std::size_t k = 0; k <= m_other; ++k) {
    // Subsets of the remaining roots with k elements, in increasing bitmask order.
    for (unsigned long mask = 0; mask < (1ul << m_other); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcountl(mask)) != k) continue;
      std::vector<std::complex<double>> poly{-roots[top], 1.0};
      for (std::size_t i = 0; i < m_other; ++i) {
        if (!(mask >> i & 1)) continue;
        std::vector<std::complex<double>> next(poly.size() + 1);
        for (std::size_t j = 0; j < poly.size(); ++j) {
          next[j + 1] += poly[j];
          next[j] -= poly[j] * others[i];
        }
        poly = std::move(next);
      }
      IntPolynomial candidate;
      bool integral = true;
      for (const auto& c : poly) {
        double r = std::round(c.real());
        if (std::abs(c.imag()) > 1e-6 || std::abs(c.real() - r) > 1e-6 * std::max(1.0, std::abs(r))) {
          integral = false;
          break;
        }
        candidate.push_back(Integer(r));
      }
      if (!integral) continue;
      if (remainder_monic(chi, candidate).empty()) return candidate;
    }
  }
  fail(ErrorCode::numeric, "could not isolate the Perron factor of the characteristic polynomial");
}

}  // namespace bratspec
