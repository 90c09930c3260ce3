#include "dense.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "error.hpp"

namespace bratspec {

namespace {

int common_length(const Path& x, const Path& y) {
  if (x.root != y.root) return 0;
  int k = 1;
  for (std::size_t i = 0; i < x.edges.size() && i < y.edges.size() && x.edges[i] == y.edges[i]; ++i) ++k;
  return k;
}

std::vector<double> symmetric_spectrum(const Eigen::MatrixXd& m, const std::vector<double>& mu) {
  const Eigen::Index n = m.rows();
  Eigen::MatrixXd s(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) s(i, j) = std::sqrt(mu[i] / mu[j]) * m(i, j);
  Eigen::MatrixXd sym = 0.5 * (s + s.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) fail(ErrorCode::numeric, "symmetric eigensolver failed");
  std::vector<double> out(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  return out;
}

std::string describe(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

}  // namespace

DenseOperator dense_restriction(const LaplacianModel& model, int n, std::size_t cap, bool build_exact) {
  if (n < 1) fail(ErrorCode::invalid_argument, "dense generation must be >= 1");
  const auto& diagram = model.diagram();
  Integer count = predicted_path_count(diagram, n);
  if (count > Integer(static_cast<unsigned long>(cap)))
    fail(ErrorCode::limit, "dense matrix on generation " + std::to_string(n) + " would have dimension " +
                               count.get_str() + ", above the cap of " + std::to_string(cap));
  model.prepare(n);
  DenseOperator op;
  op.generation = n;
  op.s = model.s();
  op.basis = enumerate_paths(diagram, n, cap);
  const std::size_t size = op.size();
  const bool exact = build_exact && model.exact() && size <= kExactDenseCap;
  op.numeric.assign(size * size, 0.0);
  if (exact) op.exact.assign(size * size, model.zero());

  std::vector<Scalar> coef(n);
  std::vector<double> coef_d(n);
  for (std::size_t j = 0; j < size; ++j) {
    const Path& gamma = op.basis.paths[j];
    const int end = vertex_at(diagram, gamma, n);
    Scalar diag = model.zero();
    double diag_d = 0;
    for (int k = 0; k < n; ++k) {
      int v = vertex_at(diagram, gamma, k);
      if (!model.splits(v, k)) {
        coef[k] = model.zero();
        coef_d[k] = 0;
        continue;
      }
      int w = vertex_at(diagram, gamma, k + 1);
      double g = model.g_value_double(v, k);
      diag_d -= (model.mu_value(v, k) - model.mu_value(w, k + 1)) / g;
      coef_d[k] = model.mu_value(end, n) / g;
      if (exact) {
        const Scalar& ge = model.g_at(v, k);
        diag -= (model.mu(v, k) - model.mu(w, k + 1)) / ge;
        coef[k] = model.mu(end, n) / ge;
      }
    }
    for (std::size_t i = 0; i < size; ++i) {
      if (i == j) {
        op.numeric[i * size + j] = diag_d;
        if (exact) op.exact[i * size + j] = diag;
        continue;
      }
      int k = common_length(op.basis.paths[i], gamma);
      op.numeric[i * size + j] = coef_d[k];
      if (exact) op.exact[i * size + j] = coef[k];
    }
  }
  return op;
}

std::vector<double> dense_eigenvalues(const DenseOperator& op, const LaplacianModel& model, bool use_symmetry) {
  const auto& diagram = model.diagram();
  const std::size_t size = op.size();
  const int g = diagram.symmetry_order();
  std::vector<double> mu(size);
  for (std::size_t i = 0; i < size; ++i)
    mu[i] = model.mu_value(end_vertex(diagram, op.basis.paths[i]), op.generation);

  if (!use_symmetry || g == 1) {
    Eigen::MatrixXd m(size, size);
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = 0; j < size; ++j) m(i, j) = op.at(i, j);
    auto out = symmetric_spectrum(m, mu);
    std::sort(out.begin(), out.end());
    return out;
  }

  // Paths of one root edge are contiguous; slots of a vertex are adjacent blocks.
  std::vector<std::size_t> block_start(diagram.root_edges().size() + 1, size);
  for (std::size_t i = size; i-- > 0;) block_start[op.basis.paths[i].root] = i;
  std::vector<std::size_t> base;  // slot-0 representatives
  std::vector<std::size_t> block_size;
  for (std::size_t i = 0; i < size; ++i) {
    const RootEdge& r = diagram.root_edges()[op.basis.paths[i].root];
    if (r.slot == 0) {
      base.push_back(i);
      int next = diagram.root_edge_index(r.vertex, 1);
      block_size.push_back(block_start[next] - block_start[op.basis.paths[i].root]);
    }
  }
  const std::size_t w = base.size();
  Eigen::MatrixXd sym(w, w), std_sector(w, w);
  std::vector<double> mu_w(w);
  for (std::size_t a = 0; a < w; ++a) {
    mu_w[a] = mu[base[a]];
    for (std::size_t b = 0; b < w; ++b) {
      double total = 0;
      for (int t = 0; t < g; ++t) total += op.at(base[a], base[b] + t * block_size[b]);
      sym(a, b) = total;
      std_sector(a, b) = op.at(base[a], base[b]) - op.at(base[a], base[b] + block_size[b]);
    }
  }
  std::vector<double> out = symmetric_spectrum(sym, mu_w);
  std::vector<double> rest = symmetric_spectrum(std_sector, mu_w);
  for (int copy = 1; copy < g; ++copy) out.insert(out.end(), rest.begin(), rest.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<EigenGroup> group_eigenvalues(const std::vector<double>& sorted, double gap) {
  std::vector<EigenGroup> groups;
  for (double x : sorted) {
    if (!groups.empty() && std::abs(x - groups.back().value) <= gap) {
      ++groups.back().multiplicity;
      continue;
    }
    groups.push_back({x, 1});
  }
  return groups;
}

std::vector<Scalar> expand_eigenvector(const LaplacianModel& model, const EigenVectorSpec& spec, const PathTable& table) {
  const int len = spec.path.length() + 1;
  if (table.generation < len) fail(ErrorCode::invalid_argument, "eigenvector lives below the table generation");
  Path anchor = extend(spec.path, spec.anchor);
  Path other = extend(spec.path, spec.other);
  std::vector<Scalar> x(table.paths.size(), model.zero());
  for (std::size_t i = 0; i < table.paths.size(); ++i) {
    Path p = table.paths[i].prefix(len);
    if (p == anchor)
      x[i] = spec.anchor_coefficient;
    else if (p == other)
      x[i] = spec.other_coefficient;
  }
  return x;
}

VerifyReport verify_spectrum(const LaplacianModel& model, int n, const VerifyOptions& options) {
  if (n < 1) fail(ErrorCode::invalid_argument, "verify depth must be >= 1");
  VerifyReport report;
  report.generation = n;
  report.s = model.s();
  DenseOperator op = dense_restriction(model, n, options.cap, model.exact() && predicted_path_count(model.diagram(), n) <=
                                                                                   Integer(static_cast<unsigned long>(options.exact_cap)));
  report.dimension = op.size();

  std::vector<SpectralRecord> records;
  if (n >= 2) {
    records = full_spectrum(model, n - 1);
  } else {
    records.push_back({RecordLabel::zero, Path{}, 0, model.zero(), 1, std::nullopt});
    if (model.splits(0, 0))
      records.push_back(
          {RecordLabel::root, Path{}, 0, model.root_eigenvalue(), model.root_multiplicity(), std::nullopt});
  }
  report.total_multiplicity = total_multiplicity(records);
  if (report.total_multiplicity != static_cast<long>(op.size()))
    report.failures.push_back("count identity: total multiplicity " + std::to_string(report.total_multiplicity) +
                              " but dimension " + std::to_string(op.size()));

  std::vector<double> expected;
  for (const auto& r : records)
    for (long k = 0; k < r.multiplicity; ++k) expected.push_back(r.eigenvalue.to_double());
  std::sort(expected.begin(), expected.end());
  std::vector<double> found = dense_eigenvalues(op, model, options.use_symmetry);
  report.expected = group_eigenvalues(expected, options.grouping_gap);
  report.found = group_eigenvalues(found, options.grouping_gap);

  bool numeric_ok = expected.size() == found.size();
  for (std::size_t i = 0; i < std::min(expected.size(), found.size()); ++i)
    report.max_deviation = std::max(report.max_deviation, std::abs(expected[i] - found[i]));
  if (report.max_deviation > options.tolerance) {
    numeric_ok = false;
    report.failures.push_back("max deviation " + describe(report.max_deviation) + " above tolerance " +
                              describe(options.tolerance));
  }
  if (report.expected.size() != report.found.size()) {
    numeric_ok = false;
    report.failures.push_back("expected " + std::to_string(report.expected.size()) + " distinct eigenvalues, found " +
                              std::to_string(report.found.size()));
  } else {
    for (std::size_t i = 0; i < report.expected.size(); ++i) {
      const auto& e = report.expected[i];
      const auto& f = report.found[i];
      if (e.multiplicity != f.multiplicity || std::abs(e.value - f.value) > options.tolerance) {
        numeric_ok = false;
        report.failures.push_back("eigenvalue " + describe(e.value) + " x" + std::to_string(e.multiplicity) +
                                  " vs dense " + describe(f.value) + " x" + std::to_string(f.multiplicity));
      }
    }
  }
  report.numeric_passed = numeric_ok;

  if (op.has_exact()) {
    report.exact_checked = true;
    bool ok = report.total_multiplicity == static_cast<long>(op.size());
    const std::size_t size = op.size();
    std::vector<Scalar> mu(size);
    for (std::size_t i = 0; i < size; ++i) mu[i] = model.mu(op.basis.paths[i]);
    for (std::size_t i = 0; i < size && ok; ++i) {
      Scalar row = model.zero();
      for (std::size_t j = 0; j < size; ++j) {
        row += op.exact[i * size + j];
        if (j > i && mu[i] * op.exact[i * size + j] != mu[j] * op.exact[j * size + i]) {
          ok = false;
          report.failures.push_back("mu-weighted matrix is not symmetric at " + std::to_string(i) + "," +
                                    std::to_string(j));
          break;
        }
      }
      if (ok && !row.is_zero()) {
        ok = false;
        report.failures.push_back("constants are not in the kernel (row " + std::to_string(i) + ")");
      }
    }
    for (const auto& r : records) {
      if (!ok) break;
      if (r.label == RecordLabel::zero) continue;
      for (const auto& spec : eigenbasis(model, r.path)) {
        std::vector<Scalar> x = expand_eigenvector(model, spec, op.basis);
        std::vector<std::size_t> support;
        Scalar weighted = model.zero();
        for (std::size_t j = 0; j < size; ++j)
          if (!x[j].is_zero()) {
            support.push_back(j);
            weighted += mu[j] * x[j];
          }
        if (!weighted.is_zero()) {
          ok = false;
          report.failures.push_back("eigenvector of " + path_id(model.diagram(), r.path) + " is not mu-orthogonal to constants");
          break;
        }
        for (std::size_t i = 0; i < size && ok; ++i) {
          Scalar y = model.zero();
          for (std::size_t j : support) y += op.exact[i * size + j] * x[j];
          if (y != r.eigenvalue * x[i]) {
            ok = false;
            report.failures.push_back("exact eigen-equation fails for " + path_id(model.diagram(), r.path));
          }
        }
        if (!ok) break;
      }
    }
    report.exact_passed = ok;
  }
  report.passed = report.numeric_passed && (!report.exact_checked || report.exact_passed) && report.failures.empty();
  return report;
}

}  // namespace bratspec
