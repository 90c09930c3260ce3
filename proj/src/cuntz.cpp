#include "cuntz.hpp"

#include <algorithm>
#include <cmath>

#include "companion.hpp"
#include "error.hpp"

namespace bratspec {

namespace {

IntMatrix composability(const BratteliDiagram& diagram) {
  const auto& edges = diagram.edges();
  IntMatrix a(edges.size(), std::vector<long>(edges.size(), 0));
  for (std::size_t e = 0; e < edges.size(); ++e)
    for (std::size_t f = 0; f < edges.size(); ++f) a[e][f] = edges[e].range == edges[f].source;
  return a;
}

int slot_of(const BratteliDiagram& diagram, const Path& path) { return diagram.root_edges()[path.root].slot; }

}  // namespace

int epsilon_prime(const BratteliDiagram& diagram, int edge, int slot) {
  return diagram.root_edge_index(diagram.edges()[edge].source, slot);
}

std::optional<Path> path_shift_down(const BratteliDiagram& diagram, int edge, const Path& path,
                                    const IntMatrix* adjacency) {
  if (path.length() < 2) fail(ErrorCode::invalid_argument, "U_e acts on paths of length >= 2");
  bool ok = adjacency ? (*adjacency)[edge][path.edges[0]] != 0
                      : diagram.edges()[edge].range == diagram.edges()[path.edges[0]].source;
  if (!ok) return std::nullopt;
  Path out{epsilon_prime(diagram, edge, slot_of(diagram, path)), {edge}};
  out.edges.insert(out.edges.end(), path.edges.begin(), path.edges.end());
  return out;
}

std::optional<Path> path_shift_up(const BratteliDiagram& diagram, int edge, const Path& path) {
  if (path.length() < 3) fail(ErrorCode::invalid_argument, "U_e* acts on paths of length >= 3");
  if (path.edges[0] != edge) return std::nullopt;
  int second = path.edges[1];
  Path out{diagram.root_edge_index(diagram.edges()[second].source, slot_of(diagram, path)), {}};
  out.edges.assign(path.edges.begin() + 1, path.edges.end());
  return out;
}

std::optional<Path> prepend_edge(const BratteliDiagram& diagram, int edge, const Path& path) {
  if (path.empty()) fail(ErrorCode::invalid_argument, "cannot prepend to the empty path");
  if (diagram.edges()[edge].range != diagram.root_edges()[path.root].vertex) return std::nullopt;
  Path out{epsilon_prime(diagram, edge, slot_of(diagram, path)), {edge}};
  out.edges.insert(out.edges.end(), path.edges.begin(), path.edges.end());
  return out;
}

CkReport ck_relations_check(const BratteliDiagram& diagram, int depth, const IntMatrix* adjacency) {
  if (depth < 3) fail(ErrorCode::invalid_argument, "ck-check depth must be >= 3");
  IntMatrix actual = composability(diagram);
  const IntMatrix& a = adjacency ? *adjacency : actual;
  const int m = static_cast<int>(diagram.edges().size());
  if (static_cast<int>(a.size()) != m) fail(ErrorCode::invalid_argument, "adjacency has the wrong size");
  CkReport report;
  report.depth = depth;
  auto witness = [&](const std::string& what, const Path& p) {
    report.passed = false;
    report.witness = what + " at path " + path_id(diagram, p);
    return report;
  };
  for (int n = 3; n <= depth && report.passed; ++n) {
    PathTable table = enumerate_paths(diagram, n);
    for (const Path& gamma : table.paths) {
      ++report.paths_checked;
      int range_total = 0;
      for (int f = 0; f < m; ++f) {
        auto up = path_shift_up(diagram, f, gamma);
        if (!up) continue;
        auto back = path_shift_down(diagram, f, *up, &a);
        if (!back) continue;
        if (*back != gamma) return witness("U_f U_f* is not a projection", gamma);
        ++range_total;
      }
      if (range_total > 1) return witness("range projections overlap", gamma);
      for (int e = 0; e < m; ++e) {
        auto down = path_shift_down(diagram, e, gamma, &a);
        int left = 0;
        if (down) {
          if (!is_valid(diagram, *down)) return witness("U_" + diagram.edge_label(e) + " leaves the path space", gamma);
          auto up = path_shift_up(diagram, e, *down);
          if (!up || *up != gamma) return witness("U_e* U_e is not a projection", gamma);
          left = 1;
        }
        int right = 0;
        for (int f = 0; f < m; ++f) {
          if (!a[e][f]) continue;
          auto up = path_shift_up(diagram, f, gamma);
          if (!up) continue;
          auto back = path_shift_down(diagram, f, *up, &a);
          if (back && *back == gamma) right += static_cast<int>(a[e][f]);
        }
        if (left != right)
          return witness("U_e* U_e != sum_f a_ef U_f U_f* for e = " + diagram.edge_label(e), gamma);
      }
    }
  }
  return report;
}

bool close_relative(const Scalar& x, const Scalar& y, double tolerance) {
  if (x.is_exact() && y.is_exact()) return x == y;
  long prec = 64;
  if (!x.is_exact())
    prec = std::get<ApproxReal>(x.value()).precision();
  else if (!y.is_exact())
    prec = std::get<ApproxReal>(y.value()).precision();
  ApproxReal a = x.embed(prec), b = y.embed(prec);
  ApproxReal diff = (a - b).abs();
  ApproxReal scale = a.abs() > b.abs() ? a.abs() : b.abs();
  if (scale.is_zero()) return diff.is_zero();
  return (diff / scale).to_double() <= tolerance;
}

namespace {

Scalar spectral_ratio(const LaplacianModel& model) {
  const PerronData& p = model.perron();
  const double s = model.s();
  const int d = p.dimension;
  const double q = (d + 2.0 - s) / d;
  double r = std::round(q);
  if (std::abs(q - r) < 1e-12) return p.theta.pow(static_cast<long>(r));
  double t = std::round(2.0 - s);
  // Lambda = theta * inflation^(2-s) when the inflation factor is in the field.
  if (std::abs((2.0 - s) - t) < 1e-12 && p.inflation_exact && p.inflation_exact->kind() == p.theta.kind())
    return p.theta * p.inflation_exact->pow(static_cast<long>(t));
  if (model.exact()) fail(ErrorCode::backend_mismatch, "spectral ratio is not in the exact field");
  long prec = model.backend().precision;
  return Scalar(p.theta.embed(prec).pow(ApproxReal(q, prec)));
}

}  // namespace

AffineMapTable affine_table(const LaplacianModel& model) {
  const auto& diagram = model.diagram();
  model.prepare(6);
  AffineMapTable table;
  table.lambda = spectral_ratio(model);
  const bool root_splits = model.splits(0, 0);
  auto root_term = [&](int vertex) {
    if (!root_splits) return model.zero();
    return (model.mu(vertex, 1) - model.mu(0, 0)) / model.g_at(0, 0);
  };
  for (const EdgeModel& e : diagram.edges()) {
    Scalar beta = -(table.lambda * root_term(e.range)) + root_term(e.source);
    if (model.splits(e.source, 1))
      beta += (model.mu(e.range, 2) - model.mu(e.source, 1)) / model.g_at(e.source, 1);
    table.beta.push_back(std::move(beta));
  }

  // Self-calibration against the direct formula.
  const long prec = model.exact() ? 0 : model.backend().precision;
  const double tol = model.exact() ? 0.0 : std::ldexp(1.0, static_cast<int>(20 - prec));
  for (int n = 1; n <= 3; ++n) {
    PathTable paths = enumerate_paths(diagram, n);
    for (const Path& gamma : paths.paths) {
      int v = end_vertex(diagram, gamma);
      if (!model.splits(v, n)) continue;
      Scalar lambda = model.eigenvalue(gamma);
      for (int e = 0; e < static_cast<int>(diagram.edges().size()); ++e) {
        auto shifted = prepend_edge(diagram, e, gamma);
        if (!shifted) continue;
        Scalar direct = model.eigenvalue(*shifted);
        Scalar via = table.apply(e, lambda);
        ++table.calibration_checks;
        if (!close_relative(direct, via, tol))
          fail(ErrorCode::calibration, "affine map for edge " + diagram.edge_label(e) + " disagrees at path " +
                                           path_id(diagram, gamma) + ": " + via.exact_string() + " vs " +
                                           direct.exact_string());
      }
    }
  }
  return table;
}

std::vector<SpectralRecord> seed_records(const LaplacianModel& model) {
  return full_spectrum(model, 1);
}

std::vector<SpectralRecord> recursive_spectrum(const LaplacianModel& model, const AffineMapTable& table,
                                               const std::vector<SpectralRecord>& seeds, int max_length,
                                               const RecursionOptions& options) {
  const auto& diagram = model.diagram();
  std::vector<SpectralRecord> out;
  std::vector<SpectralRecord> frontier;
  for (const auto& r : seeds) {
    out.push_back(r);
    if (r.label == RecordLabel::path && r.generation == 1) frontier.push_back(r);
  }
  if (max_length <= 1) return out;
  Integer total = 0;
  for (int n = 1; n <= max_length; ++n) total += predicted_path_count(diagram, n);
  if (total > Integer(static_cast<unsigned long>(options.cap)))
    fail(ErrorCode::limit, "recursion through length " + std::to_string(max_length) + " exceeds the path cap");
  const CompanionData* comp = options.companion;
  if (comp) {
    if (options.beta_coords.size() != diagram.edges().size())
      fail(ErrorCode::invalid_argument, "coordinates needed for every affine map");
    for (const auto& r : frontier)
      if (!r.coords) fail(ErrorCode::invalid_argument, "seed without lattice coordinates");
  }
  const int m = static_cast<int>(diagram.edges().size());
  for (int n = 2; n <= max_length; ++n) {
    std::vector<SpectralRecord> next;
    for (const auto& r : frontier)
      for (int e = 0; e < m; ++e) {
        auto p = prepend_edge(diagram, e, r.path);
        if (!p) continue;
        SpectralRecord child{RecordLabel::path, std::move(*p), n, table.apply(e, r.eigenvalue), r.multiplicity,
                             std::nullopt};
        if (comp) {
          std::vector<Rational> c = apply_companion(*comp, *r.coords);
          for (std::size_t i = 0; i < c.size(); ++i) c[i] += options.beta_coords[e][i];
          child.coords = std::move(c);
        }
        next.push_back(std::move(child));
      }
    std::sort(next.begin(), next.end(), [](const SpectralRecord& a, const SpectralRecord& b) { return a.path < b.path; });
    for (const auto& r : next) out.push_back(r);
    frontier = std::move(next);
  }
  return out;
}

}  // namespace bratspec
