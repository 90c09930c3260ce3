#include "laplacian.hpp"

#include <cmath>
#include <thread>

#include "error.hpp"

namespace bratspec {

namespace {

bool integral(double x, long* out) {
  double r = std::round(x);
  if (std::abs(x - r) > 1e-12) return false;
  *out = static_cast<long>(r);
  return true;
}

}  // namespace

LaplacianModel::LaplacianModel(const BratteliDiagram& diagram, const PerronData& perron, WeightSystem weights,
                               double s, long fallback_precision)
    : diagram_(diagram), perron_(perron), weights_(std::move(weights)), s_(s) {
  if (!std::isfinite(s)) fail(ErrorCode::invalid_argument, "s must be finite");
  const int d = perron.dimension;
  bool exact_ok = false;
  if (weights_.mode == WeightMode::measure_root) {
    exponent_integral_ = integral((2.0 - s) / d, &exponent_);
    exact_ok = exponent_integral_;
  } else {
    exponent_integral_ = integral(2.0 - s, &exponent_);
    bool weights_exact = perron.inflation_exact.has_value() && perron.inflation_exact->is_exact();
    for (const auto& w : weights_.base) weights_exact = weights_exact && w.kind() == perron.backend.kind;
    exact_ok = exponent_integral_ && (weights_exact || exponent_ == 0);
  }
  if (perron.backend.exact() && !exact_ok) {
    fell_back_ = true;
    perron_ = perron.to_approx(fallback_precision);
    for (auto& w : weights_.base) w = w.to_approx(fallback_precision);
  }
  rows_.resize(kMaxGeneration + 2);
}

Scalar LaplacianModel::diam_factor(int vertex, int generation) const {
  if (generation == 0 || (exponent_integral_ && exponent_ == 0)) return Scalar::from_integer(backend(), 1);
  const int d = perron_.dimension;
  if (weights_.mode == WeightMode::measure_root) {
    const Scalar& m = rows_[generation].mu[vertex];
    if (exponent_integral_) return m.pow(exponent_);
    long prec = backend().precision;
    return Scalar(m.embed(prec).pow(ApproxReal((2.0 - s_) / d, prec)));
  }
  Scalar w = weight_at(weights_, perron_, vertex, generation);
  if (exponent_integral_ && w.kind() == backend().kind) return w.pow(exponent_);
  long prec = backend().exact() ? weights_.precision : backend().precision;
  Scalar approx(w.embed(prec).pow(ApproxReal(2.0 - s_, prec)));
  if (backend().exact()) fail(ErrorCode::backend_mismatch, "weight left the exact field");
  return approx;
}

void LaplacianModel::fill_row(int n) const {
  const int r = diagram_.vertex_count();
  Row& row = rows_[n];
  if (n == 0) {
    row.mu = {Scalar::from_integer(backend(), 1)};
  } else {
    row.mu.clear();
    for (int v = 0; v < r; ++v) row.mu.push_back(mu_at(perron_, v, n));
  }
  for (const auto& m : row.mu) row.mu_d.push_back(m.to_double());
}

void LaplacianModel::prepare(int generation) const {
  if (generation > kMaxGeneration) fail(ErrorCode::limit, "generation above the supported maximum");
  if (ready_.load(std::memory_order_acquire) >= generation) return;
  std::lock_guard<std::mutex> lock(*mutex_);
  int done = ready_.load(std::memory_order_relaxed);
  if (done >= generation) return;
  const int r = diagram_.vertex_count();
  if (done < 0) fill_row(0);
  // mu rows are needed one generation ahead of G rows.
  for (int n = std::max(done, 0) + 1; n <= generation + 1; ++n)
    if (rows_[n].mu.empty()) fill_row(n);
  for (int n = done + 1; n <= generation; ++n) {
    Row& row = rows_[n];
    const Row& next = rows_[n + 1];
    auto compute = [&](const std::vector<int>& children_vertices, const Scalar& factor) {
      Scalar s1 = zero(), s2 = zero();
      for (int c : children_vertices) {
        s1 += next.mu[c];
        s2 += next.mu[c] * next.mu[c];
      }
      Scalar half = Scalar::from_rational(backend(), Rational(1, 2));
      return half * factor * (s1 * s1 - s2);
    };
    if (n == 0) {
      std::vector<int> children;
      for (const auto& e : diagram_.root_edges()) children.push_back(e.vertex);
      bool split = children.size() >= 2;
      row.split = {static_cast<char>(split)};
      row.g = {split ? compute(children, Scalar::from_integer(backend(), 1)) : zero()};
    } else {
      row.g.clear();
      row.split.clear();
      for (int v = 0; v < r; ++v) {
        std::vector<int> children;
        for (int e : diagram_.out_edges(v)) children.push_back(diagram_.edges()[e].range);
        bool split = children.size() >= 2;
        row.split.push_back(static_cast<char>(split));
        row.g.push_back(split ? compute(children, diam_factor(v, n)) : zero());
      }
    }
    row.g_d.clear();
    for (const auto& g : row.g) row.g_d.push_back(g.to_double());
  }
  ready_.store(generation, std::memory_order_release);
}

const LaplacianModel::Row& LaplacianModel::row(int generation) const {
  if (generation < 0) fail(ErrorCode::invalid_argument, "negative generation");
  prepare(generation);
  return rows_[generation];
}

const Scalar& LaplacianModel::mu(int vertex, int generation) const {
  const Row& r = row(generation);
  return generation == 0 ? r.mu[0] : r.mu[vertex];
}

Scalar LaplacianModel::mu(const Path& path) const {
  return mu(path.empty() ? 0 : end_vertex(diagram_, path), path.length());
}

bool LaplacianModel::splits(int vertex, int generation) const {
  const Row& r = row(generation);
  return r.split[generation == 0 ? 0 : vertex];
}

const Scalar& LaplacianModel::g_at(int vertex, int generation) const {
  const Row& r = row(generation);
  int i = generation == 0 ? 0 : vertex;
  if (!r.split[i]) fail(ErrorCode::invalid_argument, "no splitting at this path");
  return r.g[i];
}

Scalar LaplacianModel::g_value(const Path& path) const {
  return g_at(path.empty() ? 0 : end_vertex(diagram_, path), path.length());
}

double LaplacianModel::mu_value(int vertex, int generation) const {
  const Row& r = row(generation);
  return r.mu_d[generation == 0 ? 0 : vertex];
}

double LaplacianModel::g_value_double(int vertex, int generation) const {
  const Row& r = row(generation);
  return r.g_d[generation == 0 ? 0 : vertex];
}

int vertex_at(const BratteliDiagram& diagram, const Path& path, int k) {
  if (k == 0) return 0;
  if (k == 1) return diagram.root_edges()[path.root].vertex;
  return diagram.edges()[path.edges[k - 2]].range;
}

Scalar LaplacianModel::eigenvalue(const Path& path) const {
  const int len = path.length();
  prepare(len);
  Scalar sum = zero();
  for (int k = 0; k < len; ++k) {
    int v = vertex_at(diagram_, path, k);
    if (!splits(v, k)) continue;
    sum += (mu(vertex_at(diagram_, path, k + 1), k + 1) - mu(v, k)) / g_at(v, k);
  }
  int v = vertex_at(diagram_, path, len);
  if (!splits(v, len)) fail(ErrorCode::invalid_argument, "no eigenvalue: path has a single extension");
  return sum - mu(v, len) / g_at(v, len);
}

namespace {

struct Frontier {
  Path path;
  Scalar partial;
};

// Level-by-level expansion of the root edges in [first, last).
std::vector<std::vector<SpectralRecord>> expand_roots(const LaplacianModel& model, int depth, int first, int last) {
  const auto& diagram = model.diagram();
  std::vector<std::vector<SpectralRecord>> out(depth + 1);
  std::vector<Frontier> frontier;
  for (int r = first; r < last; ++r) {
    Path p{r, {}};
    int v = diagram.root_edges()[r].vertex;
    Scalar partial = model.zero();
    if (model.splits(0, 0)) partial = (model.mu(v, 1) - model.mu(0, 0)) / model.g_at(0, 0);
    frontier.push_back({std::move(p), std::move(partial)});
  }
  for (int n = 1; n <= depth; ++n) {
    std::vector<Frontier> next;
    for (auto& f : frontier) {
      int v = end_vertex(diagram, f.path);
      if (!model.splits(v, n)) {
        if (n < depth)
          for (int e : diagram.out_edges(v)) next.push_back({extend(f.path, e), f.partial});
        continue;
      }
      const Scalar& g = model.g_at(v, n);
      out[n].push_back({RecordLabel::path, f.path, n, f.partial - model.mu(v, n) / g,
                        static_cast<long>(diagram.out_degree(v)) - 1, std::nullopt});
      if (n < depth)
        for (int e : diagram.out_edges(v)) {
          int w = diagram.edges()[e].range;
          next.push_back({extend(f.path, e), f.partial + (model.mu(w, n + 1) - model.mu(v, n)) / g});
        }
    }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace

std::vector<SpectralRecord> full_spectrum(const LaplacianModel& model, int depth, const SpectrumOptions& options) {
  if (depth < 0) fail(ErrorCode::invalid_argument, "depth must be >= 0");
  const auto& diagram = model.diagram();
  Integer total = 0;
  for (int n = 1; n <= depth; ++n) total += predicted_path_count(diagram, n);
  if (total > Integer(static_cast<unsigned long>(options.cap)))
    fail(ErrorCode::limit, "spectrum through depth " + std::to_string(depth) + " needs " + total.get_str() +
                               " paths, above the cap of " + std::to_string(options.cap));
  model.prepare(depth + 1);

  std::vector<SpectralRecord> records;
  records.push_back({RecordLabel::zero, Path{}, 0, model.zero(), 1, std::nullopt});
  if (model.splits(0, 0))
    records.push_back({RecordLabel::root, Path{}, 0, model.root_eigenvalue(), model.root_multiplicity(), std::nullopt});
  if (depth == 0) return records;

  const int roots = static_cast<int>(diagram.root_edges().size());
  const int workers = std::max(1, std::min(options.threads, roots));
  std::vector<std::vector<std::vector<SpectralRecord>>> parts(workers);
  auto range = [&](int w) { return std::pair{roots * w / workers, roots * (w + 1) / workers}; };
  if (workers == 1) {
    parts[0] = expand_roots(model, depth, 0, roots);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          auto [first, last] = range(w);
          parts[w] = expand_roots(model, depth, first, last);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  for (int n = 1; n <= depth; ++n)
    for (auto& part : parts)
      for (auto& r : part[n]) records.push_back(std::move(r));
  return records;
}

std::vector<SpectralLevel> spectral_levels(const LaplacianModel& model, int depth) {
  if (depth < 1) fail(ErrorCode::invalid_argument, "depth must be >= 1");
  const auto& diagram = model.diagram();
  model.prepare(depth + 1);
  std::vector<SpectralLevel> levels;
  levels.push_back({0, 0.0, 1.0});
  if (model.splits(0, 0))
    levels.push_back({0, std::abs(model.root_eigenvalue().to_double()), static_cast<double>(model.root_multiplicity())});
  const int r = diagram.vertex_count();
  std::vector<double> roots_per_vertex(r, 0.0);
  for (const auto& e : diagram.root_edges()) roots_per_vertex[e.vertex] += 1.0;
  const double g0 = model.splits(0, 0) ? model.g_value_double(0, 0) : 1.0;
  auto dfs = [&](auto&& self, int v, int n, double count, double partial) -> void {
    double g = 0;
    bool split = model.splits(v, n);
    if (split) {
      g = model.g_value_double(v, n);
      double lambda = partial - model.mu_value(v, n) / g;
      levels.push_back({n, -lambda, count * (diagram.out_degree(v) - 1)});
    }
    if (n == depth) return;
    for (int w = 0; w < r; ++w) {
      long a = diagram.matrix()[v][w];
      if (a == 0) continue;
      double next = split ? partial + (model.mu_value(w, n + 1) - model.mu_value(v, n)) / g : partial;
      self(self, w, n + 1, count * static_cast<double>(a), next);
    }
  };
  for (int v = 0; v < r; ++v) {
    if (roots_per_vertex[v] == 0) continue;
    double partial = model.splits(0, 0) ? (model.mu_value(v, 1) - 1.0) / g0 : 0.0;
    dfs(dfs, v, 1, roots_per_vertex[v], partial);
  }
  return levels;
}

std::vector<EigenVectorSpec> eigenbasis(const LaplacianModel& model, const Path& path) {
  const auto& diagram = model.diagram();
  std::vector<int> ext = extensions(diagram, path);
  std::vector<EigenVectorSpec> specs;
  if (ext.size() < 2) return specs;
  Scalar one = Scalar::from_integer(model.backend(), 1);
  Scalar a = one / model.mu(extend(path, ext[0]));
  for (std::size_t i = 1; i < ext.size(); ++i)
    specs.push_back({path, ext[0], ext[i], a, -(one / model.mu(extend(path, ext[i])))});
  return specs;
}

long total_multiplicity(const std::vector<SpectralRecord>& records) {
  long total = 0;
  for (const auto& r : records) total += r.multiplicity;
  return total;
}

}  // namespace bratspec
