#pragma once

#include <atomic>
#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "diagram.hpp"
#include "measure.hpp"

namespace bratspec {

enum class RecordLabel { zero, root, path };

struct SpectralRecord {
  RecordLabel label = RecordLabel::path;
  Path path;
  int generation = 0;
  Scalar eigenvalue;
  long multiplicity = 1;
  std::optional<std::vector<Rational>> coords;
};

// Eigenvalue magnitude shared by a group of paths (numeric summaries).
struct SpectralLevel {
  int generation;
  double magnitude;
  double multiplicity;
};

struct EigenVectorSpec {
  Path path;
  int anchor;  // extension indices (edges, or root edges for the empty path)
  int other;
  Scalar anchor_coefficient;  // 1 / mu[path.anchor]
  Scalar other_coefficient;   // -1 / mu[path.other]
};

// mu, G and eigenvalue tables for one (diagram, weights, s). When the
// requested exact backend cannot carry diam^(2-s), everything runs on an
// approx backend instead (fell_back()).
class LaplacianModel {
 public:
  static constexpr int kMaxGeneration = 512;

  LaplacianModel(const BratteliDiagram& diagram, const PerronData& perron, WeightSystem weights, double s,
                 long fallback_precision = kDefaultPrecision);

  const BratteliDiagram& diagram() const { return diagram_; }
  const PerronData& perron() const { return perron_; }
  const WeightSystem& weights() const { return weights_; }
  double s() const { return s_; }
  const Backend& backend() const { return perron_.backend; }
  bool exact() const { return perron_.backend.exact(); }
  bool fell_back() const { return fell_back_; }
  Scalar zero() const { return Scalar::from_integer(backend(), 0); }

  // Tables up to the given generation; safe to call concurrently.
  void prepare(int generation) const;

  // generation 0 denotes the root vertex (vertex ignored).
  const Scalar& mu(int vertex, int generation) const;
  Scalar mu(const Path& path) const;
  bool splits(int vertex, int generation) const;
  const Scalar& g_at(int vertex, int generation) const;
  Scalar g_value(const Path& path) const;
  double mu_value(int vertex, int generation) const;
  double g_value_double(int vertex, int generation) const;

  Scalar eigenvalue(const Path& path) const;
  Scalar root_eigenvalue() const { return -mu(0, 0) / g_at(0, 0); }
  int root_multiplicity() const { return static_cast<int>(diagram_.root_edges().size()) - 1; }

 private:
  struct Row {
    std::vector<Scalar> mu, g;
    std::vector<double> mu_d, g_d;
    std::vector<char> split;
  };
  void fill_row(int generation) const;
  const Row& row(int generation) const;
  Scalar diam_factor(int vertex, int generation) const;

  BratteliDiagram diagram_;
  PerronData perron_;
  WeightSystem weights_;
  double s_;
  bool fell_back_ = false;
  bool exponent_integral_ = false;
  long exponent_ = 0;
  mutable std::vector<Row> rows_;
  mutable std::atomic<int> ready_{-1};
  mutable std::unique_ptr<std::mutex> mutex_ = std::make_unique<std::mutex>();
};

int vertex_at(const BratteliDiagram& diagram, const Path& path, int k);

struct SpectrumOptions {
  std::size_t cap = kDefaultPathCap;
  int threads = 1;
};

// Records for the kernel, the root, and every splitting path of length <= depth (>= 0),
// ordered by generation and then path order.
std::vector<SpectralRecord> full_spectrum(const LaplacianModel& model, int depth, const SpectrumOptions& options = {});

// Eigenvalue magnitudes grouped by vertex sequence (paths sharing it share the eigenvalue).
std::vector<SpectralLevel> spectral_levels(const LaplacianModel& model, int depth);

std::vector<EigenVectorSpec> eigenbasis(const LaplacianModel& model, const Path& path);

long total_multiplicity(const std::vector<SpectralRecord>& records);

}  // namespace bratspec
