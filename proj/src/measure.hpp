#pragma once

#include <optional>
#include <vector>

#include "diagram.hpp"
#include "scalar.hpp"

namespace bratspec {

inline constexpr long kDefaultPrecision = 200;

struct PerronData {
  Backend backend;
  Scalar theta;
  std::vector<Scalar> v_right;  // g * sum(v_right) = 1
  std::vector<Scalar> v_left;   // <v_left, v_right> = 1
  IntPolynomial minimal_polynomial;
  int symmetry_order = 1;
  int dimension = 1;
  ApproxReal inflation{128};              // theta^(1/d)
  std::optional<Scalar> inflation_exact;  // when it lies in the active field

  PerronData to_approx(long precision) const;
};

PerronData perron(const BratteliDiagram& diagram, const Backend& backend);

// Exact square root inside the rational or quadratic field, if there is one.
std::optional<Scalar> exact_sqrt(const Scalar& x);

// mu of a generation-n path ending at vertex (n >= 1); mu of the empty path is 1.
Scalar mu_at(const PerronData& perron, int vertex, int generation);
Scalar mu(const PerronData& perron, const BratteliDiagram& diagram, const Path& path);

enum class WeightMode { measure_root, custom };

struct WeightSystem {
  WeightMode mode = WeightMode::measure_root;
  std::vector<Scalar> base;  // custom: w(v, 1) per letter
  long precision = kDefaultPrecision;

  static WeightSystem measure_root(long precision = kDefaultPrecision) {
    return {WeightMode::measure_root, {}, precision};
  }
  static WeightSystem custom(std::vector<Scalar> base, long precision = kDefaultPrecision);
};

Scalar weight_at(const WeightSystem& ws, const PerronData& perron, int vertex, int generation);
Scalar weight(const WeightSystem& ws, const PerronData& perron, const BratteliDiagram& diagram, const Path& path);
double weight_value(const WeightSystem& ws, const PerronData& perron, int vertex, int generation);
Scalar ultrametric_distance(const WeightSystem& ws, const PerronData& perron, const BratteliDiagram& diagram,
                            const Path& x, const Path& y);

struct ZetaRow {
  int generation;
  double increment;
  double cumulative;
  double ratio;  // NaN for the first row
};

// Partial sums of sum_gamma w(gamma)^s; row 0 is the root term 1.
std::vector<ZetaRow> zeta_partial(const WeightSystem& ws, const PerronData& perron, const BratteliDiagram& diagram,
                                  double s, int max_generation);

// Number of generation-n paths ending at each vertex, as floating counts.
std::vector<long double> paths_ending_at(const BratteliDiagram& diagram, int generation);

}  // namespace bratspec
