#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cuntz.hpp"

namespace bratspec {

struct FitResult {
  double slope = 0;
  double intercept = 0;
  double residual = 0;  // root mean square in log space
  double lo = 0;
  double hi = 0;
  std::size_t points = 0;
};

// Ordinary least squares of log(y) on log(x); non-positive samples are rejected.
FitResult fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

struct CountingSample {
  double threshold;
  double count;
};

struct WeylOptions {
  double grid_lo = 0;  // 0: geometric mean of the smallest nonzero and the largest covered magnitude
  double grid_hi = 0;  // 0: largest covered magnitude
  int steps = 40;
};

struct WeylReport {
  int depth = 0;
  double covered_max = 0;
  double exponent = 0;  // d / (d - s + 2)
  std::vector<CountingSample> samples;
  FitResult fit;
  double c_minus = 0;  // min and max of N / lambda^exponent over the samples
  double c_plus = 0;
};

// Counting function N(lambda) = #{|eigenvalue| <= lambda}, with multiplicity.
double counting_function(const std::vector<SpectralLevel>& levels, double threshold);

// Levels must come from spectral_levels(model, depth). Thresholds above the
// smallest magnitude of the deepest generation are not fully covered.
WeylReport weyl_count(const LaplacianModel& model, const std::vector<SpectralLevel>& levels, int depth,
                      const WeylOptions& options = {});

struct MagnitudeCount {
  double magnitude;
  double count;
};

// N evaluated at each distinct eigenvalue magnitude (zero included).
std::vector<MagnitudeCount> counts_at_magnitudes(const std::vector<SpectralLevel>& levels, double max_magnitude);

struct HeatSample {
  double t;
  double value;
  double tail;
};

struct HeatOptions {
  double tmin = 1e-6;
  double tmax = 1e-2;
  int points = 25;
  double tail_target = 1e-9;
  int max_depth = 40;
};

struct HeatReport {
  int depth = 0;
  double lambda = 0;  // growth ratio of the envelope
  double beta_max = 0;
  std::vector<HeatSample> samples;
  FitResult fit;
};

// Tail of the trace beyond `depth` from the affine envelope
// m_{n+1} = Lambda m_n - B started at the smallest magnitude of generation
// `depth`, with exact per-generation multiplicities and a factor 2.
double heat_tail(const BratteliDiagram& diagram, const std::vector<SpectralLevel>& levels, int depth, double lambda,
                 double beta_max, double t);

double heat_trace_value(const std::vector<SpectralLevel>& levels, double t);

// s must equal d; the depth grows until the tail at tmin is below tail_target.
HeatReport heat_trace(const LaplacianModel& model, const HeatOptions& options = {});

struct NormBoundReport {
  int depth = 0;
  double lambda = 0;
  double c = 0;
  double bound = 0;
  double sup = 0;
  bool within = false;
  std::vector<double> max_by_generation;  // index = generation
  std::vector<double> increments;         // M_n - M_{n-1}, n >= 1 (exact difference, then rounded)
  bool increments_zero = false;           // every increment is exactly zero
  // Per-generation decay between consecutive nonzero increments n < m:
  // (|inc_m| / |inc_n|)^(1/(m-n)), keyed by m.
  std::vector<std::pair<int, double>> decay_ratios;
};

// s > d + 2 only.
NormBoundReport norm_bound_check(const LaplacianModel& model, int depth);

struct ComplexityTable {
  int n_max = 0;
  std::vector<long> counts;  // counts[n], n >= 1; counts[0] = 1
  std::vector<double> nu;    // nu[n] = ln p(n) / ln n, n >= 2
  std::size_t prefix_length = 0;
  int seed_letter = 0;
  int seed_power = 1;
};

// Number of distinct factors of each length 1..n_max (suffix automaton).
std::vector<long> factor_counts(const std::vector<int>& word, int n_max);

// Prefix of a fixed point of rule^power starting with `letter`.
std::vector<int> fixed_point_prefix(const SubstitutionRule& rule, int letter, int power, std::size_t length);

ComplexityTable factor_complexity(const SubstitutionRule& rule, int n_max);

}  // namespace bratspec
