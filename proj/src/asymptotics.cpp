#include "asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>

#include "error.hpp"

namespace bratspec {

namespace {

std::vector<double> log_grid(double lo, double hi, int steps) {
  std::vector<double> out;
  if (steps == 1) return {lo};
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < steps; ++i) out.push_back(std::exp(a + (b - a) * i / (steps - 1)));
  out.back() = hi;
  return out;
}

// Smallest magnitude per generation (+inf where nothing splits).
std::vector<double> generation_minima(const std::vector<SpectralLevel>& levels, int depth) {
  std::vector<double> out(depth + 1, std::numeric_limits<double>::infinity());
  for (const auto& l : levels)
    if (l.generation >= 1 && l.generation <= depth) out[l.generation] = std::min(out[l.generation], l.magnitude);
  return out;
}

double max_beta(const AffineMapTable& table) {
  double b = 0;
  for (const auto& x : table.beta) b = std::max(b, std::abs(x.to_double()));
  return b;
}

}  // namespace

FitResult fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) fail(ErrorCode::invalid_argument, "fit needs at least two samples");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0) || !(y[i] > 0)) fail(ErrorCode::invalid_argument, "log-log fit needs positive samples");
    double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double den = n * sxx - sx * sx;
  if (den == 0) fail(ErrorCode::numeric, "degenerate fit window");
  FitResult f;
  f.slope = (n * sxy - sx * sy) / den;
  f.intercept = (sy - f.slope * sx) / n;
  double ss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double r = std::log(y[i]) - (f.intercept + f.slope * std::log(x[i]));
    ss += r * r;
  }
  f.residual = std::sqrt(ss / n);
  f.lo = *std::min_element(x.begin(), x.end());
  f.hi = *std::max_element(x.begin(), x.end());
  f.points = x.size();
  return f;
}

double counting_function(const std::vector<SpectralLevel>& levels, double threshold) {
  double n = 0;
  for (const auto& l : levels)
    if (l.magnitude <= threshold) n += l.multiplicity;
  return n;
}

std::vector<MagnitudeCount> counts_at_magnitudes(const std::vector<SpectralLevel>& levels, double max_magnitude) {
  std::vector<std::pair<double, double>> sorted;
  for (const auto& l : levels) sorted.emplace_back(l.magnitude, l.multiplicity);
  std::sort(sorted.begin(), sorted.end());
  std::vector<MagnitudeCount> out;
  double total = 0;
  for (const auto& [m, k] : sorted) {
    total += k;
    if (!out.empty() && std::abs(m - out.back().magnitude) <= 1e-12 * std::max(1.0, m)) {
      out.back().count = total;
      continue;
    }
    out.push_back({m, total});
  }
  while (!out.empty() && out.back().magnitude > max_magnitude) out.pop_back();
  return out;
}

WeylReport weyl_count(const LaplacianModel& model, const std::vector<SpectralLevel>& levels, int depth,
                      const WeylOptions& options) {
  const int d = model.perron().dimension;
  const double s = model.s();
  if (s >= d + 2) fail(ErrorCode::hypothesis, "Weyl asymptotics need s < d + 2");
  if (depth < 3) fail(ErrorCode::invalid_argument, "Weyl counting needs depth >= 3");
  if (options.steps < 2) fail(ErrorCode::invalid_argument, "grid needs at least two steps");
  WeylReport report;
  report.depth = depth;
  report.exponent = d / (d - s + 2.0);
  std::vector<double> minima = generation_minima(levels, depth);
  for (int n = depth - 2; n < depth; ++n)
    if (!(minima[n + 1] > minima[n]))
      fail(ErrorCode::numeric, "generation minima are not increasing near depth " + std::to_string(depth) +
                                   "; coverage cannot be established");
  report.covered_max = minima[depth];
  double smallest = std::numeric_limits<double>::infinity();
  for (const auto& l : levels)
    if (l.magnitude > 0) smallest = std::min(smallest, l.magnitude);
  const double lo = options.grid_lo > 0 ? options.grid_lo : std::sqrt(smallest * report.covered_max);
  const double hi = options.grid_hi > 0 ? options.grid_hi : report.covered_max * (1 - 1e-12);
  if (hi >= report.covered_max)
    fail(ErrorCode::limit, "grid top " + format_double(hi) + " exceeds the largest covered magnitude " +
                               format_double(report.covered_max) + " at depth " + std::to_string(depth));
  if (!(lo < hi)) fail(ErrorCode::invalid_argument, "empty Weyl grid");
  std::vector<double> xs, ys;
  report.c_minus = std::numeric_limits<double>::infinity();
  for (double x : log_grid(lo, hi, options.steps)) {
    double n = counting_function(levels, x);
    report.samples.push_back({x, n});
    xs.push_back(x);
    ys.push_back(n);
    double c = n / std::pow(x, report.exponent);
    report.c_minus = std::min(report.c_minus, c);
    report.c_plus = std::max(report.c_plus, c);
  }
  report.fit = fit_loglog(xs, ys);
  return report;
}

double heat_trace_value(const std::vector<SpectralLevel>& levels, double t) {
  // Smallest terms first.
  std::vector<long double> terms;
  terms.reserve(levels.size());
  for (const auto& l : levels) terms.push_back(static_cast<long double>(l.multiplicity) * std::exp(-(long double)t * l.magnitude));
  std::sort(terms.begin(), terms.end());
  long double sum = 0;
  for (long double x : terms) sum += x;
  return static_cast<double>(sum);
}

double heat_tail(const BratteliDiagram& diagram, const std::vector<SpectralLevel>& levels, int depth, double lambda,
                 double beta_max, double t) {
  const int r = diagram.vertex_count();
  std::vector<double> counts(r, 0.0);
  for (const auto& e : diagram.root_edges()) counts[e.vertex] += 1.0;
  for (int n = 1; n < depth; ++n) {
    std::vector<double> next(r, 0.0);
    for (int v = 0; v < r; ++v)
      for (int w = 0; w < r; ++w) next[w] += counts[v] * static_cast<double>(diagram.matrix()[v][w]);
    counts = std::move(next);
  }
  std::vector<double> minima = generation_minima(levels, depth);
  double m = minima[depth];
  if (!std::isfinite(m)) return std::numeric_limits<double>::infinity();
  long double sum = 0;
  for (int n = depth + 1; n < depth + 100000; ++n) {
    std::vector<double> next(r, 0.0);
    for (int v = 0; v < r; ++v)
      for (int w = 0; w < r; ++w) next[w] += counts[v] * static_cast<double>(diagram.matrix()[v][w]);
    counts = std::move(next);
    double next_m = lambda * m - beta_max;
    if (!(next_m > m)) return std::numeric_limits<double>::infinity();
    m = next_m;
    double mult = 0;
    for (int v = 0; v < r; ++v) mult += counts[v] * static_cast<double>(diagram.out_degree(v) - 1);
    if (!std::isfinite(mult)) return std::numeric_limits<double>::infinity();
    sum += static_cast<long double>(mult) * std::exp(-(long double)t * m);
    if (t * m > 800) break;
  }
  return static_cast<double>(2 * sum);
}

HeatReport heat_trace(const LaplacianModel& model, const HeatOptions& options) {
  const int d = model.perron().dimension;
  if (std::abs(model.s() - d) > 1e-12) fail(ErrorCode::hypothesis, "heat trace needs s = d");
  if (!(options.tmin > 0) || !(options.tmax > options.tmin) || options.points < 2)
    fail(ErrorCode::invalid_argument, "heat grid needs 0 < tmin < tmax and at least two points");
  HeatReport report;
  AffineMapTable table = affine_table(model);
  report.lambda = table.lambda.to_double();
  report.beta_max = max_beta(table);
  std::vector<SpectralLevel> levels;
  double tail = std::numeric_limits<double>::infinity();
  int depth = 2;
  for (; depth <= options.max_depth; ++depth) {
    levels = spectral_levels(model, depth);
    tail = heat_tail(model.diagram(), levels, depth, report.lambda, report.beta_max, options.tmin);
    if (tail <= options.tail_target) break;
  }
  if (!(tail <= options.tail_target)) {
    depth = options.max_depth;
    double lo = options.tmin, hi = std::max(options.tmax, 1.0);
    while (!(heat_tail(model.diagram(), levels, depth, report.lambda, report.beta_max, hi) <= options.tail_target) &&
           hi < 1e12)
      hi *= 10;
    for (int i = 0; i < 60; ++i) {
      double mid = std::sqrt(lo * hi);
      if (heat_tail(model.diagram(), levels, depth, report.lambda, report.beta_max, mid) <= options.tail_target)
        hi = mid;
      else
        lo = mid;
    }
    fail(ErrorCode::limit, "tail bound below " + format_double(options.tail_target) + " not certifiable at t = " +
                               format_double(options.tmin) + " within depth " + std::to_string(options.max_depth) +
                               "; minimum feasible t is about " + format_double(hi));
  }
  report.depth = depth;
  std::vector<double> xs, ys;
  for (double t : log_grid(options.tmin, options.tmax, options.points)) {
    double value = heat_trace_value(levels, t);
    double tl = heat_tail(model.diagram(), levels, depth, report.lambda, report.beta_max, t);
    report.samples.push_back({t, value, tl});
    xs.push_back(t);
    ys.push_back(value);
  }
  report.fit = fit_loglog(xs, ys);
  return report;
}

NormBoundReport norm_bound_check(const LaplacianModel& model, int depth) {
  const int d = model.perron().dimension;
  if (!(model.s() > d + 2)) fail(ErrorCode::hypothesis, "bounded case needs s > d + 2");
  if (depth < 3) fail(ErrorCode::invalid_argument, "norm bound check needs depth >= 3");
  NormBoundReport report;
  report.depth = depth;
  AffineMapTable table = affine_table(model);
  report.lambda = table.lambda.to_double();
  std::vector<std::optional<Scalar>> top(depth + 1);
  for (const auto& r : full_spectrum(model, depth)) {
    if (r.label == RecordLabel::zero) continue;
    Scalar m = r.eigenvalue.abs();
    auto& slot = top[r.generation];
    if (!slot || compare(m, *slot) > 0) slot = m;
  }
  for (int n = 1; n <= depth; ++n)
    if (!top[n]) top[n] = top[n - 1];
  if (!top[0]) top[0] = model.zero();
  for (const auto& m : top) report.max_by_generation.push_back(m->to_double());
  report.c = std::max({max_beta(table), report.max_by_generation[0], report.max_by_generation[1]});
  report.bound = report.c / (1 - report.lambda);
  report.sup = *std::max_element(report.max_by_generation.begin(), report.max_by_generation.end());
  report.within = report.sup <= report.bound;
  report.increments_zero = true;
  int last = -1;
  for (int n = 1; n <= depth; ++n) {
    Scalar inc = *top[n] - *top[n - 1];
    report.increments.push_back(inc.to_double());
    if (inc.is_zero()) continue;
    report.increments_zero = false;
    if (last > 0) {
      double ratio = std::abs(report.increments[n - 1] / report.increments[last - 1]);
      report.decay_ratios.emplace_back(n, std::pow(ratio, 1.0 / (n - last)));
    }
    last = n;
  }
  return report;
}

std::vector<long> factor_counts(const std::vector<int>& word, int n_max) {
  struct State {
    int len = 0;
    int link = -1;
    std::map<int, int> next;
  };
  std::vector<State> st;
  st.reserve(2 * word.size() + 2);
  st.push_back({});
  int last = 0;
  for (int c : word) {
    int cur = static_cast<int>(st.size());
    st.push_back({st[last].len + 1, -1, {}});
    int p = last;
    while (p != -1 && !st[p].next.count(c)) {
      st[p].next[c] = cur;
      p = st[p].link;
    }
    if (p == -1) {
      st[cur].link = 0;
    } else {
      int q = st[p].next[c];
      if (st[p].len + 1 == st[q].len) {
        st[cur].link = q;
      } else {
        int clone = static_cast<int>(st.size());
        State copy = st[q];
        copy.len = st[p].len + 1;
        st.push_back(std::move(copy));
        while (p != -1 && st[p].next.count(c) && st[p].next[c] == q) {
          st[p].next[c] = clone;
          p = st[p].link;
        }
        st[q].link = clone;
        st[cur].link = clone;
      }
    }
    last = cur;
  }
  // Each state covers lengths link.len+1 .. len.
  std::vector<long> diff(n_max + 2, 0);
  for (std::size_t i = 1; i < st.size(); ++i) {
    int a = st[st[i].link].len + 1;
    int b = std::min(st[i].len, n_max);
    if (a > b) continue;
    diff[a] += 1;
    diff[b + 1] -= 1;
  }
  std::vector<long> counts(n_max + 1, 0);
  counts[0] = 1;
  long run = 0;
  for (int n = 1; n <= n_max; ++n) {
    run += diff[n];
    counts[n] = run;
  }
  return counts;
}

std::vector<int> fixed_point_prefix(const SubstitutionRule& rule, int letter, int power, std::size_t length) {
  std::vector<int> word{letter};
  for (int round = 0; word.size() < length; ++round) {
    if (round > 4096) fail(ErrorCode::hypothesis, "substitution does not grow from the seed letter");
    for (int k = 0; k < power; ++k) {
      std::vector<int> next;
      for (int c : word) {
        const auto& img = rule.images[c];
        next.insert(next.end(), img.begin(), img.end());
        if (next.size() >= length) break;
      }
      if (next.front() != word.front() && k + 1 == power)
        fail(ErrorCode::hypothesis, "seed letter does not start its own image");
      word = std::move(next);
    }
  }
  word.resize(length);
  return word;
}

ComplexityTable factor_complexity(const SubstitutionRule& rule, int n_max) {
  if (rule.dimension != 1) fail(ErrorCode::unsupported, "factor complexity is implemented for d = 1 only");
  if (n_max < 1) fail(ErrorCode::invalid_argument, "n_max must be >= 1");
  if (!is_primitive(abelianize(rule))) fail(ErrorCode::not_primitive, "substitution is not primitive");
  const int r = static_cast<int>(rule.alphabet.size());
  ComplexityTable table;
  table.n_max = n_max;
  bool found = false;
  for (int power = 1; power <= r && !found; ++power)
    for (int a = 0; a < r && !found; ++a) {
      int c = a;
      for (int k = 0; k < power; ++k) c = rule.images[c].front();
      if (c == a) {
        table.seed_letter = a;
        table.seed_power = power;
        found = true;
      }
    }
  if (!found) fail(ErrorCode::hypothesis, "no letter starts the image of some power of the substitution");

  std::size_t length = std::max<std::size_t>(64, 4 * static_cast<std::size_t>(n_max));
  const std::size_t limit = std::size_t(1) << 26;
  std::vector<long> previous;
  int agreements = 0;
  for (; length <= limit; length *= 2) {
    std::vector<long> counts = factor_counts(fixed_point_prefix(rule, table.seed_letter, table.seed_power, length), n_max);
    agreements = counts == previous ? agreements + 1 : 0;
    previous = std::move(counts);
    if (agreements == 2) break;
  }
  if (agreements < 2) fail(ErrorCode::limit, "factor counts did not stabilize below prefix length 2^26");
  table.prefix_length = length;
  table.counts = std::move(previous);
  table.nu.assign(n_max + 1, std::numeric_limits<double>::quiet_NaN());
  for (int n = 2; n <= n_max; ++n) table.nu[n] = std::log(static_cast<double>(table.counts[n])) / std::log(n);
  return table;
}

}  // namespace bratspec
