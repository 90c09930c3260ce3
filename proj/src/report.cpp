#include "report.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "asymptotics.hpp"
#include "companion.hpp"
#include "dense.hpp"
#include "error.hpp"

namespace bratspec {

using nlohmann::json;

namespace {

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return format_double(x);
}

json jnum(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

const char* label_name(RecordLabel l) {
  switch (l) {
    case RecordLabel::zero: return "zero";
    case RecordLabel::root: return "root";
    default: return "path";
  }
}

std::string matrix_text(const IntMatrix& a) {
  std::string out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) out += ';';
    for (std::size_t j = 0; j < a[i].size(); ++j) {
      if (j) out += ' ';
      out += std::to_string(a[i][j]);
    }
  }
  return out;
}

std::string coords_text(const std::vector<Rational>& c) {
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ';';
    out += to_string(c[i]);
  }
  return out;
}

void require_depth(const RunRequest& r, int minimum) {
  if (r.depth < minimum)
    fail(ErrorCode::invalid_argument, std::string(command_name(r.command)) + " needs --depth >= " +
                                          std::to_string(minimum));
}

// Shared header: comment lines for CSV, fields for JSON.
struct Emitter {
  const Session& session;
  const RunRequest& request;
  std::ostringstream csv;
  json doc;

  Emitter(const Session& s, const RunRequest& r) : session(s), request(r) {
    const auto& m = s.model();
    if (csv_mode()) {
      csv << "# bratspec " << command_name(r.command) << "\n";
      csv << "# source: " << s.preset().name << "\n";
      csv << "# backend: " << m.backend().to_string() << "\n";
      csv << m.backend().basis_header() << "\n";
      csv << "# s: " << num(m.s()) << "\n";
      if (m.fell_back())
        csv << "# note: " << s.requested_backend().to_string() << " cannot carry diam^(2-s); values computed on "
            << m.backend().to_string() << "\n";
    } else {
      doc["command"] = command_name(r.command);
      doc["source"] = s.preset().name;
      doc["backend"] = m.backend().to_string();
      doc["field"] = m.backend().basis_header().substr(9);
      doc["s"] = m.s();
      doc["fell_back"] = m.fell_back();
    }
  }

  bool csv_mode() const { return request.format == OutputFormat::csv; }

  std::string finish() {
    if (csv_mode()) return csv.str();
    return doc.dump(2) + "\n";
  }
};

json fit_json(const FitResult& f) {
  return {{"slope", jnum(f.slope)},     {"intercept", jnum(f.intercept)}, {"residual", jnum(f.residual)},
          {"window", {jnum(f.lo), jnum(f.hi)}}, {"points", f.points}};
}

RunResult run_spectrum(const Session& session, const RunRequest& r) {
  require_depth(r, 1);
  const auto& m = session.model();
  SpectrumOptions opts;
  opts.threads = std::max(1, r.threads);
  if (r.cap) opts.cap = r.cap;
  std::vector<SpectralRecord> records = full_spectrum(m, r.depth - 1, opts);
  Emitter out(session, r);
  if (out.csv_mode()) {
    out.csv << "# depth " << r.depth << ": generations 0.." << r.depth - 1 << ", total multiplicity "
            << total_multiplicity(records) << "\n";
    out.csv << "label,generation,path,eigenvalue_exact,eigenvalue,multiplicity\n";
    for (const auto& rec : records)
      out.csv << label_name(rec.label) << ',' << rec.generation << ',' << path_id(m.diagram(), rec.path) << ','
              << rec.eigenvalue.exact_string() << ',' << num(rec.eigenvalue.to_double()) << ',' << rec.multiplicity
              << "\n";
  } else {
    out.doc["depth"] = r.depth;
    out.doc["total_multiplicity"] = total_multiplicity(records);
    json rows = json::array();
    for (const auto& rec : records)
      rows.push_back({{"label", label_name(rec.label)},
                      {"generation", rec.generation},
                      {"path", path_id(m.diagram(), rec.path)},
                      {"exact", rec.eigenvalue.exact_string()},
                      {"value", jnum(rec.eigenvalue.to_double())},
                      {"multiplicity", rec.multiplicity}});
    out.doc["records"] = std::move(rows);
  }
  return {out.finish(), true};
}

RunResult run_dense(const Session& session, const RunRequest& r) {
  require_depth(r, 1);
  const auto& m = session.model();
  DenseOperator op = dense_restriction(m, r.depth, r.cap ? r.cap : kDefaultDenseCap, false);
  std::vector<double> spectrum = dense_eigenvalues(op, m, true);
  std::vector<std::string> ids;
  for (const auto& p : op.basis.paths) ids.push_back(path_id(m.diagram(), p));
  Emitter out(session, r);
  if (out.csv_mode()) {
    out.csv << "# generation " << r.depth << ", dimension " << op.size() << "\n";
    out.csv << "# matrix: row i, column j = coefficient of chi_i in Delta chi_j\n";
    out.csv << "path";
    for (const auto& id : ids) out.csv << ',' << id;
    out.csv << "\n";
    for (std::size_t i = 0; i < op.size(); ++i) {
      out.csv << ids[i];
      for (std::size_t j = 0; j < op.size(); ++j) out.csv << ',' << num(op.at(i, j));
      out.csv << "\n";
    }
    out.csv << "# spectrum (ascending)\n";
    out.csv << "index,eigenvalue\n";
    for (std::size_t i = 0; i < spectrum.size(); ++i) out.csv << i << ',' << num(spectrum[i]) << "\n";
  } else {
    out.doc["generation"] = r.depth;
    out.doc["basis"] = ids;
    json rows = json::array();
    for (std::size_t i = 0; i < op.size(); ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < op.size(); ++j) row.push_back(jnum(op.at(i, j)));
      rows.push_back(std::move(row));
    }
    out.doc["matrix"] = std::move(rows);
    json spec = json::array();
    for (double x : spectrum) spec.push_back(jnum(x));
    out.doc["spectrum"] = std::move(spec);
  }
  return {out.finish(), true};
}

RunResult run_verify(const Session& session, const RunRequest& r) {
  require_depth(r, 1);
  const auto& m = session.model();
  VerifyOptions opts;
  opts.tolerance = r.tolerance;
  if (r.cap) opts.cap = r.cap;
  VerifyReport rep = verify_spectrum(m, r.depth, opts);
  std::vector<std::string> notes = discrepancy_notes(check_discrepancies(session.preset(), m));
  if (!session.preset().transversal_faithful)
    notes.push_back("preset " + session.preset().name +
                    " does not force the border; its path space is a combinatorial model of the transversal");
  for (const auto& f : rep.failures) notes.push_back("failure: " + f);
  Emitter out(session, r);
  const std::size_t rows = std::max(rep.expected.size(), rep.found.size());
  if (out.csv_mode()) {
    out.csv << "# generation " << rep.generation << ", dimension " << rep.dimension << ", total multiplicity "
            << rep.total_multiplicity << "\n";
    out.csv << "index,expected,expected_multiplicity,found,found_multiplicity\n";
    for (std::size_t i = 0; i < rows; ++i) {
      out.csv << i << ',';
      if (i < rep.expected.size()) out.csv << num(rep.expected[i].value) << ',' << rep.expected[i].multiplicity;
      else out.csv << ',';
      out.csv << ',';
      if (i < rep.found.size()) out.csv << num(rep.found[i].value) << ',' << rep.found[i].multiplicity;
      else out.csv << ',';
      out.csv << "\n";
    }
    out.csv << "# max_deviation: " << num(rep.max_deviation) << "\n";
    out.csv << "# numeric: " << (rep.numeric_passed ? "pass" : "fail") << "\n";
    out.csv << "# exact: " << (rep.exact_checked ? (rep.exact_passed ? "pass" : "fail") : "not checked") << "\n";
    out.csv << "# result: " << (rep.passed ? "PASS" : "FAIL") << "\n";
    out.csv << "# NOTES\n";
    if (notes.empty()) out.csv << "# (none)\n";
    for (const auto& n : notes) out.csv << "# - " << n << "\n";
  } else {
    out.doc["generation"] = rep.generation;
    out.doc["dimension"] = rep.dimension;
    out.doc["total_multiplicity"] = rep.total_multiplicity;
    auto groups = [](const std::vector<EigenGroup>& g) {
      json a = json::array();
      for (const auto& x : g) a.push_back({{"value", jnum(x.value)}, {"multiplicity", x.multiplicity}});
      return a;
    };
    out.doc["expected"] = groups(rep.expected);
    out.doc["found"] = groups(rep.found);
    out.doc["max_deviation"] = jnum(rep.max_deviation);
    out.doc["numeric_passed"] = rep.numeric_passed;
    out.doc["exact_checked"] = rep.exact_checked;
    out.doc["exact_passed"] = rep.exact_passed;
    out.doc["passed"] = rep.passed;
    out.doc["notes"] = notes;
  }
  return {out.finish(), rep.passed};
}

RunResult run_zeta(const Session& session, const RunRequest& r) {
  require_depth(r, 1);
  const auto& m = session.model();
  std::vector<ZetaRow> rows = zeta_partial(m.weights(), m.perron(), m.diagram(), m.s(), r.depth);
  Emitter out(session, r);
  if (out.csv_mode()) {
    out.csv << "# partial sums of sum_gamma diam[gamma]^s with s = " << num(m.s()) << "\n";
    out.csv << "generation,increment,cumulative,ratio\n";
    for (const auto& z : rows)
      out.csv << z.generation << ',' << num(z.increment) << ',' << num(z.cumulative) << ',' << num(z.ratio) << "\n";
  } else {
    json a = json::array();
    for (const auto& z : rows)
      a.push_back({{"generation", z.generation},
                   {"increment", jnum(z.increment)},
                   {"cumulative", jnum(z.cumulative)},
                   {"ratio", jnum(z.ratio)}});
    out.doc["depth"] = r.depth;
    out.doc["rows"] = std::move(a);
  }
  return {out.finish(), true};
}

RunResult run_weyl(const Session& session, const RunRequest& r) {
  require_depth(r, 3);
  const auto& m = session.model();
  std::vector<SpectralLevel> levels = spectral_levels(m, r.depth);
  WeylOptions opts;
  opts.grid_lo = r.grid_lo;
  opts.grid_hi = r.grid_hi;
  opts.steps = r.grid_steps;
  WeylReport rep = weyl_count(m, levels, r.depth, opts);
  const bool thue_morse = session.preset().name == "thue-morse" && std::abs(m.s() - 1) < 1e-12;
  json margins = json::array();
  if (thue_morse)
    for (const auto& c : counts_at_magnitudes(levels, rep.covered_max)) {
      if (c.magnitude == 0) continue;
      auto [lo, hi] = thue_morse_weyl_bounds(c.magnitude);
      margins.push_back({{"magnitude", jnum(c.magnitude)},
                         {"count", jnum(c.count)},
                         {"lower", jnum(lo)},
                         {"upper", jnum(hi)},
                         {"lower_margin", jnum(c.count - lo)},
                         {"upper_margin", jnum(hi - c.count)}});
    }
  json summary = {{"depth", rep.depth},
                  {"exponent", jnum(rep.exponent)},
                  {"covered_max", jnum(rep.covered_max)},
                  {"c_minus", jnum(rep.c_minus)},
                  {"c_plus", jnum(rep.c_plus)},
                  {"fit", fit_json(rep.fit)}};
  Emitter out(session, r);
  if (out.csv_mode()) {
    out.csv << "# N(x) = number of eigenvalues with |lambda| <= x, with multiplicity\n";
    out.csv << "threshold,count\n";
    for (const auto& sample : rep.samples) out.csv << num(sample.threshold) << ',' << num(sample.count) << "\n";
    if (thue_morse) {
      out.csv << "# counting bounds (1/2)sqrt(6x/7 + 10/7) <= N(x) <= sqrt(6x/7 + 4/7) at eigenvalue magnitudes\n";
      out.csv << "magnitude,count,lower,upper,lower_margin,upper_margin\n";
      for (const auto& row : margins)
        out.csv << num(row["magnitude"]) << ',' << num(row["count"]) << ',' << num(row["lower"]) << ','
                << num(row["upper"]) << ',' << num(row["lower_margin"]) << ',' << num(row["upper_margin"]) << "\n";
    }
    out.csv << summary.dump() << "\n";
  } else {
    json a = json::array();
    for (const auto& sample : rep.samples) a.push_back({{"threshold", jnum(sample.threshold)}, {"count", jnum(sample.count)}});
    out.doc["samples"] = std::move(a);
    out.doc["summary"] = std::move(summary);
    if (thue_morse) out.doc["bound_margins"] = std::move(margins);
  }
  return {out.finish(), true};
}

RunResult run_heat(const Session& session, const RunRequest& r) {
  const auto& m = session.model();
  HeatOptions opts;
  opts.tmin = r.tmin;
  opts.tmax = r.tmax;
  opts.points = r.points;
  HeatReport rep = heat_trace(m, opts);
  json summary = {{"depth", rep.depth},
                  {"lambda", jnum(rep.lambda)},
                  {"beta_max", jnum(rep.beta_max)},
                  {"target_slope", jnum(-m.perron().dimension / 2.0)},
                  {"fit", fit_json(rep.fit)}};
  Emitter out(session, r);
  if (out.csv_mode()) {
    out.csv << "# truncated trace of exp(t Delta) through generation " << rep.depth << " and certified tail bound\n";
    out.csv << "t,trace,tail\n";
    for (const auto& h : rep.samples) out.csv << num(h.t) << ',' << num(h.value) << ',' << num(h.tail) << "\n";
    out.csv << summary.dump() << "\n";
  } else {
    json a = json::array();
    for (const auto& h : rep.samples) a.push_back({{"t", jnum(h.t)}, {"trace", jnum(h.value)}, {"tail", jnum(h.tail)}});
    out.doc["samples"] = std::move(a);
    out.doc["summary"] = std::move(summary);
  }
  return {out.finish(), true};
}

RunResult run_strip(const Session& session, const RunRequest& r) {
  require_depth(r, 1);
  const auto& m = session.model();
  StripRun run = bratspec::run_strip(m, r.depth);
  const auto& rep = run.report;
  Emitter out(session, r);
  std::vector<const SpectralRecord*> paths;
  for (const auto& rec : run.records)
    if (rec.label == RecordLabel::path) paths.push_back(&rec);
  if (out.csv_mode()) {
    out.csv << "# coordinates in the power basis of theta^(" << (m.perron().dimension % 2 ? 1 : 2) << "/"
            << m.perron().dimension << "); companion C =";
    for (const auto& row : run.companion.c) {
      out.csv << " [";
      for (std::size_t j = 0; j < row.size(); ++j) out.csv << (j ? " " : "") << to_string(row[j]);
      out.csv << "]";
    }
    out.csv << "\n# pisot: " << (run.companion.pisot ? "yes" : "no") << ", stable norm " << num(run.companion.stable_norm)
            << ", ||P^-1|| " << num(run.companion.p_inverse_norm) << ", m " << num(rep.m) << "\n";
    out.csv << "# last row: summary,depth,max_distance,bound\n";
    out.csv << "path,generation,coords,distance\n";
    for (std::size_t i = 0; i < paths.size(); ++i)
      out.csv << path_id(m.diagram(), paths[i]->path) << ',' << paths[i]->generation << ','
              << coords_text(*paths[i]->coords) << ',' << num(rep.rows[i].distance) << "\n";
    out.csv << "summary," << rep.depth << ',' << num(rep.max_distance) << ',' << num(rep.bound) << "\n";
  } else {
    json a = json::array();
    for (std::size_t i = 0; i < paths.size(); ++i) {
      json c = json::array();
      for (const auto& q : *paths[i]->coords) c.push_back(to_string(q));
      a.push_back({{"path", path_id(m.diagram(), paths[i]->path)},
                   {"generation", paths[i]->generation},
                   {"coords", std::move(c)},
                   {"distance", jnum(rep.rows[i].distance)}});
    }
    json per_generation = json::array();
    for (double x : rep.max_by_generation) per_generation.push_back(jnum(x));
    out.doc["rows"] = std::move(a);
    out.doc["summary"] = {{"depth", rep.depth},
                          {"max_distance", jnum(rep.max_distance)},
                          {"bound", jnum(rep.bound)},
                          {"ratio", jnum(rep.ratio)},
                          {"m", jnum(rep.m)},
                          {"stable_norm", jnum(run.companion.stable_norm)},
                          {"p_inverse_norm", jnum(run.companion.p_inverse_norm)},
                          {"pisot", run.companion.pisot},
                          {"within_bound", rep.within_bound},
                          {"max_by_generation", std::move(per_generation)}};
  }
  return {out.finish(), rep.within_bound};
}

RunResult run_ck(const Session& session, const RunRequest& r) {
  require_depth(r, 3);
  CkReport rep = ck_relations_check(session.model().diagram(), r.depth);
  Emitter out(session, r);
  if (out.csv_mode()) {
    out.csv << "depth,paths_checked,passed,witness\n";
    out.csv << rep.depth << ',' << rep.paths_checked << ',' << (rep.passed ? "true" : "false") << ',' << rep.witness
            << "\n";
  } else {
    out.doc["depth"] = rep.depth;
    out.doc["paths_checked"] = rep.paths_checked;
    out.doc["passed"] = rep.passed;
    out.doc["witness"] = rep.witness;
  }
  return {out.finish(), rep.passed};
}

RunResult run_complexity(const Session& session, const RunRequest& r) {
  if (r.nmax < 1) fail(ErrorCode::invalid_argument, "complexity needs --nmax >= 1");
  if (!session.preset().rule) fail(ErrorCode::invalid_argument, "complexity needs substitution images");
  ComplexityTable t = factor_complexity(*session.preset().rule, r.nmax);
  json summary = {{"n_max", t.n_max},
                  {"prefix_length", t.prefix_length},
                  {"seed_letter", session.preset().letters[t.seed_letter]},
                  {"seed_power", t.seed_power},
                  {"nu_at_n_max", jnum(t.n_max >= 2 ? t.nu[t.n_max] : std::nan(""))}};
  Emitter out(session, r);
  if (out.csv_mode()) {
    out.csv << "n,p,nu\n";
    for (int n = 1; n <= t.n_max; ++n) out.csv << n << ',' << t.counts[n] << ',' << num(t.nu[n]) << "\n";
    out.csv << summary.dump() << "\n";
  } else {
    json a = json::array();
    for (int n = 1; n <= t.n_max; ++n) a.push_back({{"n", n}, {"p", t.counts[n]}, {"nu", jnum(t.nu[n])}});
    out.doc["rows"] = std::move(a);
    out.doc["summary"] = std::move(summary);
  }
  return {out.finish(), true};
}

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
  static const std::pair<const char*, Command> table[] = {
      {"presets", Command::presets}, {"spectrum", Command::spectrum}, {"dense", Command::dense},
      {"verify", Command::verify},   {"zeta", Command::zeta},         {"weyl", Command::weyl},
      {"heat", Command::heat},       {"strip", Command::strip},       {"ck-check", Command::ck_check},
      {"complexity", Command::complexity}};
  for (const auto& [n, c] : table)
    if (name == n) return c;
  return std::nullopt;
}

const char* command_name(Command command) {
  switch (command) {
    case Command::presets: return "presets";
    case Command::spectrum: return "spectrum";
    case Command::dense: return "dense";
    case Command::verify: return "verify";
    case Command::zeta: return "zeta";
    case Command::weyl: return "weyl";
    case Command::heat: return "heat";
    case Command::strip: return "strip";
    case Command::ck_check: return "ck-check";
    case Command::complexity: return "complexity";
  }
  return "?";
}

Session::Session(Preset preset, const SessionOptions& options) : preset_(std::move(preset)) {
  requested_ = options.backend ? *options.backend : preset_.recommended_backend();
  if (!options.backend && requested_.kind == BackendKind::approx) requested_.precision = options.precision;
  BratteliDiagram diagram = preset_.diagram();
  PerronData p = perron(diagram, requested_);
  model_ = std::make_unique<LaplacianModel>(diagram, p, WeightSystem::measure_root(options.precision),
                                            options.s ? *options.s : static_cast<double>(preset_.dimension),
                                            options.precision);
}

RunResult run_command(const Session& session, const RunRequest& request) {
  switch (request.command) {
    case Command::presets: return {presets_report(request.format), true};
    case Command::spectrum: return run_spectrum(session, request);
    case Command::dense: return run_dense(session, request);
    case Command::verify: return run_verify(session, request);
    case Command::zeta: return run_zeta(session, request);
    case Command::weyl: return run_weyl(session, request);
    case Command::heat: return run_heat(session, request);
    case Command::strip: return run_strip(session, request);
    case Command::ck_check: return run_ck(session, request);
    case Command::complexity: return run_complexity(session, request);
  }
  fail(ErrorCode::invalid_argument, "unknown command");
}

std::string presets_report(OutputFormat format) {
  if (format == OutputFormat::csv) {
    std::ostringstream os;
    os << "name,letters,matrix,dimension,symmetry_order,backend,transversal_faithful,description\n";
    for (const auto& name : preset_names()) {
      Preset p = load_preset(name);
      std::string letters;
      for (std::size_t i = 0; i < p.letters.size(); ++i) letters += (i ? " " : "") + p.letters[i];
      os << p.name << ',' << letters << ',' << matrix_text(p.matrix) << ',' << p.dimension << ',' << p.symmetry_order
         << ',' << p.backend << ',' << (p.transversal_faithful ? "true" : "false") << ",\"" << p.description << "\"\n";
    }
    return os.str();
  }
  json a = json::array();
  for (const auto& name : preset_names()) {
    Preset p = load_preset(name);
    json constants = json::object();
    for (const auto& [k, v] : p.constants) constants[k] = v;
    a.push_back({{"name", p.name},
                 {"description", p.description},
                 {"letters", p.letters},
                 {"matrix", p.matrix},
                 {"dimension", p.dimension},
                 {"symmetry_order", p.symmetry_order},
                 {"backend", p.backend},
                 {"transversal_faithful", p.transversal_faithful},
                 {"constants", std::move(constants)}});
  }
  json doc = {{"command", "presets"}, {"presets", std::move(a)}};
  return doc.dump(2) + "\n";
}

}  // namespace bratspec
