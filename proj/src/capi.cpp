#include "bratspec/bratspec.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "dense.hpp"
#include "error.hpp"
#include "report.hpp"

using namespace bratspec;

struct bsp_model {
  Session session;
  std::string backend_text;
};

struct bsp_spectrum {
  std::vector<SpectralRecord> records;
  std::vector<std::string> ids;
  std::vector<std::string> exact;
};

namespace {

thread_local std::string last_error;

bsp_status set_error(bsp_status status, const std::string& message) {
  last_error = message;
  return status;
}

template <class F>
bsp_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return BSP_OK;
  } catch (const Error& e) {
    return set_error(static_cast<bsp_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(BSP_E_LIMIT, "out of memory");
  } catch (const std::exception& e) {
    return set_error(BSP_E_INTERNAL, e.what());
  } catch (...) {
    return set_error(BSP_E_INTERNAL, "unknown failure");
  }
}

SessionOptions session_options(const bsp_model_options* o) {
  SessionOptions out;
  if (!o) return out;
  if (o->backend) out.backend = Backend::parse(o->backend);
  if (o->has_s) out.s = o->s;
  if (o->precision > 0) out.precision = o->precision;
  return out;
}

bsp_status make_model(Preset preset, const bsp_model_options* options, bsp_model** out) {
  if (!out) return set_error(BSP_E_INVALID_ARGUMENT, "null output handle");
  *out = nullptr;
  return guarded([&] {
    Session session(std::move(preset), session_options(options));
    std::string backend = session.model().backend().to_string();
    *out = new bsp_model{std::move(session), std::move(backend)};
  });
}

char* copy_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

OutputFormat parse_format(const char* format) {
  if (!format || std::strcmp(format, "csv") == 0) return OutputFormat::csv;
  if (std::strcmp(format, "json") == 0) return OutputFormat::json;
  fail(ErrorCode::invalid_argument, std::string("unknown format '") + format + "'");
}

}  // namespace

extern "C" {

void bsp_model_options_init(bsp_model_options* options) {
  if (options) *options = bsp_model_options{nullptr, 0, 0.0, 0};
}

bsp_status bsp_model_from_preset(const char* name, const bsp_model_options* options, bsp_model** out) {
  if (out) *out = nullptr;
  if (!name) return set_error(BSP_E_INVALID_ARGUMENT, "null preset name");
  Preset preset;
  bsp_status st = guarded([&] { preset = load_preset(name); });
  return st == BSP_OK ? make_model(std::move(preset), options, out) : st;
}

bsp_status bsp_model_from_matrix_file(const char* path, const bsp_model_options* options, bsp_model** out) {
  if (out) *out = nullptr;
  if (!path) return set_error(BSP_E_INVALID_ARGUMENT, "null path");
  Preset preset;
  bsp_status st = guarded([&] { preset = load_matrix_file(path); });
  return st == BSP_OK ? make_model(std::move(preset), options, out) : st;
}

bsp_status bsp_model_from_json(const char* text, const bsp_model_options* options, bsp_model** out) {
  if (out) *out = nullptr;
  if (!text) return set_error(BSP_E_INVALID_ARGUMENT, "null text");
  Preset preset;
  bsp_status st = guarded([&] { preset = parse_matrix_json(text); });
  return st == BSP_OK ? make_model(std::move(preset), options, out) : st;
}

void bsp_model_free(bsp_model* model) { delete model; }

const char* bsp_model_name(const bsp_model* model) { return model ? model->session.preset().name.c_str() : ""; }
const char* bsp_model_backend(const bsp_model* model) { return model ? model->backend_text.c_str() : ""; }
double bsp_model_s(const bsp_model* model) { return model ? model->session.model().s() : 0.0; }
int bsp_model_dimension(const bsp_model* model) { return model ? model->session.preset().dimension : 0; }
int bsp_model_vertices(const bsp_model* model) {
  return model ? model->session.model().diagram().vertex_count() : 0;
}
int bsp_model_fell_back(const bsp_model* model) { return model && model->session.model().fell_back() ? 1 : 0; }

bsp_status bsp_spectrum_compute(const bsp_model* model, int max_generation, int threads, bsp_spectrum** out) {
  if (!model || !out) return set_error(BSP_E_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    SpectrumOptions opts;
    opts.threads = threads < 1 ? 1 : threads;
    const auto& m = model->session.model();
    auto spec = std::make_unique<bsp_spectrum>();
    spec->records = full_spectrum(m, max_generation, opts);
    for (const auto& r : spec->records) {
      spec->ids.push_back(path_id(m.diagram(), r.path));
      spec->exact.push_back(r.eigenvalue.exact_string());
    }
    *out = spec.release();
  });
}

size_t bsp_spectrum_size(const bsp_spectrum* spectrum) { return spectrum ? spectrum->records.size() : 0; }

bsp_status bsp_spectrum_get(const bsp_spectrum* spectrum, size_t index, bsp_record* out) {
  if (!spectrum || !out) return set_error(BSP_E_INVALID_ARGUMENT, "null argument");
  if (index >= spectrum->records.size()) return set_error(BSP_E_INVALID_ARGUMENT, "index out of range");
  const auto& r = spectrum->records[index];
  out->label = static_cast<bsp_label>(static_cast<int>(r.label));
  out->generation = r.generation;
  out->eigenvalue = r.eigenvalue.to_double();
  out->multiplicity = r.multiplicity;
  return BSP_OK;
}

const char* bsp_spectrum_path_id(const bsp_spectrum* spectrum, size_t index) {
  return spectrum && index < spectrum->ids.size() ? spectrum->ids[index].c_str() : nullptr;
}

const char* bsp_spectrum_exact(const bsp_spectrum* spectrum, size_t index) {
  return spectrum && index < spectrum->exact.size() ? spectrum->exact[index].c_str() : nullptr;
}

long bsp_spectrum_total_multiplicity(const bsp_spectrum* spectrum) {
  return spectrum ? total_multiplicity(spectrum->records) : 0;
}

void bsp_spectrum_free(bsp_spectrum* spectrum) { delete spectrum; }

bsp_status bsp_verify(const bsp_model* model, int n, double tolerance, int* passed, double* max_deviation) {
  if (!model) return set_error(BSP_E_INVALID_ARGUMENT, "null model");
  return guarded([&] {
    VerifyOptions opts;
    if (tolerance > 0) opts.tolerance = tolerance;
    VerifyReport rep = verify_spectrum(model->session.model(), n, opts);
    if (passed) *passed = rep.passed ? 1 : 0;
    if (max_deviation) *max_deviation = rep.max_deviation;
  });
}

void bsp_run_options_init(bsp_run_options* options) {
  if (!options) return;
  RunRequest d;
  *options = bsp_run_options{"spectrum", "csv", d.depth, d.threads, d.cap, d.tolerance, d.grid_lo, d.grid_hi,
                             d.grid_steps, d.tmin, d.tmax, d.points, d.nmax};
}

bsp_status bsp_run(const bsp_model* model, const bsp_run_options* options, char** text, int* verdict) {
  if (!model || !options || !text) return set_error(BSP_E_INVALID_ARGUMENT, "null argument");
  *text = nullptr;
  return guarded([&] {
    auto command = parse_command(options->command ? options->command : "");
    if (!command)
      fail(ErrorCode::invalid_argument, std::string("unknown command '") + (options->command ? options->command : "") + "'");
    RunRequest r;
    r.command = *command;
    r.format = parse_format(options->format);
    r.depth = options->depth;
    r.threads = options->threads;
    r.cap = options->cap;
    r.tolerance = options->tolerance;
    r.grid_lo = options->grid_lo;
    r.grid_hi = options->grid_hi;
    r.grid_steps = options->grid_steps;
    r.tmin = options->tmin;
    r.tmax = options->tmax;
    r.points = options->points;
    r.nmax = options->nmax;
    RunResult result = run_command(model->session, r);
    *text = copy_string(result.text);
    if (verdict) *verdict = result.passed ? 1 : 0;
  });
}

bsp_status bsp_presets_report(const char* format, char** text) {
  if (!text) return set_error(BSP_E_INVALID_ARGUMENT, "null argument");
  *text = nullptr;
  return guarded([&] { *text = copy_string(presets_report(parse_format(format))); });
}

void bsp_string_free(char* text) { std::free(text); }

const char* bsp_status_name(bsp_status status) {
  switch (status) {
    case BSP_OK: return "ok";
    case BSP_E_INVALID_ARGUMENT: return "invalid argument";
    case BSP_E_PARSE: return "parse error";
    case BSP_E_NOT_PRIMITIVE: return "matrix not primitive";
    case BSP_E_HYPOTHESIS: return "hypothesis not satisfied";
    case BSP_E_BACKEND_MISMATCH: return "backend mismatch";
    case BSP_E_UNSUPPORTED: return "unsupported";
    case BSP_E_LIMIT: return "limit exceeded";
    case BSP_E_NUMERIC: return "numeric failure";
    case BSP_E_CALIBRATION: return "calibration failure";
    case BSP_E_IO: return "i/o error";
    case BSP_E_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* bsp_last_error(void) { return last_error.c_str(); }

const char* bsp_version(void) { return "0.1.0"; }

}
