#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bratspec/bratspec.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitError = 2;

int report(bsp_status status) {
  std::cerr << "bratspec: " << bsp_status_name(status) << ": " << bsp_last_error() << "\n";
  return status == BSP_E_CALIBRATION ? kExitFailed : kExitError;
}

// "lo:hi:steps"
bool parse_grid(const std::string& text, bsp_run_options& o) {
  auto a = text.find(':');
  auto b = a == std::string::npos ? a : text.find(':', a + 1);
  if (b == std::string::npos) return false;
  try {
    std::size_t used = 0;
    std::string lo = text.substr(0, a), hi = text.substr(a + 1, b - a - 1), steps = text.substr(b + 1);
    o.grid_lo = std::stod(lo, &used);
    if (used != lo.size()) return false;
    o.grid_hi = std::stod(hi, &used);
    if (used != hi.size()) return false;
    o.grid_steps = std::stoi(steps, &used);
    if (used != steps.size()) return false;
  } catch (const std::exception&) {
    return false;
  }
  return o.grid_lo > 0 && o.grid_hi > o.grid_lo && o.grid_steps >= 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra of Laplacians on Bratteli path spaces of substitution tilings"};
  app.set_version_flag("--version", bsp_version());

  bsp_run_options run;
  bsp_run_options_init(&run);
  std::string command, preset, matrix_file, backend, format = "csv", output, grid;
  double s = 0;
  long precision = 0;

  app.add_option("command", command,
                 "presets | spectrum | dense | verify | zeta | weyl | heat | strip | ck-check | complexity")
      ->required();
  auto* preset_opt = app.add_option("--preset", preset, "built-in example");
  auto* file_opt = app.add_option("--matrix-file", matrix_file, "JSON description of a diagram");
  preset_opt->excludes(file_opt);
  file_opt->excludes(preset_opt);
  app.add_option("--depth", run.depth,
                 "spectrum/dense/verify: generation n; zeta/weyl/strip/ck-check: largest path length");
  auto* s_opt = app.add_option("--s", s, "exponent s (default: d)");
  app.add_option("--backend", backend, "rational | quadratic:D | approx:BITS");
  app.add_option("--precision", precision, "approx precision in bits")->envname("BRATSPEC_PRECISION")->check(
      CLI::PositiveNumber);
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--output", output, "write to a file instead of stdout");
  app.add_option("--threads", run.threads, "worker threads for spectrum")->check(CLI::Range(1, 256));
  app.add_option("--cap", run.cap, "dense dimension or path cap");
  app.add_option("--tolerance", run.tolerance, "verify tolerance")->check(CLI::PositiveNumber);
  app.add_option("--grid", grid, "weyl thresholds lo:hi:steps");
  app.add_option("--tmin", run.tmin, "smallest heat time")->check(CLI::PositiveNumber);
  app.add_option("--tmax", run.tmax, "largest heat time")->check(CLI::PositiveNumber);
  app.add_option("--points", run.points, "heat sample count")->check(CLI::Range(2, 100000));
  app.add_option("--nmax", run.nmax, "largest factor length for complexity");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }
  if (!grid.empty() && !parse_grid(grid, run)) {
    std::cerr << "bratspec: --grid expects lo:hi:steps with 0 < lo < hi and steps >= 2\n";
    return kExitError;
  }
  run.command = command.c_str();
  run.format = format.c_str();

  char* text = nullptr;
  int verdict = 1;
  if (command == "presets") {
    bsp_status st = bsp_presets_report(format.c_str(), &text);
    if (st != BSP_OK) return report(st);
  } else {
    if (preset.empty() && matrix_file.empty()) {
      std::cerr << "bratspec: one of --preset or --matrix-file is required\n";
      return kExitError;
    }
    bsp_model_options mo;
    bsp_model_options_init(&mo);
    if (!backend.empty()) mo.backend = backend.c_str();
    if (s_opt->count()) {
      mo.has_s = 1;
      mo.s = s;
    }
    mo.precision = precision;
    bsp_model* model = nullptr;
    bsp_status st = preset.empty() ? bsp_model_from_matrix_file(matrix_file.c_str(), &mo, &model)
                                   : bsp_model_from_preset(preset.c_str(), &mo, &model);
    if (st != BSP_OK) return report(st);
    st = bsp_run(model, &run, &text, &verdict);
    bsp_model_free(model);
    if (st != BSP_OK) return report(st);
  }

  if (output.empty()) {
    std::fputs(text, stdout);
  } else {
    std::ofstream out(output, std::ios::binary);
    out << text;
    if (!out) {
      bsp_string_free(text);
      std::cerr << "bratspec: cannot write " << output << "\n";
      return kExitError;
    }
  }
  bsp_string_free(text);
  return verdict ? kExitOk : kExitFailed;
}
