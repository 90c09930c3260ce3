#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "presets.hpp"

namespace bratspec {

enum class OutputFormat { csv, json };
enum class Command { presets, spectrum, dense, verify, zeta, weyl, heat, strip, ck_check, complexity };

std::optional<Command> parse_command(std::string_view name);
const char* command_name(Command command);

struct SessionOptions {
  std::optional<Backend> backend;  // default: the preset recommendation
  std::optional<double> s;         // default: d
  long precision = kDefaultPrecision;
};

// A preset or matrix file bound to a backend and an exponent s.
class Session {
 public:
  Session(Preset preset, const SessionOptions& options = {});

  const Preset& preset() const { return preset_; }
  const LaplacianModel& model() const { return *model_; }
  const Backend& requested_backend() const { return requested_; }

 private:
  Preset preset_;
  Backend requested_;
  std::unique_ptr<LaplacianModel> model_;
};

struct RunRequest {
  Command command = Command::spectrum;
  OutputFormat format = OutputFormat::csv;
  int depth = 0;
  int threads = 1;
  std::size_t cap = 0;  // 0: command default
  double tolerance = 1e-8;
  double grid_lo = 0;
  double grid_hi = 0;
  int grid_steps = 40;
  double tmin = 1e-6;
  double tmax = 1e-2;
  int points = 25;
  int nmax = 0;
};

struct RunResult {
  std::string text;
  bool passed = true;  // false: verification failure
};

// depth: spectrum/dense/verify use the dense generation n (records through n - 1);
// zeta, weyl, strip and ck-check use it as the largest path length.
RunResult run_command(const Session& session, const RunRequest& request);
std::string presets_report(OutputFormat format);

}  // namespace bratspec
