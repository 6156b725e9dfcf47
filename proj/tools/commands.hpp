#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sl2r/json_io.hpp"
#include "sl2r/rep_core.hpp"

namespace sl2r::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kNotDecomposable = 2, kVerificationFailed = 3 };

enum class Format { Json, Csv, Text };

struct LabelArgs {
  std::string cls = "dplus";
  std::optional<int> two_j;
  std::optional<double> j_re, j_im;
  std::string eps = "0";
  std::string window;  // "a:b", empty for the default window
  int margin = 2;
};

struct RunConfig {
  std::string command;
  LabelArgs label;
  std::string gamma = "1/2";
  double tol = 0.0;  // 0 means per-check defaults; SL2R_TOL overrides
  Format format = Format::Json;
  std::uint64_t seed = 0;
  bool timing = false;
};

// Resolved label and window; throws Error on invalid input.
RepLabel resolve_label(const LabelArgs& args);
WeightWindow resolve_window(const RepLabel& label, const LabelArgs& args);
WeightWindow parse_window(const std::string& text, int margin);

// Weights in the default window: 30 for discrete, 31 for continuous labels.
int default_count(const RepLabel& label);

// Envelope with command, config echo, version and seed around a payload.
Json envelope(const RunConfig& cfg, Json payload);

// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sl2r::cli
