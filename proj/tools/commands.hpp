#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace cmaj::cli {

enum class Format { Csv, Json };

struct Options {
  std::string model = "gaussian";
  std::optional<std::size_t> n;
  std::optional<double> q;
  std::size_t samples = 1;
  std::uint64_t seed = 1;
  std::size_t order_s = 8;
  std::size_t order_t = 8;
  unsigned threads = 1;
  Format format = Format::Json;
  bool timing = false;

  // transform
  std::string increments;  // comma-separated rationals; sampled when empty
  std::string kind = "theorem1";
  std::size_t u = 1;

  // verify
  std::string suite = "all";

  // experiment
  std::string experiment = "stable-index";
  std::string alphas = "0.5,1,1.5,2";
};

// Each command writes its output to `out` and returns the process exit code:
// 0 on success (for verify: every gate passed), 1 when a gate failed.
// Argument and model errors are thrown as cmaj::Error.
int cmd_simulate(const Options& o, std::ostream& out);
int cmd_poisson(const Options& o, std::ostream& out);
int cmd_gf(const Options& o, std::ostream& out);
int cmd_transform(const Options& o, std::ostream& out);
int cmd_verify(const Options& o, std::ostream& out);
int cmd_experiment(const Options& o, std::ostream& out);

// RFC 4180 quoting for one CSV field.
std::string csv_field(const std::string& s);

}  // namespace cmaj::cli
