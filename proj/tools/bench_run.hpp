#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bench_config.hpp"

namespace specest::cli {

struct BenchRow {
  std::string family;
  std::size_t n = 0;
  std::string method;
  int param = 0;
  bool have_error = false;
  double mean_error = 0.0;
  double stderr_error = 0.0;
  double mean_normtime = 0.0;
  double stderr_normtime = 0.0;
  double mean_wall = 0.0;
  double stderr_wall = 0.0;
};

struct BenchTargetRow {
  std::string family;
  std::size_t n = 0;
  std::string method;
  double target_error = 0.0;
  // NaN when the sweep never reaches the target.
  double normtime_to_target = 0.0;
  double walltime_to_target = 0.0;
};

struct BenchOutput {
  std::vector<BenchRow> rows;
  std::vector<BenchTargetRow> targets;
  std::vector<std::string> warnings;
};

/// Runs the full sweep serially (per-run wall measurements stay
/// uncontended); seeds are derived per cell so a parallel executor would
/// produce identical error columns. Writes <prefix>.csv,
/// <prefix>_target.csv and one <prefix>_<family>.svg per graph family.
BenchOutput run_bench(const BenchConfig& cfg, const std::string& out_prefix);

/// Log-log interpolation of the time at which an error sweep crosses
/// `target`; points are (time, error) with time increasing. NaN when the
/// target is never reached.
double time_to_target(const std::vector<std::pair<double, double>>& curve,
                      double target);

}  // namespace specest::cli
