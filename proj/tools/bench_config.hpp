#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace specest::cli {

struct BenchGraphSpec {
  std::string kind;  // grid2d | er | ba
  std::size_t n = 0;
  double mean_degree = 0.0;
  std::size_t rows = 0, cols = 0;
  std::size_t attach = 0;  // ba only; derived from mean_degree when absent

  std::string label() const;
};

struct BenchMethodSpec {
  std::string name;                // forests | poly | slq
  std::vector<int> sweep;          // s values (forests) or p values (poly/slq)
  std::string sweep_parameter() const { return name == "forests" ? "s" : "p"; }
};

/// Flat key = value file; `graph` and `method` lines repeat, everything
/// else is scalar. See the README for the grammar.
struct BenchConfig {
  std::vector<BenchGraphSpec> graphs;
  std::vector<BenchMethodSpec> methods;
  int repetitions = 5;
  int graph_realizations = 1;
  double alpha = 100.0;
  int n_lambda = 15;
  int l = 3;
  int r = 5;
  double target_error = 0.02;
  std::size_t oracle_cap = 5000;
  std::uint64_t seed = 0;
  bool isotonic = false;
};

BenchConfig parse_bench_config(const std::string& text,
                               const std::string& name = "<config>");
BenchConfig read_bench_config(const std::filesystem::path& path);

}  // namespace specest::cli
