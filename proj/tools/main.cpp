#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "bench_run.hpp"
#include "cli_runner.hpp"

namespace {

using namespace specest;
using namespace specest::cli;

std::uint64_t resolve_seed(const CLI::Option* seed_option, std::uint64_t seed) {
  if (seed_option->count() > 0) return seed;
  if (const char* env = std::getenv("SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw std::runtime_error("SEED environment variable is not a number");
    }
  }
  return seed;
}

void write_graph(const Graph& g, const std::string& out_path) {
  if (out_path == "-") {
    write_edgelist(g, std::cout);
  } else {
    write_edgelist(g, std::filesystem::path(out_path));
    std::cerr << "wrote " << out_path << " (" << g.node_count() << " nodes, "
              << g.edge_count() << " edges)\n";
  }
}

struct EstimateArgs {
  std::string graph_path;
  std::string method = "forests";
  double alpha = 100.0;
  int n_lambda = 15;
  int l = 3;
  int s = 10;
  int p = 10;
  int r = 5;
  std::uint64_t seed = 0;
  std::string out_prefix = "estimate";
  std::string moments_out;
  bool isotonic = false;
  bool exact_moments = false;
  bool no_error = false;
  std::size_t oracle_cap = 5000;
};

int cmd_estimate(const EstimateArgs& args) {
  const Graph g = read_edgelist(std::filesystem::path(args.graph_path));
  if (g.node_count() == 0) throw std::runtime_error("graph is empty");

  ReconstructOptions rec_options;
  rec_options.isotonic = args.isotonic;

  std::optional<Spectrum> spectrum;
  auto need_spectrum = [&]() -> const Spectrum& {
    if (!spectrum) {
      if (g.node_count() > args.oracle_cap)
        throw std::runtime_error(
            "graph exceeds the oracle size cap (n = " +
            std::to_string(g.node_count()) + " > " +
            std::to_string(args.oracle_cap) + ")");
      spectrum = exact_spectrum(g);
    }
    return *spectrum;
  };

  nlohmann::json config{{"alpha", args.alpha}, {"n_lambda", args.n_lambda},
                        {"seed", args.seed},   {"isotonic", args.isotonic},
                        {"l", args.l},         {"s", args.s},
                        {"p", args.p},         {"r", args.r}};

  MethodResult result;
  if (args.method == "forests") {
    EstimatorConfig cfg;
    cfg.alpha = args.alpha;
    cfg.n_lambda = args.n_lambda;
    cfg.l = args.l;
    cfg.s = args.s;
    cfg.seed = args.seed;
    result = run_forests(g, cfg, rec_options);
  } else if (args.method == "poly" || args.method == "slq") {
    BaselineConfig cfg;
    cfg.p = args.p;
    cfg.r = args.r;
    cfg.seed = args.seed;
    cfg.tau_grid =
        make_q_grid(g.mean_degree(), g.max_degree(), args.alpha, args.n_lambda);
    result = args.method == "poly" ? run_poly(g, cfg) : run_slq(g, cfg);
  } else if (args.method == "exact") {
    const auto grid =
        make_q_grid(g.mean_degree(), g.max_degree(), args.alpha, args.n_lambda);
    result = args.exact_moments
                 ? run_exact_moments(need_spectrum(), grid, args.l,
                                     g.max_degree(), rec_options)
                 : run_exact_cdf(need_spectrum(), grid);
  } else {
    throw std::runtime_error("unknown method '" + args.method + "'");
  }
  result.estimate.config_echo = config.dump();

  const double matvec = measure_matvec_seconds(g, args.seed);

  nlohmann::json report;
  report["method"] = result.estimate.method;
  report["config"] = config;
  report["graph"] = {{"path", args.graph_path},
                     {"n", g.node_count()},
                     {"edges", g.edge_count()},
                     {"mean_degree", g.mean_degree()},
                     {"max_degree", g.max_degree()}};
  report["estimation_seconds"] = result.timings.estimation_seconds;
  report["reconstruction_seconds"] = result.timings.reconstruction_seconds;
  report["wall_seconds"] = result.timings.estimation_seconds +
                           result.timings.reconstruction_seconds;
  report["matvec_seconds"] = matvec;
  report["normalized_time"] = result.timings.estimation_seconds / matvec;
  if (!args.no_error && g.node_count() <= args.oracle_cap) {
    const Spectrum& spec = need_spectrum();
    report["error"] = cdf_error(result.estimate, spec);
    report["max_error"] = cdf_max_error(result.estimate, spec);
  }
  report["points"] = result.estimate.points.size();

  {
    std::ofstream csv(args.out_prefix + ".csv");
    if (!csv)
      throw std::runtime_error("cannot write " + args.out_prefix + ".csv");
    write_csv(result.estimate, csv);
  }
  {
    std::ofstream json_out(args.out_prefix + ".json");
    if (!json_out)
      throw std::runtime_error("cannot write " + args.out_prefix + ".json");
    json_out << report.dump(2) << "\n";
  }
  if (!args.moments_out.empty()) {
    if (!result.table)
      throw std::runtime_error("--moments-out requires a moment-based method");
    std::ofstream moments(args.moments_out);
    if (!moments) throw std::runtime_error("cannot write " + args.moments_out);
    write_csv(*result.table, moments);
  }

  std::cout << report["method"].get<std::string>() << ": "
            << result.estimate.points.size() << " points";
  if (report.contains("error"))
    std::cout << ", mae " << report["error"].get<double>();
  std::cout << ", estimation " << result.timings.estimation_seconds
            << " s (x" << report["normalized_time"].get<double>()
            << " matvec)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Spectral CDF estimation for graph Laplacians: random-forest moment "
      "sampling with maxent reconstruction, plus Chebyshev and Lanczos "
      "baselines"};
  app.require_subcommand(1);

  // generate ------------------------------------------------------------
  auto* generate = app.add_subcommand("generate", "Write a graph edge list");
  generate->require_subcommand(1);

  struct {
    std::size_t rows = 5, cols = 5, n = 1000, attach = 0;
    double mean_degree = 20.0;
    std::uint64_t seed = 0;
    std::string out = "-";
  } gen;

  auto* grid_cmd = generate->add_subcommand("grid2d", "Unit-weight lattice");
  grid_cmd->add_option("--rows", gen.rows, "Lattice rows")->required();
  grid_cmd->add_option("--cols", gen.cols, "Lattice columns")->required();
  grid_cmd->add_option("-o,--out", gen.out, "Output path ('-' for stdout)");

  auto* er_cmd = generate->add_subcommand("er", "Erdos-Renyi G(n, p)");
  er_cmd->add_option("--n", gen.n, "Node count")->required();
  er_cmd->add_option("--mean-degree", gen.mean_degree, "Target mean degree")
      ->required();
  auto* er_seed = er_cmd->add_option("--seed", gen.seed, "RNG seed");
  er_cmd->add_option("-o,--out", gen.out, "Output path ('-' for stdout)");

  auto* ba_cmd = generate->add_subcommand("ba", "Preferential attachment");
  ba_cmd->add_option("--n", gen.n, "Node count")->required();
  auto* ba_mean =
      ba_cmd->add_option("--mean-degree", gen.mean_degree,
                         "Target mean degree (attach = mean degree / 2)");
  auto* ba_attach =
      ba_cmd->add_option("--attach", gen.attach, "Edges per new node");
  ba_mean->excludes(ba_attach);
  auto* ba_seed = ba_cmd->add_option("--seed", gen.seed, "RNG seed");
  ba_cmd->add_option("-o,--out", gen.out, "Output path ('-' for stdout)");

  // estimate ------------------------------------------------------------
  EstimateArgs est;
  auto* estimate =
      app.add_subcommand("estimate", "Estimate the spectral CDF of a graph");
  estimate->add_option("--graph", est.graph_path, "Edge-list file")
      ->required()
      ->check(CLI::ExistingFile);
  estimate
      ->add_option("--method", est.method,
                   "forests | poly | slq | exact")
      ->check(CLI::IsMember({"forests", "poly", "slq", "exact"}));
  estimate->add_option("--alpha", est.alpha, "q_min divisor");
  estimate->add_option("--n-lambda", est.n_lambda, "Grid size");
  estimate->add_option("--l", est.l, "Moment order (forests/exact)");
  estimate->add_option("--s", est.s, "Monte Carlo replicates (forests)");
  estimate->add_option("--p", est.p, "Polynomial/Lanczos order (poly/slq)");
  estimate->add_option("--r", est.r, "Probe vectors (poly/slq)");
  auto* est_seed = estimate->add_option("--seed", est.seed, "RNG seed");
  estimate->add_option("-o,--out", est.out_prefix,
                       "Output prefix for .csv and .json");
  estimate->add_option("--moments-out", est.moments_out,
                       "Also dump the moment table CSV here");
  estimate->add_flag("--isotonic", est.isotonic,
                     "Monotonize the estimate across the grid");
  estimate->add_flag("--exact-moments", est.exact_moments,
                     "With --method exact: run reconstruction on exact "
                     "moments (the accuracy floor)");
  estimate->add_flag("--no-error", est.no_error,
                     "Skip the oracle error computation");
  estimate->add_option("--oracle-cap", est.oracle_cap,
                       "Max n for dense oracle work");

  // bench ---------------------------------------------------------------
  std::string bench_config_path, bench_out = "bench";
  auto* bench = app.add_subcommand(
      "bench", "Error-versus-time sweeps against the oracle");
  bench->add_option("--config", bench_config_path, "Bench config file")
      ->required()
      ->check(CLI::ExistingFile);
  bench->add_option("-o,--out", bench_out, "Output prefix");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (grid_cmd->parsed()) {
      write_graph(grid2d_graph(gen.rows, gen.cols), gen.out);
    } else if (er_cmd->parsed()) {
      const std::uint64_t seed = resolve_seed(er_seed, gen.seed);
      write_graph(erdos_renyi_graph(gen.n, gen.mean_degree, SeedKey(seed)),
                  gen.out);
    } else if (ba_cmd->parsed()) {
      const std::uint64_t seed = resolve_seed(ba_seed, gen.seed);
      std::size_t attach = gen.attach;
      if (ba_attach->count() == 0) {
        if (ba_mean->count() == 0)
          throw std::runtime_error("ba: need --mean-degree or --attach");
        attach = static_cast<std::size_t>(std::llround(gen.mean_degree / 2.0));
      }
      write_graph(barabasi_albert_graph(gen.n, attach, SeedKey(seed)),
                  gen.out);
    } else if (estimate->parsed()) {
      est.seed = resolve_seed(est_seed, est.seed);
      return cmd_estimate(est);
    } else if (bench->parsed()) {
      const BenchConfig cfg = read_bench_config(bench_config_path);
      run_bench(cfg, bench_out);
      std::cerr << "wrote " << bench_out << ".csv, " << bench_out
                << "_target.csv and per-family SVG plots\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
