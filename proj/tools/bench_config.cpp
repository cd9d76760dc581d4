#include "bench_config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace specest::cli {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_tokens(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

[[noreturn]] void fail(const std::string& name, std::size_t line,
                       const std::string& message) {
  throw std::runtime_error(name + ":" + std::to_string(line) + ": " + message);
}

BenchGraphSpec parse_graph(const std::string& value, const std::string& name,
                           std::size_t line) {
  const auto tokens = split_tokens(value);
  if (tokens.empty()) fail(name, line, "graph: missing kind");
  BenchGraphSpec spec;
  spec.kind = tokens[0];
  if (spec.kind != "grid2d" && spec.kind != "er" && spec.kind != "ba")
    fail(name, line, "graph: unknown kind '" + spec.kind + "'");
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    const auto eq = tokens[i].find('=');
    if (eq == std::string::npos)
      fail(name, line, "graph: expected key=value, got '" + tokens[i] + "'");
    const std::string key = tokens[i].substr(0, eq);
    const std::string val = tokens[i].substr(eq + 1);
    try {
      if (key == "n")
        spec.n = std::stoull(val);
      else if (key == "mean_degree")
        spec.mean_degree = std::stod(val);
      else if (key == "rows")
        spec.rows = std::stoull(val);
      else if (key == "cols")
        spec.cols = std::stoull(val);
      else if (key == "attach")
        spec.attach = std::stoull(val);
      else
        fail(name, line, "graph: unknown key '" + key + "'");
    } catch (const std::invalid_argument&) {
      fail(name, line, "graph: bad number in '" + tokens[i] + "'");
    }
  }
  if (spec.kind == "grid2d") {
    if (spec.rows == 0 || spec.cols == 0)
      fail(name, line, "graph: grid2d needs rows= and cols=");
    spec.n = spec.rows * spec.cols;
  } else {
    if (spec.n == 0) fail(name, line, "graph: needs n=");
    if (spec.kind == "ba" && spec.attach == 0) {
      if (spec.mean_degree <= 0.0)
        fail(name, line, "graph: ba needs attach= or mean_degree=");
      spec.attach =
          static_cast<std::size_t>(std::llround(spec.mean_degree / 2.0));
    }
    if (spec.kind == "er" && spec.mean_degree <= 0.0)
      fail(name, line, "graph: er needs mean_degree=");
  }
  return spec;
}

BenchMethodSpec parse_method(const std::string& value, const std::string& name,
                             std::size_t line) {
  const auto tokens = split_tokens(value);
  if (tokens.empty()) fail(name, line, "method: missing name");
  BenchMethodSpec spec;
  spec.name = tokens[0];
  if (spec.name != "forests" && spec.name != "poly" && spec.name != "slq")
    fail(name, line, "method: unknown method '" + spec.name + "'");
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    const auto eq = tokens[i].find('=');
    if (eq == std::string::npos)
      fail(name, line, "method: expected key=value, got '" + tokens[i] + "'");
    const std::string key = tokens[i].substr(0, eq);
    if (key != spec.sweep_parameter())
      fail(name, line, "method " + spec.name + ": unknown key '" + key + "'");
    std::istringstream ls(tokens[i].substr(eq + 1));
    std::string item;
    while (std::getline(ls, item, ',')) {
      try {
        spec.sweep.push_back(std::stoi(item));
      } catch (const std::invalid_argument&) {
        fail(name, line, "method: bad sweep value '" + item + "'");
      }
    }
  }
  if (spec.sweep.empty())
    fail(name, line,
         "method " + spec.name + ": needs " + spec.sweep_parameter() + "=...");
  return spec;
}

}  // namespace

std::string BenchGraphSpec::label() const {
  std::ostringstream os;
  if (kind == "grid2d") {
    os << "grid2d_" << rows << "x" << cols;
  } else {
    os << kind << "_n" << n << "_d";
    if (kind == "ba" && mean_degree <= 0.0)
      os << 2 * attach;
    else
      os << mean_degree;
  }
  return os.str();
}

BenchConfig parse_bench_config(const std::string& text,
                               const std::string& name) {
  BenchConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(name, line_no, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    try {
      if (key == "graph")
        cfg.graphs.push_back(parse_graph(value, name, line_no));
      else if (key == "method")
        cfg.methods.push_back(parse_method(value, name, line_no));
      else if (key == "repetitions")
        cfg.repetitions = std::stoi(value);
      else if (key == "graph_realizations")
        cfg.graph_realizations = std::stoi(value);
      else if (key == "alpha")
        cfg.alpha = std::stod(value);
      else if (key == "n_lambda")
        cfg.n_lambda = std::stoi(value);
      else if (key == "l")
        cfg.l = std::stoi(value);
      else if (key == "r")
        cfg.r = std::stoi(value);
      else if (key == "target_error")
        cfg.target_error = std::stod(value);
      else if (key == "oracle_cap")
        cfg.oracle_cap = std::stoull(value);
      else if (key == "seed")
        cfg.seed = std::stoull(value);
      else if (key == "isotonic")
        cfg.isotonic = std::stoi(value) != 0;
      else
        fail(name, line_no, "unknown key '" + key + "'");
    } catch (const std::invalid_argument&) {
      fail(name, line_no, "bad value for '" + key + "'");
    }
  }
  if (cfg.graphs.empty()) throw std::runtime_error(name + ": no graph lines");
  if (cfg.methods.empty()) throw std::runtime_error(name + ": no method lines");
  if (cfg.repetitions < 1 || cfg.graph_realizations < 1)
    throw std::runtime_error(name + ": repetitions and realizations >= 1");
  return cfg;
}

BenchConfig read_bench_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return parse_bench_config(os.str(), path.string());
}

}  // namespace specest::cli
