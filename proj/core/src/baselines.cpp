#include "specest/baselines.hpp"

#include <Eigen/Core>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "specest/rng.hpp"

namespace specest {

namespace {

void validate(const Graph& g, const BaselineConfig& cfg) {
  if (cfg.p < 1 || cfg.r < 1)
    throw std::invalid_argument("baseline config: need p >= 1 and r >= 1");
  if (cfg.tau_grid.empty())
    throw std::invalid_argument("baseline config: empty tau grid");
  const double bound = g.gershgorin_bound() * (1.0 + 1e-12);
  for (std::size_t i = 0; i < cfg.tau_grid.size(); ++i) {
    if (cfg.tau_grid[i] < 0.0 || cfg.tau_grid[i] > bound)
      throw std::invalid_argument("baseline config: tau outside [0, 2 d_max]");
    if (i > 0 && !(cfg.tau_grid[i] > cfg.tau_grid[i - 1]))
      throw std::invalid_argument("baseline config: tau grid not increasing");
  }
}

std::vector<double> rademacher_probe(std::size_t n, RngStream& rng) {
  std::vector<double> z(n);
  for (double& v : z) v = rng.rademacher();
  return z;
}

// y = (2 L x - b x) / b, mapping the spectrum into [-1, 1].
void scaled_matvec(const Graph& g, double b, std::span<const double> x,
                   std::span<double> y) {
  g.laplacian_matvec(x, y);
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) y[i] = (2.0 * y[i] - b * x[i]) / b;
}

SpectralCdfEstimate package(const BaselineConfig& cfg, std::string method,
                            std::span<const double> values, bool clamp) {
  SpectralCdfEstimate est;
  est.method = std::move(method);
  est.points.reserve(cfg.tau_grid.size());
  for (std::size_t i = 0; i < cfg.tau_grid.size(); ++i) {
    CdfPoint p;
    p.x = cfg.tau_grid[i];
    p.c = clamp ? std::clamp(values[i], 0.0, 1.0) : values[i];
    p.status = PointStatus::ok;
    p.moments_used = cfg.p;
    est.points.push_back(p);
  }
  return est;
}

}  // namespace

std::vector<double> jackson_coefficients(int p) {
  // Kernel denominators use p + 2 so the top coefficient stays active;
  // with p + 1 it vanishes identically and a degree-p expansion carries no
  // more information than degree p - 1.
  if (p < 1) throw std::invalid_argument("jackson_coefficients: need p >= 1");
  std::vector<double> gcoef(p + 1);
  const double denom = p + 2.0;
  const double cot = std::cos(std::numbers::pi / denom) /
                     std::sin(std::numbers::pi / denom);
  for (int j = 0; j <= p; ++j) {
    const double angle = std::numbers::pi * j / denom;
    gcoef[j] =
        ((p - j + 2.0) * std::cos(angle) + std::sin(angle) * cot) / denom;
  }
  return gcoef;
}

std::vector<double> chebyshev_probe_moments(const Graph& g,
                                            std::span<const double> z, int p) {
  const std::size_t n = g.node_count();
  if (z.size() != n)
    throw std::invalid_argument("chebyshev_probe_moments: dimension mismatch");
  const double bound = g.gershgorin_bound();
  if (!(bound > 0.0))
    throw std::invalid_argument("chebyshev_probe_moments: edgeless graph");

  std::vector<double> moments(p + 1, 0.0);
  std::vector<double> t_prev(z.begin(), z.end());
  std::vector<double> t_cur(n), scratch(n);

  double m0 = 0.0;
  for (std::size_t i = 0; i < n; ++i) m0 += z[i] * z[i];
  moments[0] = m0;
  if (p == 0) return moments;

  scaled_matvec(g, bound, z, t_cur);
  double m1 = 0.0;
  for (std::size_t i = 0; i < n; ++i) m1 += z[i] * t_cur[i];
  moments[1] = m1;

  for (int j = 2; j <= p; ++j) {
    scaled_matvec(g, bound, t_cur, scratch);
    double mj = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double next = 2.0 * scratch[i] - t_prev[i];
      t_prev[i] = t_cur[i];
      t_cur[i] = next;
      mj += z[i] * next;
    }
    moments[j] = mj;
  }
  return moments;
}

std::vector<double> kpm_moments(const Graph& g, const BaselineConfig& cfg) {
  validate(g, cfg);
  const std::size_t n = g.node_count();
  const SeedKey base(cfg.seed);
  std::vector<double> averaged(cfg.p + 1, 0.0);
  for (int probe = 0; probe < cfg.r; ++probe) {
    RngStream rng(base.derive(static_cast<std::uint64_t>(probe)));
    const std::vector<double> z = rademacher_probe(n, rng);
    const std::vector<double> m = chebyshev_probe_moments(g, z, cfg.p);
    for (int j = 0; j <= cfg.p; ++j) averaged[j] += m[j];
  }
  for (double& v : averaged) v /= cfg.r;
  return averaged;
}

std::vector<double> kpm_combine(const Graph& g, const BaselineConfig& cfg,
                                std::span<const double> moments) {
  const double bound = g.gershgorin_bound();
  const double n = static_cast<double>(g.node_count());
  const std::vector<double> damping = jackson_coefficients(cfg.p);

  std::vector<double> values;
  values.reserve(cfg.tau_grid.size());
  for (double tau : cfg.tau_grid) {
    const double scaled = std::clamp(2.0 * tau / bound - 1.0, -1.0, 1.0);
    const double theta = std::acos(scaled);
    // Chebyshev coefficients of the step 1(x <= scaled) on [-1, 1].
    double value = damping[0] * (1.0 - theta / std::numbers::pi) * moments[0];
    for (int j = 1; j <= cfg.p; ++j) {
      const double coeff =
          -2.0 * std::sin(j * theta) / (std::numbers::pi * j);
      value += damping[j] * coeff * moments[j];
    }
    values.push_back(value / n);
  }
  return values;
}

std::vector<double> kpm_cdf_raw(const Graph& g, const BaselineConfig& cfg) {
  return kpm_combine(g, cfg, kpm_moments(g, cfg));
}

SpectralCdfEstimate kpm_cdf(const Graph& g, const BaselineConfig& cfg) {
  return package(cfg, "poly", kpm_cdf_raw(g, cfg), /*clamp=*/true);
}

LanczosTridiagonal lanczos_tridiagonal(const Graph& g,
                                       std::span<const double> z, int p) {
  const std::size_t n = g.node_count();
  if (z.size() != n)
    throw std::invalid_argument("lanczos_tridiagonal: dimension mismatch");
  if (p < 1 || static_cast<std::size_t>(p) > n)
    throw std::invalid_argument("lanczos_tridiagonal: need 1 <= p <= n");

  using Eigen::VectorXd;
  Eigen::Map<const VectorXd> z_map(z.data(), n);
  Eigen::MatrixXd basis(n, p);
  basis.col(0) = z_map / z_map.norm();

  LanczosTridiagonal tri;
  tri.alpha.reserve(p);
  tri.beta.reserve(p - 1);
  const double breakdown_tol = 1e-10 * std::max(1.0, g.gershgorin_bound());

  VectorXd w(n);
  for (int j = 0; j < p; ++j) {
    g.laplacian_matvec({basis.col(j).data(), n}, {w.data(), n});
    const double alpha = w.dot(basis.col(j));
    tri.alpha.push_back(alpha);
    tri.steps = j + 1;
    if (j + 1 == p) break;

    w -= alpha * basis.col(j);
    if (j > 0) w -= tri.beta[j - 1] * basis.col(j - 1);
    // Full reorthogonalization, applied twice.
    for (int pass = 0; pass < 2; ++pass)
      for (int i = 0; i <= j; ++i) w -= w.dot(basis.col(i)) * basis.col(i);

    const double beta = w.norm();
    if (beta <= breakdown_tol) break;  // invariant subspace found
    tri.beta.push_back(beta);
    basis.col(j + 1) = w / beta;
  }
  return tri;
}

RitzQuadrature slq_probe_quadrature(const Graph& g, std::span<const double> z,
                                    int p) {
  const LanczosTridiagonal tri = lanczos_tridiagonal(g, z, p);
  const int k = tri.steps;
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(k, k);
  for (int i = 0; i < k; ++i) t(i, i) = tri.alpha[i];
  for (int i = 0; i + 1 < k; ++i) {
    t(i, i + 1) = tri.beta[i];
    t(i + 1, i) = tri.beta[i];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
  RitzQuadrature rule;
  rule.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + k);
  rule.weights.resize(k);
  for (int i = 0; i < k; ++i) {
    const double first = es.eigenvectors()(0, i);
    rule.weights[i] = first * first;
  }
  return rule;
}

std::vector<RitzQuadrature> slq_quadratures(const Graph& g,
                                            const BaselineConfig& cfg) {
  validate(g, cfg);
  if (static_cast<std::size_t>(cfg.p) > g.node_count())
    throw std::invalid_argument("slq: need p <= n");
  const SeedKey base(cfg.seed);
  std::vector<RitzQuadrature> rules;
  rules.reserve(cfg.r);
  for (int probe = 0; probe < cfg.r; ++probe) {
    RngStream rng(base.derive(static_cast<std::uint64_t>(probe)));
    const std::vector<double> z = rademacher_probe(g.node_count(), rng);
    rules.push_back(slq_probe_quadrature(g, z, cfg.p));
  }
  return rules;
}

std::vector<double> slq_combine(const BaselineConfig& cfg,
                                std::span<const RitzQuadrature> rules) {
  std::vector<double> values;
  values.reserve(cfg.tau_grid.size());
  for (double tau : cfg.tau_grid) {
    double total = 0.0;
    for (const RitzQuadrature& rule : rules)
      for (std::size_t i = 0; i < rule.values.size(); ++i)
        if (rule.values[i] <= tau) total += rule.weights[i];
    values.push_back(total / static_cast<double>(rules.size()));
  }
  return values;
}

SpectralCdfEstimate slq_cdf(const Graph& g, const BaselineConfig& cfg) {
  const std::vector<RitzQuadrature> rules = slq_quadratures(g, cfg);
  return package(cfg, "slq", slq_combine(cfg, rules), /*clamp=*/true);
}

}  // namespace specest
