#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "specest/graph.hpp"
#include "specest/reconstruct.hpp"

namespace specest {

struct BaselineConfig {
  int p = 10;  // polynomial / Lanczos order
  int r = 5;   // random probe vectors
  std::vector<double> tau_grid;
  std::uint64_t seed = 0;
};

/// Jackson damping coefficients g_0..g_p for a degree-p Chebyshev
/// expansion.
std::vector<double> jackson_coefficients(int p);

/// z^T T_j(Lt) z for j = 0..p via the three-term recurrence, where Lt is
/// the Laplacian rescaled to spectrum within [-1, 1] by the Gershgorin
/// bound. Cost O(p |E|).
std::vector<double> chebyshev_probe_moments(const Graph& g,
                                            std::span<const double> z, int p);

/// Hutchinson trace estimates of Chebyshev moments averaged over r
/// Rademacher probes (estimation phase of the polynomial method).
std::vector<double> kpm_moments(const Graph& g, const BaselineConfig& cfg);

/// Per-threshold combination of averaged moments with Jackson-damped step
/// expansion coefficients; unclamped values (may ring outside [0, 1]).
std::vector<double> kpm_combine(const Graph& g, const BaselineConfig& cfg,
                                std::span<const double> moments);

/// Polynomial (Jackson-Chebyshev) CDF estimate, clamped to [0, 1].
SpectralCdfEstimate kpm_cdf(const Graph& g, const BaselineConfig& cfg);
/// Same values before clamping, for overshoot diagnostics.
std::vector<double> kpm_cdf_raw(const Graph& g, const BaselineConfig& cfg);

/// Lanczos tridiagonal built from probe z with full reorthogonalization;
/// truncated early on breakdown.
struct LanczosTridiagonal {
  std::vector<double> alpha;  // diagonal
  std::vector<double> beta;   // off-diagonal (size steps - 1)
  int steps = 0;
};

LanczosTridiagonal lanczos_tridiagonal(const Graph& g,
                                       std::span<const double> z, int p);

/// Ritz values and weights (squared first eigenvector components) of one
/// probe's tridiagonal; the per-probe quadrature rule.
struct RitzQuadrature {
  std::vector<double> values;
  std::vector<double> weights;
};

RitzQuadrature slq_probe_quadrature(const Graph& g, std::span<const double> z,
                                    int p);
std::vector<RitzQuadrature> slq_quadratures(const Graph& g,
                                            const BaselineConfig& cfg);
std::vector<double> slq_combine(const BaselineConfig& cfg,
                                std::span<const RitzQuadrature> rules);

/// Stochastic Lanczos quadrature CDF estimate; exactly nondecreasing in
/// tau by construction.
SpectralCdfEstimate slq_cdf(const Graph& g, const BaselineConfig& cfg);

}  // namespace specest
