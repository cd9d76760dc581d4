#pragma once

#include <optional>
#include <string>

#include "specest/baselines.hpp"
#include "specest/graph.hpp"
#include "specest/moments.hpp"
#include "specest/oracle.hpp"
#include "specest/reconstruct.hpp"

namespace specest::cli {

struct RunTimings {
  double estimation_seconds = 0.0;
  double reconstruction_seconds = 0.0;
};

struct MethodResult {
  SpectralCdfEstimate estimate;
  RunTimings timings;
  std::optional<MomentTable> table;  // moment-based methods only
};

/// Forest pipeline: moment-table estimation timed as the estimation phase,
/// maxent assembly as the reconstruction phase.
MethodResult run_forests(const Graph& g, const EstimatorConfig& cfg,
                         const ReconstructOptions& options);

/// Jackson-Chebyshev baseline; probe moments are the estimation phase.
MethodResult run_poly(const Graph& g, const BaselineConfig& cfg);

/// Stochastic Lanczos baseline; Lanczos probes are the estimation phase.
MethodResult run_slq(const Graph& g, const BaselineConfig& cfg);

/// Oracle CDF sampled on the grid.
MethodResult run_exact_cdf(const Spectrum& spec,
                           const std::vector<double>& grid);

/// Reconstruction fed with exact moments (the accuracy floor of the
/// forest method).
MethodResult run_exact_moments(const Spectrum& spec,
                               const std::vector<double>& grid, int l,
                               double max_degree,
                               const ReconstructOptions& options);

/// Median wall time of a sparse Laplacian matvec on this graph instance,
/// over 20 timed batches of warm runs.
double measure_matvec_seconds(const Graph& g, std::uint64_t seed);

}  // namespace specest::cli
