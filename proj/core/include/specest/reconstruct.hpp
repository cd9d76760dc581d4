#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "specest/maxent.hpp"
#include "specest/moments.hpp"
#include "specest/oracle.hpp"

namespace specest {

enum class PointStatus {
  fitted,      // maxent fit on the full moment vector
  denoised,    // moments projected into the admissible set first
  fallback,    // fit degraded to fewer moments (or the two-point center)
  degenerate,  // no usable spectral range (edgeless graph)
  exact,       // oracle CDF value
  ok,          // baseline estimators
};

std::string_view to_string(PointStatus status);

struct CdfPoint {
  double x = 0.0;  // grid abscissa: q for the forest method, tau for baselines
  double c = 0.0;
  PointStatus status = PointStatus::fitted;
  int moments_used = 0;  // 0 for the two-point center fallback
};

/// Pointwise spectral-CDF estimate over a grid, with per-point fit
/// diagnostics. Points are strictly increasing in x and every c is in
/// [0, 1].
struct SpectralCdfEstimate {
  std::vector<CdfPoint> points;
  std::string method;
  std::string config_echo;  // JSON fragment describing the producing run
};

struct ReconstructOptions {
  bool isotonic = false;  // pool-adjacent-violators post-processing
  MaxEntOptions maxent;
};

/// Fixed-q assembly: for each grid q the transformed measure lives on
/// [q / (q + 2 max_degree), 1]; its first l moments are the table row. The
/// maxent density fitted to those moments (denoised when inadmissible,
/// degraded to fewer moments when the fit stalls) is integrated to produce
/// c(q) = 1 - mass([a, 1/2]), the fraction of eigenvalues at or below q.
SpectralCdfEstimate reconstruct_cdf(const MomentTable& table,
                                    double max_degree,
                                    const ReconstructOptions& options = {});

/// Mean absolute error against the exact CDF over the estimate's grid.
double cdf_error(const SpectralCdfEstimate& est, const Spectrum& spec);
/// Largest pointwise error over the grid.
double cdf_max_error(const SpectralCdfEstimate& est, const Spectrum& spec);

/// Pool-adjacent-violators pass enforcing c nondecreasing in x.
void apply_isotonic(SpectralCdfEstimate& est);

/// CSV with columns x, c, status.
void write_csv(const SpectralCdfEstimate& est, std::ostream& out);
std::string to_json(const SpectralCdfEstimate& est);

}  // namespace specest
