#include "specest/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace specest {

std::string_view to_string(PointStatus status) {
  switch (status) {
    case PointStatus::fitted: return "fitted";
    case PointStatus::denoised: return "denoised";
    case PointStatus::fallback: return "fallback";
    case PointStatus::degenerate: return "degenerate";
    case PointStatus::exact: return "exact";
    case PointStatus::ok: return "ok";
  }
  return "unknown";
}

namespace {

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

struct PointFit {
  double c;
  PointStatus status;
  int moments_used;
};

PointFit fit_point(const MomentVector& full, const ConfidenceEllipsoid* ell,
                   const MaxEntOptions& maxent_options) {
  const double a = full.a, b = full.b;
  const double upper = std::min(0.5, b);
  constexpr double kFitMargin = 1e-8;

  // Inadmissible estimates are repaired by the smallest move in the
  // confidence metric; a plain uniform blend can shift the vector by
  // several standard errors.
  const std::span<const double> weights =
      ell ? std::span<const double>(ell->variance) : std::span<const double>();

  PointStatus status = PointStatus::fitted;
  MomentVector mv = full;
  if (!check_admissible(mv)) {
    mv = project_to_admissible(mv, weights, kFitMargin);
    status = PointStatus::denoised;
  }

  // Try the full order first, then degrade one moment at a time.
  for (int level = mv.order(); level >= 1; --level) {
    MomentVector truncated = mv;
    truncated.m.resize(level);
    if (!check_admissible(truncated))
      truncated = project_to_admissible(
          truncated, weights.empty() ? weights : weights.subspan(0, level),
          kFitMargin);

    ConfidenceEllipsoid truncated_ell;
    const ConfidenceEllipsoid* ell_ptr = nullptr;
    if (ell) {
      truncated_ell.center.assign(ell->center.begin(),
                                  ell->center.begin() + level);
      truncated_ell.variance.assign(ell->variance.begin(),
                                    ell->variance.begin() + level);
      ell_ptr = &truncated_ell;
    }

    try {
      const MaxEntModel model = fit_maxent(truncated, ell_ptr, maxent_options);
      const double below = upper > a ? interval_mass(model, a, upper) : 0.0;
      return {clamp01(1.0 - below),
              level == full.order() ? status : PointStatus::fallback, level};
    } catch (const MaxEntIterationCapError&) {
      continue;
    }
  }

  // Two-point extremal measure matching the first moment: atoms at a and b
  // with masses (b - m1) and (m1 - a) over (b - a); the atom at b carries
  // the above-1/2 mass.
  const double m1 = std::clamp(mv.m[0], a, b);
  return {clamp01((m1 - a) / (b - a)), PointStatus::fallback, 0};
}

}  // namespace

SpectralCdfEstimate reconstruct_cdf(const MomentTable& table,
                                    double max_degree,
                                    const ReconstructOptions& options) {
  SpectralCdfEstimate est;
  est.method = table.exact ? "exact-moments" : "forests";
  est.points.reserve(table.q_values.size());

  for (std::size_t iq = 0; iq < table.q_values.size(); ++iq) {
    const double q = table.q_values[iq];
    CdfPoint point;
    point.x = q;

    if (!(max_degree > 0.0)) {
      // Edgeless graph: the support collapses to the single point x = 1,
      // all eigenvalues are zero, and every q is above them.
      point.c = 1.0;
      point.status = PointStatus::degenerate;
      point.moments_used = 0;
      est.points.push_back(point);
      continue;
    }

    MomentVector mv;
    mv.a = q / (q + 2.0 * max_degree);
    mv.b = 1.0;
    mv.m.resize(table.moment_order);
    for (int k = 1; k <= table.moment_order; ++k) mv.m[k - 1] = table.h(iq, k);

    ConfidenceEllipsoid ell;
    bool use_ell = !table.var_bound.empty();
    for (int k = 1; use_ell && k <= table.moment_order; ++k)
      if (!(table.var(iq, k) > 0.0)) use_ell = false;
    if (use_ell) {
      ell.center = mv.m;
      ell.variance.resize(table.moment_order);
      for (int k = 1; k <= table.moment_order; ++k)
        ell.variance[k - 1] = table.var(iq, k);
    }

    const PointFit fit =
        fit_point(mv, use_ell ? &ell : nullptr, options.maxent);
    point.c = fit.c;
    point.status = fit.status;
    point.moments_used = fit.moments_used;
    est.points.push_back(point);
  }

  if (options.isotonic) apply_isotonic(est);
  return est;
}

double cdf_error(const SpectralCdfEstimate& est, const Spectrum& spec) {
  if (est.points.empty())
    throw std::invalid_argument("cdf_error: empty estimate");
  double total = 0.0;
  for (const CdfPoint& p : est.points)
    total += std::abs(p.c - exact_cdf(spec, p.x));
  return total / static_cast<double>(est.points.size());
}

double cdf_max_error(const SpectralCdfEstimate& est, const Spectrum& spec) {
  if (est.points.empty())
    throw std::invalid_argument("cdf_max_error: empty estimate");
  double worst = 0.0;
  for (const CdfPoint& p : est.points)
    worst = std::max(worst, std::abs(p.c - exact_cdf(spec, p.x)));
  return worst;
}

void apply_isotonic(SpectralCdfEstimate& est) {
  // Pool adjacent violators with equal weights.
  struct Block {
    double sum;
    int count;
  };
  std::vector<Block> blocks;
  blocks.reserve(est.points.size());
  for (const CdfPoint& p : est.points) {
    blocks.push_back({p.c, 1});
    while (blocks.size() > 1) {
      const Block& last = blocks[blocks.size() - 1];
      const Block& prev = blocks[blocks.size() - 2];
      if (prev.sum / prev.count <= last.sum / last.count) break;
      Block merged{prev.sum + last.sum, prev.count + last.count};
      blocks.pop_back();
      blocks.back() = merged;
    }
  }
  std::size_t idx = 0;
  for (const Block& blk : blocks) {
    const double value = blk.sum / blk.count;
    for (int c = 0; c < blk.count; ++c) est.points[idx++].c = value;
  }
}

void write_csv(const SpectralCdfEstimate& est, std::ostream& out) {
  out << "x,c,status\n";
  char buf[96];
  for (const CdfPoint& p : est.points) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,", p.x, p.c);
    out << buf << to_string(p.status) << '\n';
  }
}

std::string to_json(const SpectralCdfEstimate& est) {
  nlohmann::json j;
  j["method"] = est.method;
  if (!est.config_echo.empty())
    j["config"] = nlohmann::json::parse(est.config_echo, nullptr, false);
  auto pts = nlohmann::json::array();
  for (const CdfPoint& p : est.points)
    pts.push_back({{"x", p.x},
                   {"c", p.c},
                   {"status", std::string(to_string(p.status))},
                   {"moments_used", p.moments_used}});
  j["points"] = pts;
  return j.dump(2);
}

}  // namespace specest
