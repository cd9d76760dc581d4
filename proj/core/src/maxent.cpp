#include "specest/maxent.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

namespace specest {

namespace {

double min_eigenvalue(const Eigen::MatrixXd& m) {
  if (m.rows() == 0) return std::numeric_limits<double>::infinity();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m,
                                                    Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

std::vector<double> uniform_moments(double a, double b, int l) {
  std::vector<double> u(l);
  double pa = a, pb = b;
  for (int k = 1; k <= l; ++k) {
    pa *= a;
    pb *= b;
    u[k - 1] = (pb - pa) / ((k + 1) * (b - a));
  }
  return u;
}

// Localizing matrices of the truncated [a, b] moment problem, built from
// generalized values vals[0..l] (vals[0] = 1 for genuine moments; a unit
// vector instead yields the derivative with respect to that moment).
void build_hankel_pair(std::span<const double> vals, double a, double b,
                       int l, Eigen::MatrixXd& ha, Eigen::MatrixXd& hb) {
  auto at = [&](int j) { return vals[static_cast<std::size_t>(j)]; };
  if (l % 2 == 1) {
    // Odd order 2k+1: both localizing matrices are (k+1) x (k+1).
    const int k = (l - 1) / 2;
    ha.resize(k + 1, k + 1);
    hb.resize(k + 1, k + 1);
    for (int i = 0; i <= k; ++i) {
      for (int j = 0; j <= k; ++j) {
        ha(i, j) = at(i + j + 1) - a * at(i + j);
        hb(i, j) = b * at(i + j) - at(i + j + 1);
      }
    }
  } else {
    // Even order 2k: plain Hankel plus the [a,b]-localizing matrix.
    const int k = l / 2;
    ha.resize(k + 1, k + 1);
    hb.resize(std::max(k, 0), std::max(k, 0));
    for (int i = 0; i <= k; ++i)
      for (int j = 0; j <= k; ++j) ha(i, j) = at(i + j);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        hb(i, j) = (a + b) * at(i + j + 1) - a * b * at(i + j) - at(i + j + 2);
  }
}

void validate_moment_vector(const MomentVector& mv) {
  if (mv.order() < 1)
    throw std::invalid_argument("moment vector: need l >= 1");
  if (!(mv.a < mv.b)) throw std::invalid_argument("moment vector: need a < b");
  for (double v : mv.m)
    if (!std::isfinite(v))
      throw std::invalid_argument("moment vector: non-finite moment");
}

std::vector<double> padded_moments(const MomentVector& mv) {
  std::vector<double> vals(mv.m.size() + 1);
  vals[0] = 1.0;
  std::copy(mv.m.begin(), mv.m.end(), vals.begin() + 1);
  return vals;
}

}  // namespace

double admissibility_margin(const MomentVector& mv) {
  validate_moment_vector(mv);
  Eigen::MatrixXd ha, hb;
  build_hankel_pair(padded_moments(mv), mv.a, mv.b, mv.order(), ha, hb);
  return std::min(min_eigenvalue(ha), min_eigenvalue(hb));
}

bool check_admissible(const MomentVector& mv) {
  return admissibility_margin(mv) >= -1e-12;
}

MomentVector denoise_moments(const MomentVector& mv) {
  if (check_admissible(mv)) return mv;
  const int l = mv.order();
  const std::vector<double> u = uniform_moments(mv.a, mv.b, l);
  constexpr double kTargetMargin = 1e-10;

  auto blend = [&](double t) {
    MomentVector out = mv;
    for (int k = 0; k < l; ++k) out.m[k] = (1.0 - t) * mv.m[k] + t * u[k];
    return out;
  };

  // The margin is concave along the segment and the uniform endpoint is
  // strictly interior, so bisection finds the smallest feasible t.
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    if (admissibility_margin(blend(mid)) >= kTargetMargin)
      hi = mid;
    else
      lo = mid;
  }
  return blend(hi);
}

MomentVector project_to_admissible(const MomentVector& mv,
                                   std::span<const double> weight,
                                   double target_margin) {
  validate_moment_vector(mv);
  const int l = mv.order();
  if (!weight.empty() && static_cast<int>(weight.size()) != l)
    throw std::invalid_argument("project_to_admissible: weight size mismatch");
  if (admissibility_margin(mv) >= target_margin) return mv;

  auto weighted_dist = [&](const MomentVector& x) {
    double total = 0.0;
    for (int t = 0; t < l; ++t) {
      const double d = x.m[t] - mv.m[t];
      total += weight.empty() ? d * d : d * d / weight[t];
    }
    return total;
  };

  // Candidate 1: subgradient ascent on the smallest Hankel eigenvalue,
  // stepping along the weight-scaled gradient so the moments move little
  // in the confidence-ellipsoid norm. The margin is concave, so the
  // linearized step undershoots; the overshoot factor compensates.
  bool walk_ok = false;
  MomentVector current = mv;
  for (int iter = 0; iter < 80; ++iter) {
    Eigen::MatrixXd ha, hb;
    build_hankel_pair(padded_moments(current), current.a, current.b, l, ha,
                      hb);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ea(ha);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eb(hb);
    const double margin_a = ea.eigenvalues().minCoeff();
    const double margin_b =
        hb.rows() > 0 ? eb.eigenvalues().minCoeff()
                      : std::numeric_limits<double>::infinity();
    const double margin = std::min(margin_a, margin_b);
    if (margin >= target_margin) {
      walk_ok = true;
      break;
    }

    const bool use_a = margin_a <= margin_b;
    const auto& solver = use_a ? ea : eb;
    const Eigen::VectorXd u = solver.eigenvectors().col(0);

    std::vector<double> unit(l + 1, 0.0);
    Eigen::VectorXd gradient(l);
    for (int t = 1; t <= l; ++t) {
      unit[t] = 1.0;
      Eigen::MatrixXd da, db;
      build_hankel_pair(unit, current.a, current.b, l, da, db);
      gradient(t - 1) = u.dot((use_a ? da : db) * u);
      unit[t] = 0.0;
    }

    Eigen::VectorXd direction = gradient;
    if (!weight.empty())
      for (int t = 0; t < l; ++t) direction(t) *= weight[t];
    const double response = gradient.dot(direction);
    if (!(response > 0.0)) break;
    const double step = 1.5 * (target_margin - margin) / response;
    for (int t = 0; t < l; ++t) current.m[t] += step * direction(t);
  }

  // Candidate 2: the uniform-moment blend at the requested margin. Keep
  // whichever moved less.
  const std::vector<double> u = uniform_moments(mv.a, mv.b, l);
  auto blend = [&](double t) {
    MomentVector out = mv;
    for (int k = 0; k < l; ++k) out.m[k] = (1.0 - t) * mv.m[k] + t * u[k];
    return out;
  };
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    if (admissibility_margin(blend(mid)) >= target_margin)
      hi = mid;
    else
      lo = mid;
  }
  const MomentVector blended = blend(hi);
  if (walk_ok && weighted_dist(current) <= weighted_dist(blended))
    return current;
  return blended;
}

LogPartitionResult log_partition(std::span<const double> beta, double a,
                                 double b, int nodes) {
  const int l = static_cast<int>(beta.size());
  if (nodes < l + 1)
    throw std::invalid_argument("log_partition: need nodes >= l + 1");
  if (!(a < b)) throw std::invalid_argument("log_partition: need a < b");
  for (double v : beta)
    if (!std::isfinite(v))
      throw std::invalid_argument("log_partition: non-finite beta");

  const GaussLegendre rule = gauss_legendre(nodes);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);

  // Exponents beta . v(x_j) and the running max for the stable log-sum-exp.
  std::vector<double> x(nodes), expo(nodes);
  std::vector<std::vector<double>> powers(nodes, std::vector<double>(l));
  double shift = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < nodes; ++j) {
    x[j] = mid + half * rule.nodes[j];
    double p = 1.0, e = 0.0;
    for (int k = 0; k < l; ++k) {
      p *= x[j];
      powers[j][k] = p;
      e += beta[k] * p;
    }
    expo[j] = e;
    shift = std::max(shift, e);
  }

  double z = 0.0;
  std::vector<double> weighted(nodes);
  for (int j = 0; j < nodes; ++j) {
    weighted[j] = rule.weights[j] * half * std::exp(expo[j] - shift);
    z += weighted[j];
  }

  LogPartitionResult result;
  result.psi = shift + std::log(z);
  result.moments.assign(l, 0.0);
  Eigen::MatrixXd second = Eigen::MatrixXd::Zero(l, l);
  for (int j = 0; j < nodes; ++j) {
    const double p = weighted[j] / z;  // probability mass at node j
    for (int k = 0; k < l; ++k) result.moments[k] += p * powers[j][k];
    for (int r = 0; r < l; ++r)
      for (int c = r; c < l; ++c) second(r, c) += p * powers[j][r] * powers[j][c];
  }
  result.covariance.resize(l, l);
  for (int r = 0; r < l; ++r)
    for (int c = 0; c < l; ++c) {
      const double e2 = c >= r ? second(r, c) : second(c, r);
      result.covariance(r, c) = e2 - result.moments[r] * result.moments[c];
    }
  return result;
}

namespace {

bool inside_ellipsoid(const ConfidenceEllipsoid& ell,
                      std::span<const double> moments) {
  double total = 0.0;
  for (std::size_t i = 0; i < ell.center.size(); ++i) {
    const double d = moments[i] - ell.center[i];
    total += d * d / ell.variance[i];
  }
  return total <= 1.0;
}

}  // namespace

MaxEntModel fit_maxent(const MomentVector& mv, const ConfidenceEllipsoid* ell,
                       const MaxEntOptions& options) {
  if (!check_admissible(mv))
    throw std::invalid_argument("fit_maxent: moments not admissible");
  const int l = mv.order();
  if (ell && (static_cast<int>(ell->center.size()) != l ||
              static_cast<int>(ell->variance.size()) != l))
    throw std::invalid_argument("fit_maxent: ellipsoid dimension mismatch");

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(l);
  Eigen::Map<const Eigen::VectorXd> target(mv.m.data(), l);

  auto evaluate = [&](const Eigen::VectorXd& candidate) {
    return log_partition(std::span<const double>(candidate.data(), l), mv.a,
                         mv.b, options.quad_nodes);
  };

  LogPartitionResult lp = evaluate(beta);
  double objective = lp.psi - beta.dot(target);

  auto finish = [&](double psi) {
    MaxEntModel model;
    model.beta.assign(beta.data(), beta.data() + l);
    model.a = mv.a;
    model.b = mv.b;
    model.psi = psi;
    model.quad = gauss_legendre(options.quad_nodes);
    return model;
  };

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    if (ell && inside_ellipsoid(*ell, lp.moments)) return finish(lp.psi);
    Eigen::Map<const Eigen::VectorXd> model_m(lp.moments.data(), l);
    const Eigen::VectorXd gradient = model_m - target;
    if (!ell && gradient.norm() <= options.gradient_tol) return finish(lp.psi);

    Eigen::VectorXd step = -lp.covariance.ldlt().solve(gradient);
    if (!step.allFinite()) step = -gradient;

    // Backtracking: halve on objective increase or overflow. The slack
    // covers quadrature rounding so the final quadratic-convergence step
    // is not rejected at the double-precision floor.
    const double slack = 1e-14 * (1.0 + std::abs(objective));
    double scale = 1.0;
    bool accepted = false;
    while (scale >= 0x1p-30) {
      const Eigen::VectorXd candidate = beta + scale * step;
      LogPartitionResult lp_try;
      bool ok = true;
      try {
        lp_try = evaluate(candidate);
      } catch (const std::invalid_argument&) {
        ok = false;
      }
      if (ok && std::isfinite(lp_try.psi)) {
        const double obj_try = lp_try.psi - candidate.dot(target);
        if (obj_try <= objective + slack) {
          beta = candidate;
          lp = std::move(lp_try);
          objective = obj_try;
          accepted = true;
          break;
        }
      }
      scale *= 0.5;
    }
    if (!accepted) break;  // no descent at the minimum step: treat as capped
  }
  throw MaxEntIterationCapError(
      "fit_maxent: iteration cap reached (ill-conditioned moment problem)");
}

double interval_mass(const MaxEntModel& model, double c, double d) {
  const double tol = 1e-12 * (1.0 + std::abs(model.b - model.a));
  if (!(c <= d) || c < model.a - tol || d > model.b + tol)
    throw std::invalid_argument("interval_mass: interval outside support");
  if (d - c <= 0.0) return 0.0;

  const int l = static_cast<int>(model.beta.size());
  const double half = 0.5 * (d - c);
  const double mid = 0.5 * (d + c);
  double total = 0.0;
  for (std::size_t j = 0; j < model.quad.count(); ++j) {
    const double x = mid + half * model.quad.nodes[j];
    double p = 1.0, e = 0.0;
    for (int k = 0; k < l; ++k) {
      p *= x;
      e += model.beta[k] * p;
    }
    total += model.quad.weights[j] * half * std::exp(e - model.psi);
  }
  return total;
}

std::string to_json(const MaxEntModel& model) {
  nlohmann::json j;
  j["beta"] = model.beta;
  j["a"] = model.a;
  j["b"] = model.b;
  j["psi"] = model.psi;
  return j.dump();
}

}  // namespace specest
