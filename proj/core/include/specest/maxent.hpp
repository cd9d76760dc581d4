#pragma once

#include <Eigen/Core>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "specest/quadrature.hpp"

namespace specest {

/// Raw power moments m_k = E[x^k] for k = 1..l (m_0 = 1 implicit) of a
/// probability measure supported on [a, b].
struct MomentVector {
  std::vector<double> m;
  double a = 0.0;
  double b = 1.0;

  int order() const { return static_cast<int>(m.size()); }
};

/// Axis-aligned confidence ellipsoid around estimated moments:
/// sum_i (m'_i - center_i)^2 / variance_i <= 1.
struct ConfidenceEllipsoid {
  std::vector<double> center;
  std::vector<double> variance;
};

/// Exponential-family density q_beta(x) = exp(beta . v(x) - psi(beta)) on
/// [a, b], with v(x) = (x, x^2, ..., x^l).
struct MaxEntModel {
  std::vector<double> beta;
  double a = 0.0;
  double b = 1.0;
  double psi = 0.0;
  GaussLegendre quad;  // reference rule reused for all integrals
};

struct LogPartitionResult {
  double psi;
  std::vector<double> moments;  // E_beta[v(x)]
  Eigen::MatrixXd covariance;   // Cov_beta[v(x)]
};

class MaxEntIterationCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MaxEntOptions {
  int quad_nodes = 64;
  double gradient_tol = 1e-9;
  int max_iterations = 500;
};

/// Smallest eigenvalue over the pair of localizing Hankel matrices of the
/// truncated moment problem on [a, b]; nonnegative (up to tolerance) iff
/// the moments are realizable by a measure on [a, b].
double admissibility_margin(const MomentVector& mv);

/// True iff admissibility_margin(mv) >= -1e-12.
bool check_admissible(const MomentVector& mv);

/// Identity on admissible input; otherwise moves m toward the uniform
/// moments u on [a, b] along the segment (1-t) m + t u, returning the
/// smallest t (bisection to 1e-6) with admissibility margin >= 1e-10.
MomentVector denoise_moments(const MomentVector& mv);

/// Minimal-move repair: walks the moments just inside the margin-delta
/// admissible set along the weight-scaled margin subgradient, so the
/// change is small in the diag(weight) norm (pass the moment variances to
/// project in the confidence-ellipsoid metric; empty = unweighted).
/// Identity when the margin already clears target_margin.
MomentVector project_to_admissible(const MomentVector& mv,
                                   std::span<const double> weight,
                                   double target_margin);

/// psi(beta) = log int_a^b exp(beta . v(x)) dx by Gauss-Legendre with
/// `nodes` points (max-shifted for overflow safety), together with the
/// model moments and their covariance under q_beta.
LogPartitionResult log_partition(std::span<const double> beta, double a,
                                 double b, int nodes);

/// Damped-Newton minimization of psi(beta) - beta . m. Stops when the
/// iterate's moments fall inside `ell` (checked from the initial beta = 0
/// on), or without an ellipsoid when the gradient norm drops below
/// options.gradient_tol; throws MaxEntIterationCapError at the iteration
/// cap. Input must be admissible (denoise first).
MaxEntModel fit_maxent(const MomentVector& mv,
                       const ConfidenceEllipsoid* ell = nullptr,
                       const MaxEntOptions& options = {});

/// int_c^d q_beta(x) dx with the model's node count; requires
/// a <= c <= d <= b.
double interval_mass(const MaxEntModel& model, double c, double d);

std::string to_json(const MaxEntModel& model);

}  // namespace specest
