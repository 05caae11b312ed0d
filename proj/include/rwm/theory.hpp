#pragma once

// Estimates of the constants in the control-error and value bounds, and
// empirical checks of those bounds.

#include <optional>
#include <utility>
#include <vector>

#include "rwm/baseline.hpp"
#include "rwm/envs.hpp"
#include "rwm/worldmodel.hpp"

namespace rwm {

struct SystemConstants {
  double L = 0.0;        // max sigma_max(dF/da)
  double alpha = 0.0;    // min sigma_min(dF/da)
  double epsilon = 0.0;  // max |F(z, a0) - z_next| on nominal transitions
  double P = 0.0;        // perturbation bound
  double eta = 0.0;      // analytic reflex step size
  double gamma = 0.0;    // 1 - eta alpha^2 + eta L^2
  std::optional<double> H_M;
};

struct JacobianBounds {
  double L = 0.0;
  double alpha = 0.0;
  /// alpha == 0: the model has no control authority in some direction.
  bool degenerate = false;
};

struct StateAction {
  Vec z;
  Vec a0;
};

/// Singular values of dF/da at every sample.
JacobianBounds estimate_jacobian_bounds(const ForwardModel& F, const std::vector<StateAction>& samples);

/// Max over n_samples nominal (p = 0) transitions of |F(z, a0) - z_next|,
/// visiting states by rolling out `policy` from env resets.
double estimate_model_error(const ForwardModel& F, Environment& env, const BaselinePolicy& policy, int n_samples,
                            Rng& rng);

double contraction_factor(double eta, double alpha, double L);

/// gamma^t e0 + sqrt(eps^2 + P^2 / alpha^2). Throws if alpha == 0.
double error_bound(double t, double e0_norm, const SystemConstants& c);
/// sqrt(eps^2 + P^2 / alpha^2).
double steady_state_bound(const SystemConstants& c);

/// Least-squares slope of log(values[i]) against i; entries <= floor are
/// skipped. Returns the per-step log rate.
double fit_log_decay_rate(const std::vector<double>& values, double floor = 1e-300);

struct RecurrenceReport {
  double fraction_satisfied = 0.0;  // steps with |e(t+1)| <= gamma |e(t)| + eps + P/alpha
  double fraction_satisfied_empirical = 0.0;  // same with gamma_empirical
  double ratio_median = 0.0;  // of |e(t+1)| / |e(t)|
  double ratio_p10 = 0.0;
  double ratio_p90 = 0.0;
  double fitted_rate = 0.0;      // exp(slope of log|e|) over the decay window
  double gamma_empirical = 0.0;  // supplied by the caller, or fitted_rate
  double plateau = 0.0;          // median |e| over the final quarter
  double fixed_point = 0.0;      // (eps + P/alpha) / (1 - gamma_empirical)
};

/// `error_norms` is |e(t)| for consecutive steps. `gamma_empirical` is used
/// for the fixed point when given; otherwise the fitted rate is.
RecurrenceReport verify_recurrence(const std::vector<double>& error_norms, const SystemConstants& c,
                                   std::optional<double> gamma_empirical = std::nullopt);

/// Synthetic quadratic value V(z) = V* - 1/2 (z - z*)^T H (z - z*).
struct QuadraticValue {
  Mat H;
  Vec z_star;
  double v_star = 0.0;

  double operator()(const Vec& z) const;
  double gap(const Vec& z) const { return v_star - (*this)(z); }
};

struct ValueBoundReport {
  double H_M = 0.0;
  double bound = 0.0;
  double max_gap = 0.0;
  double median_gap = 0.0;
  double fraction_within = 0.0;
  double slack = 0.0;  // bound - max_gap
  bool pass = false;   // fraction_within >= 0.95
};

/// Gaps are evaluated on `deviations`, i.e. z - z* for each step.
ValueBoundReport value_bound_check(const Mat& H, const std::vector<Vec>& deviations, const SystemConstants& c);

/// Keys L, alpha, epsilon, P, eta, gamma, steady_state_error_measured,
/// steady_state_bound, value_gap_measured, value_bound; null when absent.
struct BoundsReport {
  SystemConstants constants;
  std::optional<double> steady_state_error_measured;
  std::optional<double> steady_state_bound;
  std::optional<double> value_gap_measured;
  std::optional<double> value_bound;
};
nlohmann::json bounds_to_json(const BoundsReport& r);

}  // namespace rwm
