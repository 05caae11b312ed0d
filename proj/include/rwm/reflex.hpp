#pragma once

// Reflex controller pi_c. It is trained online with the inverted gradient
// -d|e|^2/da0 computed through the frozen forward model, so that realized
// transitions move toward the model's predictions. Also the analytic law
// a_c = -eta (dF/da)^T e.

#include <cstdint>
#include <deque>
#include <vector>

#include "rwm/baseline.hpp"
#include "rwm/diffnet.hpp"
#include "rwm/envs.hpp"
#include "rwm/worldmodel.hpp"

namespace rwm {

struct ReflexParams {
  std::vector<int> hidden{32, 32};
  Activation activation = Activation::kRelu;
  double learning_rate = 3e-4;
  int horizon = 3;
};

struct UpdateDiagnostics {
  double error_sq = 0.0;   // |e|^2 of the newest transition
  double loss = 0.0;       // summed loss over the steps used
  double grad_norm = 0.0;  // |g| of the newest step
  int steps_used = 0;      // 1 for a single-step update
  /// sum_i <g_i, +d loss/d a0_i>; never positive.
  double inversion_check = 0.0;
};

/// Running counters used to check that no-adaptation runs never touch a
/// reflex controller.
struct ReflexCounters {
  long constructed = 0;
  long updates = 0;
};
ReflexCounters reflex_counters();

class ReflexController {
 public:
  ReflexController(int latent_dim, int action_dim, const ReflexParams& params, std::uint64_t seed);
  /// Wraps an existing network; its output layer is left as is.
  ReflexController(Network network, const ReflexParams& params);

  int horizon() const { return params_.horizon; }
  const Network& network() const { return network_; }
  const OptimizerState& optimizer() const { return optimizer_; }
  std::size_t window_size() const { return window_.size(); }

  /// pi_c(z).
  Vec correction(const Vec& z) const { return network_(z); }

  /// One Adam step whose parameter gradient is grad_params(pi_c at z, g).
  /// pi_c(z) moves in the direction -g to first order.
  void reflex_update(const Vec& z, const Vec& g);

  /// Appends (z, a0, z_next) to the window, dropping the oldest triple
  /// beyond the horizon.
  void observe(const Vec& z, const Vec& a0, const Vec& z_next);
  /// Empties the window, e.g. at an episode reset where consecutive triples
  /// stop chaining.
  void clear_window() { window_.clear(); }

  /// Horizon update over the full window; falls back to a single-step
  /// update on the newest triple while the window is not yet full.
  UpdateDiagnostics update(const ForwardModel& F);
  UpdateDiagnostics horizon_update(const ForwardModel& F);
  UpdateDiagnostics single_step_update(const ForwardModel& F);

 private:
  struct Triple {
    Vec z;
    Vec a0;
    Vec z_next;
  };

  ReflexParams params_;
  Network network_;
  OptimizerState optimizer_;
  std::deque<Triple> window_;
};

struct ActionComposition {
  Vec a0;
  Vec ac;     // after clipping so that a0 + ac lies inside the bounds
  Vec total;  // a0 + ac, before perturbation
  bool clipped = false;
};

/// a_total = pi0(z) + pi_c(z). `ctrl` may be null (a_c = 0).
ActionComposition total_action(const BaselinePolicy& pi0, const ReflexController* ctrl, const Vec& z,
                               const ActionBounds& bounds);
/// Same with an explicit correction vector.
ActionComposition compose_action(const Vec& a0, const Vec& ac, const ActionBounds& bounds);

/// g = -d|z_next - F(z, a)|^2/da at a = a0 = 2 (dF/da)^T e, where
/// e = z_next - F(z, a0) is passed in.
Vec reflex_gradient(const ForwardModel& F, const Vec& z, const Vec& a0, const Vec& e);

struct HorizonGradient {
  std::vector<Vec> g;       // g_i = -dL/da0_i
  std::vector<Vec> errors;  // e_i = z_next_i - z_hat_{i+1}
  double loss = 0.0;        // L = sum_i |e_i|^2
};

/// Open-loop rollout z_hat_{i+1} = F(z_hat_i, a0_i) from z_hat_0 = z0,
/// differentiated in reverse through every step.
HorizonGradient horizon_gradient(const ForwardModel& F, const Vec& z0, const std::vector<Vec>& a0,
                                 const std::vector<Vec>& z_next);

/// a_c = -eta (dF/da)^T e_prev with the Jacobian at (z, a0).
Vec analytic_action(const ForwardModel& F, const Vec& z, const Vec& a0, const Vec& e_prev, double eta);

/// Integrating form of the analytic law used in closed loop: after each
/// observed error e_t the held correction becomes
///   c <- c + analytic_action(F, z_t, a0_t, e_t, 2 eta) = c - eta g_t,
/// with g_t the reflex gradient. On a linear plant with a perfect model and
/// no perturbation this gives e' = (I - 2 eta B B^T) e.
class AnalyticReflex {
 public:
  AnalyticReflex(int action_dim, double eta);

  double eta() const { return eta_; }
  const Vec& correction() const { return correction_; }
  void set_correction(Vec c);

  /// Clipped to +-(hi - lo) so the integrator cannot wind up without bound.
  void update(const ForwardModel& F, const Vec& z, const Vec& a0, const Vec& e, const ActionBounds& bounds);

 private:
  double eta_;
  Vec correction_;
};

nlohmann::json reflex_to_json(const ReflexController& ctrl);

}  // namespace rwm
