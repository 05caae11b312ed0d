#pragma once

// Frozen base policies pi0 and the thresholded quadratic action cost used
// when a policy is trained.

#include <optional>
#include <string>
#include <vector>

#include "rwm/diffnet.hpp"
#include "rwm/envs.hpp"

namespace rwm {

enum class BaselineKind { kPd, kLinear, kLearned };

std::string to_string(BaselineKind k);
BaselineKind baseline_kind_from_string(const std::string& name);

struct PdGains {
  double kp = 2.0;
  double kd = 0.2;
};

struct ActionCostParams {
  double c = 0.5;
  double lambda = 0.2;
};

/// lambda * sum_i max(0, |a_i| - c)^2.
double thresholded_action_cost(const Vec& a, const ActionCostParams& params = {});
/// Gradient of thresholded_action_cost with respect to a.
Vec thresholded_action_cost_gradient(const Vec& a, const ActionCostParams& params = {});

/// pd: point-mass observation (position, velocity, goal);
///     a0 = clip(kp (goal - position) - kd velocity).
/// linear: a0 = clip(M z + b) for any latent size.
/// learned: a0 = hi * tanh-output network(z), which stays inside symmetric bounds.
class BaselinePolicy {
 public:
  static BaselinePolicy pd(PdGains gains, ActionBounds bounds = {});
  static BaselinePolicy linear(Mat gain, Vec offset, ActionBounds bounds = {});
  static BaselinePolicy learned(Network network, ActionBounds bounds = {});

  BaselineKind kind() const { return kind_; }
  const ActionBounds& bounds() const { return bounds_; }
  const PdGains& gains() const { return gains_; }
  const Mat& linear_gain() const { return gain_; }
  const Vec& linear_offset() const { return offset_; }
  const Network& network() const { return *network_; }
  int action_dim() const;

  Vec action(const Vec& z) const;
  Vec operator()(const Vec& z) const { return action(z); }

 private:
  BaselinePolicy() = default;

  BaselineKind kind_ = BaselineKind::kPd;
  ActionBounds bounds_;
  PdGains gains_;
  Mat gain_;
  Vec offset_;
  std::optional<Network> network_;
};

inline Vec base_action(const BaselinePolicy& policy, const Vec& z) { return policy.action(z); }

/// A component counts as saturated when |a_i| >= 0.99 * max(|lo|, |hi|).
bool is_saturated(const Vec& a, const ActionBounds& bounds);

struct EpisodeStats {
  double reward = 0.0;          // sum of rewards
  double action_cost = 0.0;     // sum of thresholded costs
  double objective = 0.0;       // reward - action_cost
  double mean_action_norm = 0.0;
  long steps = 0;
  long saturated_steps = 0;                  // steps with any saturated component
  std::vector<long> saturated_per_component;  // per actuator
};

/// Runs one episode from env.reset(rng). A non-empty `gain` is applied as a
/// constant actuator perturbation; the cost is charged on the commanded action.
EpisodeStats run_episode(Environment& env, const BaselinePolicy& policy, const ActionCostParams& cost,
                         Rng& rng, const Vec& gain = {});

struct CemParams {
  std::vector<int> hidden{16};
  Activation activation = Activation::kTanh;
  int population = 32;
  double elite_fraction = 0.2;
  int iterations = 60;
  int episodes_per_candidate = 2;
  double init_std = 1.0;
  double min_std = 0.02;
  double target_fraction = 0.9;  // of the PD objective, see PretrainResult
  // Domain randomization: with gain_hi > gain_lo every evaluation episode
  // draws a constant p ~ U[gain_lo, gain_hi] per actuator.
  double gain_lo = 0.0;
  double gain_hi = 0.0;
};

struct PretrainResult {
  BaselinePolicy policy;
  /// False when the budget ran out before the policy's objective reached
  /// pd_objective - (1 - target_fraction) * |pd_objective|.
  bool reached_target = false;
  double objective = 0.0;
  double pd_objective = 0.0;
  double saturation_rate = 0.0;
  double mean_action_norm = 0.0;
  std::vector<double> saturation_per_component;
  // Per iteration, measured on the distribution mean.
  std::vector<double> objective_history;
  std::vector<double> action_norm_history;
};

/// Cross-entropy-method search over the parameters of a tanh-output
/// network maximizing episodic (reward - thresholded cost). The budget is
/// params.iterations * params.population candidates.
PretrainResult pretrain_policy(const Environment& env, const ActionCostParams& cost, const CemParams& params,
                               std::uint64_t seed, const PdGains& reference_gains = {});

nlohmann::json policy_to_json(const BaselinePolicy& policy);
BaselinePolicy policy_from_json(const nlohmann::json& j);

}  // namespace rwm
