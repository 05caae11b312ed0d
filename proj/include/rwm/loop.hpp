#pragma once

// Phase-2 adaptation loop: base policy plus the selected correction, under
// a perturbation schedule, with the frozen forward model as reference.

#include <cstdint>
#include <optional>
#include <vector>

#include "rwm/baseline.hpp"
#include "rwm/config.hpp"
#include "rwm/envs.hpp"
#include "rwm/perturb.hpp"
#include "rwm/reflex.hpp"
#include "rwm/worldmodel.hpp"

namespace rwm {

struct StepRow {
  long t = 0;
  double reward = 0.0;
  double control_error = 0.0;  // |z_hat_{t+1} - z_{t+1}|^2
  double a0_norm = 0.0;
  double ac_norm = 0.0;
  Vec p;
  Vec z;   // observation before the step
  Vec a0;
  Vec ac;
  bool episode_start = false;
  bool clipped = false;       // a0 + ac was clipped to the bounds
  double grad_norm = 0.0;     // |g| of the reflex update, rwm mode
  double inversion_check = 0.0;
};

struct LoopSettings {
  AdaptationMode mode = AdaptationMode::kNoAdaptation;
  long total_steps = 0;
  ReflexParams reflex;
  double analytic_eta = 0.0;
  bool condition_on_total = false;
  std::uint64_t seed = 0;
  /// Starting value of the analytic correction; zero when unset.
  std::optional<Vec> initial_correction;
};

struct LoopResult {
  std::vector<StepRow> rows;
  std::optional<ReflexController> controller;  // final pi_c, rwm mode
  Vec final_correction;                        // analytic mode
  long reflex_constructions = 0;               // counter deltas over the run
  long reflex_updates = 0;
  long clipped_steps = 0;
  /// Largest sum_i <g_i, d loss/d a0_i> seen; must be <= 0.
  double max_inversion_check = 0.0;
};

/// Runs `settings.total_steps` steps, resetting `env` every episode_length
/// steps. Throws std::runtime_error naming the step if any logged quantity
/// is not finite.
LoopResult run_adaptation(Environment& env, const BaselinePolicy& pi0, const ForwardModel& F,
                          const PerturbationSchedule& schedule, const LoopSettings& settings);

}  // namespace rwm
