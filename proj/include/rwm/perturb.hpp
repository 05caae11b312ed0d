#pragma once

// Actuator-gain perturbation signals p(t). The effective action is
// a_eff = (a0 + ac) * (1 + p(t)). A schedule is a pure function of
// (parameters, seed, t).

#include <cstdint>
#include <vector>

#include "rwm/diffnet.hpp"
#include "rwm/random.hpp"

namespace rwm {

enum class PerturbationKind { kNone, kStepCycle, kAlternating, kDrift };

std::string to_string(PerturbationKind k);
PerturbationKind perturbation_kind_from_string(const std::string& name);

/// ON segment first, then OFF. Each ON segment draws one value per actuator
/// from [lo, hi].
struct StepCycleParams {
  double lo = -0.5;
  double hi = 0.5;
  long on_steps = 2000;
  long off_steps = 2000;
  bool resample_each_cycle = true;
};

/// ON/OFF cycles whose ON value is +magnitude in even cycles and -magnitude
/// in odd cycles.
struct AlternatingParams {
  Vec magnitude;  // per actuator
  long on_steps = 2000;
  long off_steps = 2000;
};

/// p_j(t) = amplitude * sin(2 pi t / period) + x_j(t), where x_j is
/// first-order low-pass noise: x <- clamp((1 - beta) x + beta * xi, +-envelope),
/// xi ~ N(0, noise_std^2) truncated at 4 noise_std.
struct DriftParams {
  double amplitude = 0.3;
  double period = 8000.0;
  double noise_std = 0.5;
  double filter_coefficient = 0.01;
  double noise_envelope = 0.1;
};

class PerturbationSchedule {
 public:
  static PerturbationSchedule none(int action_dim);
  static PerturbationSchedule step_cycle(int action_dim, StepCycleParams params, std::uint64_t seed);
  static PerturbationSchedule alternating(AlternatingParams params);
  static PerturbationSchedule drift(int action_dim, DriftParams params, std::uint64_t seed);

  PerturbationKind kind() const { return kind_; }
  int action_dim() const { return action_dim_; }
  std::uint64_t seed() const { return seed_; }

  /// p(t); t must be non-negative.
  Vec at(long t) const;

  /// Upper bound on |p(t)| over all t.
  double bound() const;

  /// True for the ON part of a cycle. Drift schedules are always ON; `none`
  /// is always OFF.
  bool is_on(long t) const;
  /// Cycle index for cyclic kinds, -1 otherwise.
  long cycle_index(long t) const;
  long cycle_length() const;
  long on_steps() const;

  /// Largest |p_j(t+1) - p_j(t)| possible for the drift kind; zero for the
  /// others, which are piecewise constant.
  double drift_smoothness_bound() const;

  const StepCycleParams& step_params() const { return step_; }
  const AlternatingParams& alternating_params() const { return alternating_; }
  const DriftParams& drift_params() const { return drift_; }

 private:
  PerturbationSchedule() = default;
  void extend_drift(long t) const;

  PerturbationKind kind_ = PerturbationKind::kNone;
  int action_dim_ = 0;
  std::uint64_t seed_ = 0;
  StepCycleParams step_;
  AlternatingParams alternating_;
  DriftParams drift_;

  // Memoized filter state for the drift kind; row t holds x(t).
  mutable std::vector<Vec> drift_noise_;
  mutable std::vector<Rng> drift_rngs_;
};

inline Vec perturbation_at(const PerturbationSchedule& s, long t) { return s.at(t); }
inline double bound_P(const PerturbationSchedule& s) { return s.bound(); }

}  // namespace rwm
