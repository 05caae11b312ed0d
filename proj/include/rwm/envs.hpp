#pragma once

// Deterministic desk-scale plants: a 2D point mass that has to reach a goal,
// and a stable linear system used where closed-form answers are needed.
// Observations are the full state vector; there is no encoder.

#include <memory>

#include <Eigen/Dense>

#include "rwm/diffnet.hpp"
#include "rwm/random.hpp"

namespace rwm {

struct ActionBounds {
  double lo = -2.0;
  double hi = 2.0;

  Vec clip(const Vec& a) const { return a.cwiseMax(lo).cwiseMin(hi); }
  bool contains(const Vec& a) const { return (a.array() >= lo).all() && (a.array() <= hi).all(); }
};

/// a_eff = clip(a_total * (1 + p)), elementwise.
Vec apply_perturbation(const Vec& a_total, const Vec& p, const ActionBounds& bounds);

// ---------------------------------------------------------------------------
// Point mass

struct PointMassParams {
  double dt = 0.05;
  double damping = 0.9;
  int episode_length = 200;
  Eigen::Vector2d goal{0.5, 0.5};
  Eigen::Vector2d start{0.0, 0.0};
  bool randomize_goal = false;   // goal ~ U[0,1]^2 per episode
  bool randomize_start = false;  // start ~ U[0,1]^2 per episode
  ActionBounds bounds;
};

struct PointMassState {
  Eigen::Vector2d position = Eigen::Vector2d::Zero();
  Eigen::Vector2d velocity = Eigen::Vector2d::Zero();
  Eigen::Vector2d goal{0.5, 0.5};
  long t = 0;

  static constexpr int kObservationSize = 6;

  /// (position, velocity, goal).
  Vec observation() const;
  static PointMassState from_observation(const Vec& obs, long t = 0);
};

struct StepResult {
  PointMassState next_state;
  double reward = 0.0;
  Vec observation;
};

/// velocity' = damping * velocity + dt * a, position' = position + dt * velocity',
/// reward = -|position' - goal|. The action is clipped to the bounds first.
StepResult pointmass_step(const PointMassState& state, const Vec& a_eff,
                          const PointMassParams& params = {});

// ---------------------------------------------------------------------------
// Linear testbed

struct LinearPlant {
  Mat A;
  Mat B;
  double noise_std = 0.0;

  int latent_dim() const { return static_cast<int>(A.rows()); }
  int action_dim() const { return static_cast<int>(B.cols()); }

  /// Requires spectral radius of A below one and B of full column rank.
  void validate() const;
};

/// z' = A z + B a + w, w ~ N(0, noise_std^2 I) drawn from `rng`.
Vec linear_step(const LinearPlant& plant, const Vec& z, const Vec& a_eff, Rng& rng);

// ---------------------------------------------------------------------------
// Common interface used by the experiment loop.

struct EnvStep {
  Vec observation;
  double reward = 0.0;
};

class Environment {
 public:
  virtual ~Environment() = default;

  virtual int latent_dim() const = 0;
  virtual int action_dim() const = 0;
  virtual const ActionBounds& bounds() const = 0;
  virtual int episode_length() const = 0;

  /// Starts an episode and returns its first observation.
  virtual Vec reset(Rng& rng) = 0;
  /// Advances with an action that has already been perturbed and clipped.
  virtual EnvStep step(const Vec& a_eff, Rng& rng) = 0;
  /// Places the environment in the state described by an observation.
  virtual void restore(const Vec& observation) = 0;

  virtual std::unique_ptr<Environment> clone() const = 0;
};

class PointMassEnv final : public Environment {
 public:
  explicit PointMassEnv(PointMassParams params = {});

  int latent_dim() const override { return PointMassState::kObservationSize; }
  int action_dim() const override { return 2; }
  const ActionBounds& bounds() const override { return params_.bounds; }
  int episode_length() const override { return params_.episode_length; }

  Vec reset(Rng& rng) override;
  EnvStep step(const Vec& a_eff, Rng& rng) override;
  void restore(const Vec& observation) override;
  std::unique_ptr<Environment> clone() const override;

  const PointMassParams& params() const { return params_; }
  PointMassParams& mutable_params() { return params_; }
  const PointMassState& state() const { return state_; }

 private:
  PointMassParams params_;
  PointMassState state_;
};

class LinearEnv final : public Environment {
 public:
  /// Episodes start at z0 ~ N(0, reset_std^2 I); reward is -|z' - target|.
  LinearEnv(LinearPlant plant, ActionBounds bounds, int episode_length, double reset_std,
            Vec target = {});

  int latent_dim() const override { return plant_.latent_dim(); }
  int action_dim() const override { return plant_.action_dim(); }
  const ActionBounds& bounds() const override { return bounds_; }
  int episode_length() const override { return episode_length_; }

  Vec reset(Rng& rng) override;
  EnvStep step(const Vec& a_eff, Rng& rng) override;
  void restore(const Vec& observation) override { z_ = observation; }
  std::unique_ptr<Environment> clone() const override;

  const LinearPlant& plant() const { return plant_; }

 private:
  LinearPlant plant_;
  ActionBounds bounds_;
  int episode_length_;
  double reset_std_;
  Vec target_;
  Vec z_;
};

}  // namespace rwm
