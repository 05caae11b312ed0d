#pragma once

// Experiment configuration: a JSON document whose schema is described in
// README.md. Unknown keys are rejected at every level.

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rwm/baseline.hpp"
#include "rwm/envs.hpp"
#include "rwm/perturb.hpp"
#include "rwm/reflex.hpp"
#include "rwm/worldmodel.hpp"

namespace rwm {

enum class AdaptationMode { kNoAdaptation, kRwm, kAnalyticReflex };

std::string to_string(AdaptationMode m);
AdaptationMode adaptation_mode_from_string(const std::string& name);
/// Comma-separated list, e.g. "no_adaptation,rwm".
std::vector<AdaptationMode> parse_mode_list(const std::string& list);

enum class EnvKind { kPointMass, kLinear };

struct EnvConfig {
  EnvKind kind = EnvKind::kPointMass;
  PointMassParams pointmass;
  LinearPlant plant;
  int linear_episode_length = 200;
  double reset_std = 0.0;
  Vec target;
  ActionBounds bounds;
};

struct BaselineConfig {
  BaselineKind kind = BaselineKind::kPd;
  PdGains gains;
  Mat gain;
  Vec offset;
  ActionCostParams cost;
  CemParams cem;
};

struct WorldModelConfig {
  bool exact = false;  // exact linear model of a linear plant
  ForwardModelSpec spec;
  ForwardTrainParams train;
};

struct Phase1Config {
  long steps = 20000;
  double exploration_std = 0.3;
  bool randomize_start = true;
};

struct ReflexConfig {
  ReflexParams params;
  std::optional<double> analytic_eta;
  double analytic_eta_fraction = 0.25;  // of 1 / L^2 when analytic_eta is unset
};

struct PerturbationConfig {
  PerturbationKind kind = PerturbationKind::kStepCycle;
  StepCycleParams step;
  AlternatingParams alternating;
  DriftParams drift;
};

struct BootstrapConfig {
  int resamples = 1000;
  double level = 0.95;
  std::uint64_t seed = 0;
};

struct ExperimentConfig {
  std::string name = "experiment";
  EnvConfig env;
  BaselineConfig baseline;
  WorldModelConfig world_model;
  Phase1Config phase1;
  ReflexConfig reflex;
  PerturbationConfig perturbation;
  AdaptationMode mode = AdaptationMode::kRwm;
  long total_steps = 80000;
  std::vector<std::uint64_t> seeds{0};
  std::filesystem::path output_dir = "runs/experiment";
  bool pretrain_with_perturbations = false;
  BootstrapConfig bootstrap;
  int aftereffect_window = 50;
};

/// Throws std::invalid_argument naming the offending field.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);
/// Canonical form with every field spelled out; parse_config round-trips it.
nlohmann::json config_to_json(const ExperimentConfig& c);

std::unique_ptr<Environment> make_environment(const EnvConfig& c);
PerturbationSchedule make_schedule(const PerturbationConfig& c, int action_dim, std::uint64_t seed);

}  // namespace rwm
