#pragma once

// Two-phase experiments: phase 1 gathers unperturbed data and trains the
// forward model, phase 2 runs each adaptation mode under the perturbation
// schedule. Also metrics I/O, aftereffect analysis and output emission.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "rwm/config.hpp"
#include "rwm/loop.hpp"
#include "rwm/stats.hpp"
#include "rwm/theory.hpp"

namespace rwm {

inline constexpr int kMetricsCsvVersion = 1;
inline constexpr const char* kOutputDirEnv = "RWM_OUTPUT_DIR";

struct Phase1Result {
  BaselinePolicy policy;
  ForwardModel model;
  ForwardTrainReport train_report;
  std::optional<PretrainResult> pretrain;
  JacobianBounds jacobian;  // over phase-1 states
  double analytic_eta = 0.0;
};

/// Builds pi0 (pretraining it for the learned kind), collects
/// config.phase1.steps transitions with Gaussian exploration noise on the
/// executed action (under the perturbation schedule when
/// pretrain_with_perturbations is set) and trains F on them.
Phase1Result prepare_phase1(const ExperimentConfig& config, std::uint64_t seed);

/// Schedule used in phase 2 for a seed; identical for every mode.
PerturbationSchedule phase2_schedule(const ExperimentConfig& config, std::uint64_t seed);

struct AftereffectTransition {
  long t = 0;          // first OFF step
  double score = 0.0;  // sum_k <actual - nominal, perturbed - nominal>
  int sign = 0;
};

struct AftereffectReport {
  std::string mode;
  std::uint64_t seed = 0;
  std::vector<AftereffectTransition> transitions;
  double mean_sign = 0.0;
  double fraction_opposite = 0.0;  // transitions with sign < 0
};

/// At every ON->OFF transition, compares the logged trajectory over the next
/// `window` steps (stopping at an episode reset) with two shadow rollouts of
/// pi0 from the same state: nominal (p = 0) and perturbed with the last ON
/// value of p. A negative score means the run deviates opposite to the way
/// the perturbation pushed the unadapted system.
AftereffectReport analyze_aftereffect(const Environment& proto, const BaselinePolicy& pi0,
                                      const PerturbationSchedule& schedule, const std::vector<StepRow>& rows,
                                      int window, const std::string& mode, std::uint64_t seed);

struct ModeRun {
  AdaptationMode mode = AdaptationMode::kNoAdaptation;
  LoopResult loop;
};

struct SeedRun {
  std::uint64_t seed = 0;
  Phase1Result phase1;
  std::vector<ModeRun> runs;
  BoundsReport bounds;
  std::string bounds_mode;
  std::vector<AftereffectReport> aftereffects;  // alternating schedules only
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<AdaptationMode> modes;
  std::vector<SeedRun> seeds;
  std::optional<CycleStats> cycles;  // cyclic schedule with a no_adaptation run
  BoundsReport bounds;               // aggregated over seeds
};

ExperimentResult run_experiment(const ExperimentConfig& config, const std::vector<AdaptationMode>& modes);
inline ExperimentResult run_experiment(const ExperimentConfig& config) { return run_experiment(config, {config.mode}); }

/// Constants from nominal rollouts of pi0, P from the schedule, and the
/// measured steady-state |e| as the median over the second half of every ON
/// segment (whole second half of the run for non-cyclic schedules).
BoundsReport compute_bounds(const Environment& proto, const BaselinePolicy& pi0, const ForwardModel& F,
                            const PerturbationSchedule& schedule, double eta,
                            const std::vector<double>& control_error, std::uint64_t seed);
BoundsReport aggregate_bounds(const std::vector<BoundsReport>& per_seed);

struct MetricsRow {
  long t = 0;
  std::uint64_t seed = 0;
  std::string mode;
  double reward = 0.0;
  double control_error = 0.0;
  double a0_norm = 0.0;
  double ac_norm = 0.0;
  Vec p;
};

/// Header t,seed,mode,reward,control_error,a0_norm,ac_norm,p0..p{m-1};
/// numbers as "%.10g".
std::string metrics_csv(const std::vector<MetricsRow>& rows, int action_dim);
std::vector<MetricsRow> parse_metrics_csv(const std::string& text);
/// Ordered by seed, then mode in run order, then t.
std::vector<MetricsRow> collect_metrics(const ExperimentResult& result);
std::vector<RunSeries> series_from_metrics(const std::vector<MetricsRow>& rows);

std::string timeseries_svg(const std::vector<MetricsRow>& rows, const PerturbationSchedule& schedule);
std::string cycles_svg(const CycleStats& stats, int resamples, double level, std::uint64_t seed);

/// RWM_OUTPUT_DIR, when set, replaces config.output_dir.
std::filesystem::path resolve_output_dir(const ExperimentConfig& config);

/// Writes config.json, manifest.json, metrics.csv, cycles.json, bounds.json,
/// plots/*.svg, per-seed checkpoints and, for alternating schedules,
/// aftereffect.json. Every file is written atomically.
void emit_outputs(const ExperimentResult& result, const std::filesystem::path& outdir);

/// Recomputes bounds.json of a run directory from its checkpoints and
/// metrics.csv; returns the JSON that was written.
nlohmann::json recompute_bounds(const std::filesystem::path& run_dir);
/// Rewrites the SVG plots of a run directory from metrics.csv.
void replot(const std::filesystem::path& run_dir);

nlohmann::json aftereffect_to_json(const std::vector<AftereffectReport>& reports);

}  // namespace rwm
