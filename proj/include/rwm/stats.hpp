#pragma once

// Per-cycle segment statistics, cycle normalization against the
// no-adaptation run, and bootstrap confidence intervals of the median.

#include <cstdint>
#include <string>
#include <vector>

#include "rwm/perturb.hpp"

namespace rwm {

double median(std::vector<double> values);
double mean(const std::vector<double>& values);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Percentile bootstrap of the median. Throws on empty samples.
Interval bootstrap_median_ci(const std::vector<double>& samples, int n_resamples = 1000, double level = 0.95,
                             std::uint64_t seed = 0);

/// Per-step series of one (mode, seed) run.
struct RunSeries {
  std::string mode;
  std::uint64_t seed = 0;
  std::vector<double> reward;
  std::vector<double> control_error;
};

struct SegmentMeans {
  double on_reward = 0.0;
  double off_reward = 0.0;
  double on_error = 0.0;
  double off_error = 0.0;
};

struct CycleEntry {
  std::string mode;
  std::uint64_t seed = 0;
  long cycle = 0;
  SegmentMeans raw;
  SegmentMeans normalized;
  bool reward_degenerate = false;  // no-adaptation ON and OFF means coincide
  bool error_degenerate = false;
};

struct ModeSummary {
  std::string mode;
  double on_reward_median = 0.0;
  Interval on_reward_ci;
  double on_error_median = 0.0;
  Interval on_error_ci;
  double raw_on_reward_median = 0.0;
  Interval raw_on_reward_ci;
  double raw_on_error_median = 0.0;
  Interval raw_on_error_ci;
};

struct CycleStats {
  std::vector<CycleEntry> entries;
  std::vector<ModeSummary> summaries;  // in the order modes first appear
};

/// Means of each complete cycle's ON and OFF segments.
std::vector<SegmentMeans> segment_means(const std::vector<double>& reward, const std::vector<double>& control_error,
                                        const PerturbationSchedule& schedule);

/// v_norm = (v - m) / (M - m), with m and M the min and max of the
/// no-adaptation run's ON and OFF means in the same cycle and seed. A
/// degenerate range M == m gives 0 and sets the flag. Every seed needs a
/// "no_adaptation" run of the same length.
CycleStats normalize_cycles(const std::vector<RunSeries>& runs, const PerturbationSchedule& schedule,
                            int n_resamples = 1000, double level = 0.95, std::uint64_t seed = 0);

nlohmann::json cycle_stats_to_json(const CycleStats& stats);

}  // namespace rwm
