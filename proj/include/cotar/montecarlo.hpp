#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cotar/bounds.hpp"
#include "cotar/estimator.hpp"
#include "cotar/scenario.hpp"

namespace cotar {

struct TrialRecord {
  int trial = 0;
  int step = 0;
  int node = 0;
  double true_x = 0.0;
  double true_y = 0.0;
  double est_x = 0.0;
  double est_y = 0.0;
  double err_m = 0.0;
  int iters = 0;
};

struct PointStats {
  double x = 0.0;
  double y = 0.0;
  double rms_m = 0.0;
  double eps_m = 0.0;  // analytic RMS bound at the same truth
  int trials_ok = 0;
  int failures = 0;
};

struct StaticResult {
  std::vector<PointStats> grid;
  std::vector<TrialRecord> records;
  long total_trials = 0;
  long total_failures = 0;
};

// Monte-Carlo localization with the cluster centroid at every lattice point:
// synthesize at truth, solve with the formation centered at the scenario
// center as init, fixed iteration count. Per-trial solver errors are counted,
// not fatal.
StaticResult run_static(const ExperimentConfig& cfg);

// Same protocol at a single truth centroid; records carry full per-node rows.
StaticResult run_static_at(const ExperimentConfig& cfg, double cx, double cy,
                           bool keep_records = true);

struct CooperationRow {
  int n = 0;
  double delta = 0.0;
  double eps_m = 0.0;
  double rms_m = 0.0;
  int failures = 0;
};

// Bounds and Monte-Carlo RMS per (N, delta) at the scenario center.
std::vector<CooperationRow> run_cooperation_sweep(const ExperimentConfig& cfg,
                                                  const std::vector<int>& n_values,
                                                  const std::vector<double>& delta_values);

struct MissingRssRow {
  double p_miss = 0.0;
  double rms_m = 0.0;
  double se_m = 0.0;  // standard error of the RMS estimate
  int failures = 0;
};

// Monte-Carlo RMS vs missing-RSS probability at the scenario center, common
// random numbers across p values (noise and mask uniforms reuse the same
// per-trial substreams).
std::vector<MissingRssRow> run_missing_rss_sweep(const ExperimentConfig& cfg,
                                                 const std::vector<double>& p_values);

struct MobileResult {
  std::vector<TrialRecord> records;  // step = sample index along the track
  double rms_m = 0.0;
  double interior_rms_m = 0.0;       // samples >= 10% of L from every wall
  double interior_eps_m = 0.0;       // bound averaged over the same samples
  long total_failures = 0;
  long samples = 0;
};

// Constant-speed straight-line motion with specular wall reflection; warm
// start from the previous estimate, center init on the first sample.
MobileResult run_mobile(const ExperimentConfig& cfg, int tracks);

// Per-point bound map for one scheme over the configured lattice.
std::vector<PointStats> bounds_grid(const ExperimentConfig& cfg, Scheme scheme);

}  // namespace cotar
