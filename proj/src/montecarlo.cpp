#include "cotar/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <thread>

namespace cotar {

namespace {

// Substream tags for the experiment drivers.
constexpr std::uint64_t kStaticTag = 0x737461746963;  // "static"
constexpr std::uint64_t kMobileTag = 0x6D6F62696C65;  // "mobile"
constexpr std::uint64_t kHeadingTag = 0x68656164;     // "head"

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Index-sharded parallel loop. Work item i writes only to its own slot, so
// results are identical for any thread count.
void parallel_for(long count, int threads, const std::function<void(long)>& fn) {
  threads = std::min<long>(resolve_threads(threads), count);
  if (threads <= 1) {
    for (long i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<long> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (long i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

struct TrialOutcome {
  bool ok = false;
  std::vector<TrialRecord> records;
  double sum_sq = 0.0;  // sum over nodes of squared error
};

TrialOutcome run_trial(const ExperimentConfig& cfg, const ObservationLayout& layout,
                       const PositionVector& truth, const PositionVector& init,
                       RandomStream trial_rng, int trial, int step) {
  TrialOutcome out;
  try {
    const ObservationSet obs =
        synthesize(truth, layout, cfg.references, cfg.channel, cfg.p_missing_rss, trial_rng);
    const SolveReport report = solve(init, obs, cfg.references, cfg.channel, cfg.iterations);
    out.ok = true;
    out.records.reserve(truth.size());
    for (std::size_t i = 0; i < truth.size(); ++i) {
      const double ex = report.estimate.x[i] - truth.x[i];
      const double ey = report.estimate.y[i] - truth.y[i];
      const double err = std::hypot(ex, ey);
      out.sum_sq += err * err;
      out.records.push_back({trial, step, static_cast<int>(i) + 1, truth.x[i], truth.y[i],
                             report.estimate.x[i], report.estimate.y[i], err,
                             report.iterations});
    }
  } catch (const error&) {
    out.ok = false;
  }
  return out;
}

PointStats point_monte_carlo(const ExperimentConfig& cfg, const ObservationLayout& layout,
                             double cx, double cy, std::uint64_t point_key,
                             std::vector<TrialRecord>* records) {
  const auto formation = cfg.formation();
  const PositionVector truth = centered_cluster(formation, cx, cy);
  const PositionVector init =
      centered_cluster(formation, cfg.area_side_m / 2.0, cfg.area_side_m / 2.0);
  const RandomStream point_stream = RandomStream(cfg.seed).fork(kStaticTag).fork(point_key);

  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(cfg.trials));
  parallel_for(cfg.trials, cfg.threads, [&](long t) {
    outcomes[static_cast<std::size_t>(t)] =
        run_trial(cfg, layout, truth, init, point_stream.fork(static_cast<std::uint64_t>(t)),
                  static_cast<int>(t), 0);
  });

  PointStats stats;
  stats.x = cx;
  stats.y = cy;
  double sum_sq = 0.0;
  for (auto& out : outcomes) {
    if (!out.ok) {
      ++stats.failures;
      continue;
    }
    ++stats.trials_ok;
    sum_sq += out.sum_sq;
    if (records != nullptr)
      records->insert(records->end(), out.records.begin(), out.records.end());
  }
  const long node_count = static_cast<long>(stats.trials_ok) * static_cast<long>(truth.size());
  stats.rms_m = node_count > 0 ? std::sqrt(sum_sq / static_cast<double>(node_count)) : 0.0;
  try {
    stats.eps_m = rms_bound(truth, layout, cfg.references, cfg.channel);
  } catch (const error&) {
    stats.eps_m = std::numeric_limits<double>::quiet_NaN();
  }
  return stats;
}

}  // namespace

StaticResult run_static(const ExperimentConfig& cfg) {
  cfg.validate();
  const ObservationLayout layout(cfg.scheme, cfg.n_targets,
                                 static_cast<int>(cfg.references.size()));
  const std::vector<double> coords = lattice_coords(cfg.area_side_m, cfg.grid_pitch_m);
  StaticResult result;
  result.grid.reserve(coords.size() * coords.size());
  std::uint64_t point_key = 0;
  for (double y : coords) {
    for (double x : coords) {
      PointStats stats = point_monte_carlo(cfg, layout, x, y, point_key++, &result.records);
      result.total_trials += cfg.trials;
      result.total_failures += stats.failures;
      result.grid.push_back(std::move(stats));
    }
  }
  return result;
}

StaticResult run_static_at(const ExperimentConfig& cfg, double cx, double cy, bool keep_records) {
  cfg.validate();
  const ObservationLayout layout(cfg.scheme, cfg.n_targets,
                                 static_cast<int>(cfg.references.size()));
  StaticResult result;
  PointStats stats =
      point_monte_carlo(cfg, layout, cx, cy, 0, keep_records ? &result.records : nullptr);
  result.total_trials = cfg.trials;
  result.total_failures = stats.failures;
  result.grid.push_back(std::move(stats));
  return result;
}

std::vector<CooperationRow> run_cooperation_sweep(const ExperimentConfig& cfg,
                                                  const std::vector<int>& n_values,
                                                  const std::vector<double>& delta_values) {
  cfg.validate();
  std::vector<CooperationRow> rows;
  const double c = cfg.area_side_m / 2.0;
  for (double delta : delta_values) {
    for (int n : n_values) {
      ExperimentConfig point_cfg = cfg;
      point_cfg.n_targets = n;
      point_cfg.grid_spacing_m = delta;
      const ObservationLayout layout(point_cfg.scheme, n,
                                     static_cast<int>(cfg.references.size()));
      const std::uint64_t key = static_cast<std::uint64_t>(n) * 1000003u +
                                static_cast<std::uint64_t>(delta * 1024.0);
      const PointStats stats = point_monte_carlo(point_cfg, layout, c, c, key, nullptr);
      rows.push_back({n, delta, stats.eps_m, stats.rms_m, stats.failures});
    }
  }
  return rows;
}

std::vector<MissingRssRow> run_missing_rss_sweep(const ExperimentConfig& cfg,
                                                 const std::vector<double>& p_values) {
  cfg.validate();
  const ObservationLayout layout(cfg.scheme, cfg.n_targets,
                                 static_cast<int>(cfg.references.size()));
  const auto formation = cfg.formation();
  const double c = cfg.area_side_m / 2.0;
  const PositionVector truth = centered_cluster(formation, c, c);
  const PositionVector init = truth;  // center cluster: init anchor == truth anchor
  // Same substream as run_static_at(center): p_miss = 0 reproduces it exactly.
  const RandomStream point_stream = RandomStream(cfg.seed).fork(kStaticTag).fork(0);

  // mean_sq[k][t]: per-trial mean squared node error at p_values[k]; the same
  // trial substream is reused for every p, so noise is common and masks nest.
  std::vector<std::vector<double>> mean_sq(p_values.size());
  std::vector<std::vector<char>> failed(p_values.size());
  for (auto& v : mean_sq) v.assign(static_cast<std::size_t>(cfg.trials), 0.0);
  for (auto& v : failed) v.assign(static_cast<std::size_t>(cfg.trials), 0);

  parallel_for(cfg.trials, cfg.threads, [&](long t) {
    for (std::size_t k = 0; k < p_values.size(); ++k) {
      ExperimentConfig trial_cfg = cfg;
      trial_cfg.p_missing_rss = p_values[k];
      const TrialOutcome out =
          run_trial(trial_cfg, layout, truth, init,
                    point_stream.fork(static_cast<std::uint64_t>(t)), static_cast<int>(t), 0);
      if (out.ok) {
        mean_sq[k][static_cast<std::size_t>(t)] = out.sum_sq / static_cast<double>(truth.size());
      } else {
        failed[k][static_cast<std::size_t>(t)] = 1;
      }
    }
  });

  std::vector<MissingRssRow> rows;
  rows.reserve(p_values.size());
  for (std::size_t k = 0; k < p_values.size(); ++k) {
    MissingRssRow row;
    row.p_miss = p_values[k];
    double sum = 0.0, sum2 = 0.0;
    long ok = 0;
    for (int t = 0; t < cfg.trials; ++t) {
      if (failed[k][static_cast<std::size_t>(t)]) {
        ++row.failures;
        continue;
      }
      const double m = mean_sq[k][static_cast<std::size_t>(t)];
      sum += m;
      sum2 += m * m;
      ++ok;
    }
    if (ok > 1) {
      const double mean = sum / static_cast<double>(ok);
      row.rms_m = std::sqrt(mean);
      const double var = (sum2 - sum * sum / static_cast<double>(ok)) / static_cast<double>(ok - 1);
      // Delta method: SE(sqrt(m)) = SE(m) / (2 sqrt(m)).
      row.se_m = std::sqrt(var / static_cast<double>(ok)) / (2.0 * row.rms_m);
    }
    rows.push_back(row);
  }
  return rows;
}

MobileResult run_mobile(const ExperimentConfig& cfg, int tracks) {
  cfg.validate();
  if (!cfg.mobility) throw config_error("mobility: required for mobile runs");
  if (tracks < 1) throw config_error("tracks: must be >= 1");
  const MobilitySpec& spec = *cfg.mobility;
  const ObservationLayout layout(cfg.scheme, cfg.n_targets,
                                 static_cast<int>(cfg.references.size()));
  const auto formation = cfg.formation();
  const double area = cfg.area_side_m;
  const double speed = spec.speed_kmh / 3.6;
  const long steps = static_cast<long>(std::floor(spec.duration_s / spec.sample_interval_s));
  const double margin = 0.1 * area;

  struct TrackOutcome {
    std::vector<TrialRecord> records;
    double sum_sq = 0.0;
    double interior_sum_sq = 0.0;
    double interior_bound_sq = 0.0;
    long samples = 0;
    long interior_nodes = 0;
    long failures = 0;
  };
  std::vector<TrackOutcome> outcomes(static_cast<std::size_t>(tracks));

  parallel_for(tracks, cfg.threads, [&](long trk) {
    TrackOutcome& out = outcomes[static_cast<std::size_t>(trk)];
    const RandomStream track_stream =
        RandomStream(cfg.seed).fork(kMobileTag).fork(static_cast<std::uint64_t>(trk));
    double heading = spec.heading_rad
                         ? *spec.heading_rad
                         : track_stream.fork(kHeadingTag).next_unit() * 2.0 * M_PI;
    double cx = area / 2.0, cy = area / 2.0;
    double vx = speed * std::cos(heading), vy = speed * std::sin(heading);
    PositionVector warm = centered_cluster(formation, cx, cy);
    for (long s = 0; s < steps; ++s) {
      const PositionVector truth = centered_cluster(formation, cx, cy);
      const TrialOutcome trial =
          run_trial(cfg, layout, truth, warm, track_stream.fork(static_cast<std::uint64_t>(s)),
                    static_cast<int>(trk), static_cast<int>(s));
      ++out.samples;
      if (trial.ok) {
        out.sum_sq += trial.sum_sq;
        out.records.insert(out.records.end(), trial.records.begin(), trial.records.end());
        warm.x.assign(truth.size(), 0.0);
        warm.y.assign(truth.size(), 0.0);
        for (std::size_t i = 0; i < truth.size(); ++i) {
          warm.x[i] = trial.records[i].est_x;
          warm.y[i] = trial.records[i].est_y;
        }
        const bool interior = cx >= margin && cx <= area - margin && cy >= margin &&
                              cy <= area - margin;
        if (interior) {
          out.interior_sum_sq += trial.sum_sq;
          out.interior_nodes += static_cast<long>(truth.size());
          out.interior_bound_sq +=
              static_cast<double>(truth.size()) *
              std::pow(rms_bound(truth, layout, cfg.references, cfg.channel), 2);
        }
      } else {
        ++out.failures;  // warm start kept from the last good sample
      }
      // Constant-velocity advance with specular wall reflection.
      cx += vx * spec.sample_interval_s;
      cy += vy * spec.sample_interval_s;
      while (cx < 0.0 || cx > area) {
        cx = cx < 0.0 ? -cx : 2.0 * area - cx;
        vx = -vx;
      }
      while (cy < 0.0 || cy > area) {
        cy = cy < 0.0 ? -cy : 2.0 * area - cy;
        vy = -vy;
      }
    }
  });

  MobileResult result;
  double sum_sq = 0.0, interior_sq = 0.0, interior_bound = 0.0;
  long nodes_ok = 0, interior_nodes = 0;
  for (auto& out : outcomes) {
    result.samples += out.samples;
    result.total_failures += out.failures;
    nodes_ok += static_cast<long>(out.records.size());
    sum_sq += out.sum_sq;
    interior_sq += out.interior_sum_sq;
    interior_bound += out.interior_bound_sq;
    interior_nodes += out.interior_nodes;
    result.records.insert(result.records.end(), out.records.begin(), out.records.end());
  }
  result.rms_m = nodes_ok > 0 ? std::sqrt(sum_sq / static_cast<double>(nodes_ok)) : 0.0;
  if (interior_nodes > 0) {
    result.interior_rms_m = std::sqrt(interior_sq / static_cast<double>(interior_nodes));
    result.interior_eps_m = std::sqrt(interior_bound / static_cast<double>(interior_nodes));
  }
  return result;
}

std::vector<PointStats> bounds_grid(const ExperimentConfig& cfg, Scheme scheme) {
  cfg.validate();
  const ObservationLayout layout(scheme, cfg.n_targets,
                                 static_cast<int>(cfg.references.size()));
  const auto formation = cfg.formation();
  const std::vector<double> coords = lattice_coords(cfg.area_side_m, cfg.grid_pitch_m);
  const long nx = static_cast<long>(coords.size());
  std::vector<PointStats> grid(static_cast<std::size_t>(nx * nx));
  parallel_for(nx * nx, cfg.threads, [&](long idx) {
    PointStats& stats = grid[static_cast<std::size_t>(idx)];
    stats.x = coords[static_cast<std::size_t>(idx % nx)];
    stats.y = coords[static_cast<std::size_t>(idx / nx)];
    try {
      const PositionVector truth = centered_cluster(formation, stats.x, stats.y);
      stats.eps_m = rms_bound(truth, layout, cfg.references, cfg.channel);
    } catch (const error&) {
      stats.eps_m = std::numeric_limits<double>::quiet_NaN();
      stats.failures = 1;
    }
  });
  return grid;
}

}  // namespace cotar
