#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cotar/montecarlo.hpp"

namespace cotar {

// Provenance line written as the first line of every artifact:
//   # cotar <version> config_hash=<fnv1a-64 hex> seed=<n>
struct RunHeader {
  std::string version;
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;

  std::string line() const;
};

std::uint64_t fnv1a_64(const std::string& bytes);

void write_trials_csv(std::ostream& out, const RunHeader& header,
                      const std::vector<TrialRecord>& records);

// Grid CSV: x, y, scheme, condition, metric ("crb"|"eps"), value_m.
void write_grid_csv(std::ostream& out, const RunHeader& header, const std::string& scheme,
                    const std::string& condition, const std::string& metric,
                    const std::vector<PointStats>& grid);

void write_cooperation_csv(std::ostream& out, const RunHeader& header,
                           const std::vector<CooperationRow>& rows);

void write_missing_rss_csv(std::ostream& out, const RunHeader& header,
                           const std::vector<MissingRssRow>& rows);

// Summary JSON: config echo + aggregate metrics + failure counts.
std::string summary_json(const ExperimentConfig& cfg, const RunHeader& header,
                         const std::string& experiment, const std::vector<PointStats>& grid,
                         long total_trials, long total_failures);

std::string mobile_summary_json(const ExperimentConfig& cfg, const RunHeader& header,
                                const MobileResult& result);

std::string solve_report_json(const SolveReport& report);

}  // namespace cotar
