#include "cotar/report_io.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace cotar {

namespace {

// Fixed formatting so repeated runs produce byte-identical artifacts.
std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

}  // namespace

std::string RunHeader::line() const {
  std::ostringstream os;
  os << "# cotar " << version << " config_hash=" << std::hex << std::setw(16)
     << std::setfill('0') << config_hash << std::dec << " seed=" << seed;
  return os.str();
}

std::uint64_t fnv1a_64(const std::string& bytes) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

void write_trials_csv(std::ostream& out, const RunHeader& header,
                      const std::vector<TrialRecord>& records) {
  out << header.line() << '\n';
  out << "trial,step,node,true_x,true_y,est_x,est_y,err_m,iters\n";
  for (const TrialRecord& r : records) {
    out << r.trial << ',' << r.step << ',' << r.node << ',' << fmt(r.true_x) << ','
        << fmt(r.true_y) << ',' << fmt(r.est_x) << ',' << fmt(r.est_y) << ',' << fmt(r.err_m)
        << ',' << r.iters << '\n';
  }
}

void write_grid_csv(std::ostream& out, const RunHeader& header, const std::string& scheme,
                    const std::string& condition, const std::string& metric,
                    const std::vector<PointStats>& grid) {
  out << header.line() << '\n';
  out << "x,y,scheme,condition,metric,value_m\n";
  for (const PointStats& p : grid) {
    const double value = metric == "rms" ? p.rms_m : p.eps_m;
    out << fmt(p.x) << ',' << fmt(p.y) << ',' << scheme << ',' << condition << ',' << metric
        << ',' << fmt(value) << '\n';
  }
}

void write_cooperation_csv(std::ostream& out, const RunHeader& header,
                           const std::vector<CooperationRow>& rows) {
  out << header.line() << '\n';
  out << "n,delta_m,eps_m,rms_m,failures\n";
  for (const CooperationRow& r : rows) {
    out << r.n << ',' << fmt(r.delta) << ',' << fmt(r.eps_m) << ',' << fmt(r.rms_m) << ','
        << r.failures << '\n';
  }
}

void write_missing_rss_csv(std::ostream& out, const RunHeader& header,
                           const std::vector<MissingRssRow>& rows) {
  out << header.line() << '\n';
  out << "p_miss,rms_m,se_m,failures\n";
  for (const MissingRssRow& r : rows) {
    out << fmt(r.p_miss) << ',' << fmt(r.rms_m) << ',' << fmt(r.se_m) << ',' << r.failures
        << '\n';
  }
}

std::string summary_json(const ExperimentConfig& cfg, const RunHeader& header,
                         const std::string& experiment, const std::vector<PointStats>& grid,
                         long total_trials, long total_failures) {
  nlohmann::ordered_json j;
  j["tool"] = "cotar";
  j["version"] = header.version;
  std::ostringstream hash;
  hash << std::hex << std::setw(16) << std::setfill('0') << header.config_hash;
  j["config_hash"] = hash.str();
  j["experiment"] = experiment;

  nlohmann::ordered_json cfg_json;
  cfg_json["area_side_m"] = cfg.area_side_m;
  cfg_json["n_references"] = cfg.references.size();
  cfg_json["n_targets"] = cfg.n_targets;
  cfg_json["grid_spacing_m"] = cfg.grid_spacing_m;
  cfg_json["condition"] = cfg.condition;
  cfg_json["scheme"] = scheme_name(cfg.scheme);
  cfg_json["iterations"] = cfg.iterations;
  cfg_json["trials"] = cfg.trials;
  cfg_json["seed"] = cfg.seed;
  cfg_json["p_missing_rss"] = cfg.p_missing_rss;
  cfg_json["grid_pitch_m"] = cfg.grid_pitch_m;
  if (cfg.mobility) {
    cfg_json["mobility"] = {{"speed_kmh", cfg.mobility->speed_kmh},
                            {"sample_interval_s", cfg.mobility->sample_interval_s},
                            {"duration_s", cfg.mobility->duration_s}};
  }
  j["config"] = cfg_json;

  j["total_trials"] = total_trials;
  j["total_failures"] = total_failures;
  if (!grid.empty()) {
    double sum_sq = 0.0;
    long points = 0;
    nlohmann::ordered_json points_json = nlohmann::ordered_json::array();
    for (const PointStats& p : grid) {
      nlohmann::ordered_json pj;
      pj["x"] = p.x;
      pj["y"] = p.y;
      pj["rms_m"] = p.rms_m;
      pj["eps_m"] = std::isnan(p.eps_m) ? nlohmann::ordered_json() : nlohmann::ordered_json(p.eps_m);
      pj["trials_ok"] = p.trials_ok;
      pj["failures"] = p.failures;
      points_json.push_back(pj);
      if (p.trials_ok > 0) {
        sum_sq += p.rms_m * p.rms_m;
        ++points;
      }
    }
    j["points"] = points_json;
    j["mean_rms_m"] = points > 0 ? std::sqrt(sum_sq / static_cast<double>(points)) : 0.0;
  }
  return j.dump(2) + "\n";
}

std::string solve_report_json(const SolveReport& report) {
  nlohmann::ordered_json j;
  j["estimate_x"] = report.estimate.x;
  j["estimate_y"] = report.estimate.y;
  j["iterations"] = report.iterations;
  j["converged"] = report.converged;
  j["last_step_norm_m"] = report.last_step_norm;
  j["step_norms_m"] = report.step_norms;
  j["normal_condition"] = report.normal_condition;
  j["near_field_warning"] = report.near_field_warning;
  return j.dump(2) + "\n";
}

std::string mobile_summary_json(const ExperimentConfig& cfg, const RunHeader& header,
                                const MobileResult& result) {
  nlohmann::ordered_json j =
      nlohmann::ordered_json::parse(summary_json(cfg, header, "simulate-mobile", {}, 0, 0));
  j["samples"] = result.samples;
  j["total_failures"] = result.total_failures;
  j["rms_m"] = result.rms_m;
  j["interior_rms_m"] = result.interior_rms_m;
  j["interior_eps_m"] = result.interior_eps_m;
  return j.dump(2) + "\n";
}

}  // namespace cotar
