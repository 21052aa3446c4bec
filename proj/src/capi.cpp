#include "cotar.h"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <sstream>

#include "cotar/montecarlo.hpp"
#include "cotar/report_io.hpp"
#include "cotar/version.hpp"

struct cotar_config {
  cotar::ExperimentConfig cfg;
  std::uint64_t config_hash = 0;
};

namespace {

namespace fs = std::filesystem;

void put_error(const std::string& msg, char* err, size_t err_len) {
  if (err == nullptr || err_len == 0) return;
  const size_t n = std::min(err_len - 1, msg.size());
  std::memcpy(err, msg.data(), n);
  err[n] = '\0';
}

cotar_status status_of(const std::exception& e, char* err, size_t err_len) {
  put_error(e.what(), err, err_len);
  return dynamic_cast<const cotar::config_error*>(&e) != nullptr ? COTAR_ERR_CONFIG
                                                                 : COTAR_ERR_RUNTIME;
}

cotar::RunHeader header_of(const cotar_config* config) {
  return {cotar::kVersion, config->config_hash, config->cfg.seed};
}

fs::path prepare_out_dir(const char* out_dir) {
  if (out_dir == nullptr || *out_dir == '\0')
    throw cotar::error("output directory not specified");
  fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw cotar::error(std::string(out_dir) + ": cannot create output directory");
  return dir;
}

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& writer) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw cotar::error(path.string() + ": cannot open for writing");
  writer(out);
  if (!out) throw cotar::error(path.string() + ": write failure");
}

template <typename Fn>
cotar_status run_guarded(char* err, size_t err_len, Fn&& fn) {
  try {
    fn();
    return COTAR_OK;
  } catch (const std::exception& e) {
    return status_of(e, err, err_len);
  } catch (...) {
    put_error("unknown failure", err, err_len);
    return COTAR_ERR_RUNTIME;
  }
}

}  // namespace

extern "C" {

const char* cotar_version(void) { return cotar::kVersion; }

cotar_status cotar_config_load(const char* path, cotar_config** out_config, char* err,
                               size_t err_len) {
  if (out_config == nullptr) {
    put_error("out_config is null", err, err_len);
    return COTAR_ERR_CONFIG;
  }
  *out_config = nullptr;
  return run_guarded(err, err_len, [&] {
    if (path == nullptr) throw cotar::config_error("config path is null");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw cotar::config_error(std::string(path) + ": cannot open config file");
    std::ostringstream buf;
    buf << in.rdbuf();
    auto handle = std::make_unique<cotar_config>();
    handle->cfg = cotar::parse_config(buf.str(), path);
    handle->config_hash = cotar::fnv1a_64(buf.str());
    *out_config = handle.release();
  });
}

void cotar_config_free(cotar_config* config) { delete config; }

void cotar_config_set_seed(cotar_config* config, uint64_t seed) {
  if (config != nullptr) config->cfg.seed = seed;
}

void cotar_config_set_threads(cotar_config* config, int threads) {
  if (config != nullptr) config->cfg.threads = threads;
}

cotar_status cotar_run_crb_map(const cotar_config* config, const char* out_dir, char* err,
                               size_t err_len) {
  return run_guarded(err, err_len, [&] {
    const fs::path dir = prepare_out_dir(out_dir);
    const cotar::RunHeader header = header_of(config);
    for (cotar::Scheme scheme : {cotar::Scheme::RssOnly, cotar::Scheme::ToaOnly,
                                 cotar::Scheme::HybridToaRss, cotar::Scheme::Cotar}) {
      const auto grid = cotar::bounds_grid(config->cfg, scheme);
      const std::string name = std::string("crb_map_") + cotar::scheme_name(scheme) + ".csv";
      write_file(dir / name, [&](std::ostream& out) {
        cotar::write_grid_csv(out, header, cotar::scheme_name(scheme), config->cfg.condition,
                              "crb", grid);
      });
    }
  });
}

cotar_status cotar_run_static(const cotar_config* config, const char* out_dir, char* err,
                              size_t err_len) {
  return run_guarded(err, err_len, [&] {
    const fs::path dir = prepare_out_dir(out_dir);
    const cotar::RunHeader header = header_of(config);
    const cotar::StaticResult result = cotar::run_static(config->cfg);
    write_file(dir / "trials.csv", [&](std::ostream& out) {
      cotar::write_trials_csv(out, header, result.records);
    });
    write_file(dir / "rms_grid.csv", [&](std::ostream& out) {
      cotar::write_grid_csv(out, header, cotar::scheme_name(config->cfg.scheme),
                            config->cfg.condition, "rms", result.grid);
    });
    write_file(dir / "summary.json", [&](std::ostream& out) {
      out << cotar::summary_json(config->cfg, header, "simulate-static", result.grid,
                                 result.total_trials, result.total_failures);
    });
  });
}

cotar_status cotar_run_cooperation_sweep(const cotar_config* config, const int* n_values,
                                         size_t n_count, const double* delta_values,
                                         size_t delta_count, const char* out_dir, char* err,
                                         size_t err_len) {
  return run_guarded(err, err_len, [&] {
    const fs::path dir = prepare_out_dir(out_dir);
    const cotar::RunHeader header = header_of(config);
    std::vector<int> ns = n_values != nullptr && n_count > 0
                              ? std::vector<int>(n_values, n_values + n_count)
                              : std::vector<int>{1, 2, 4, 9, 16, 25};
    std::vector<double> deltas =
        delta_values != nullptr && delta_count > 0
            ? std::vector<double>(delta_values, delta_values + delta_count)
            : std::vector<double>{config->cfg.grid_spacing_m};
    const auto rows = cotar::run_cooperation_sweep(config->cfg, ns, deltas);
    write_file(dir / "cooperation.csv", [&](std::ostream& out) {
      cotar::write_cooperation_csv(out, header, rows);
    });
    long failures = 0;
    for (const auto& row : rows) failures += row.failures;
    write_file(dir / "summary.json", [&](std::ostream& out) {
      out << cotar::summary_json(config->cfg, header, "sweep-cooperation", {},
                                 static_cast<long>(rows.size()) * config->cfg.trials, failures);
    });
  });
}

cotar_status cotar_run_missing_rss_sweep(const cotar_config* config, const double* p_values,
                                         size_t p_count, const char* out_dir, char* err,
                                         size_t err_len) {
  return run_guarded(err, err_len, [&] {
    const fs::path dir = prepare_out_dir(out_dir);
    const cotar::RunHeader header = header_of(config);
    std::vector<double> ps;
    if (p_values != nullptr && p_count > 0) {
      ps.assign(p_values, p_values + p_count);
    } else {
      for (int i = 0; i <= 10; ++i) ps.push_back(0.1 * i);
    }
    const auto rows = cotar::run_missing_rss_sweep(config->cfg, ps);
    write_file(dir / "missing_rss.csv", [&](std::ostream& out) {
      cotar::write_missing_rss_csv(out, header, rows);
    });
    long failures = 0;
    for (const auto& row : rows) failures += row.failures;
    write_file(dir / "summary.json", [&](std::ostream& out) {
      out << cotar::summary_json(config->cfg, header, "sweep-missing-rss", {},
                                 static_cast<long>(rows.size()) * config->cfg.trials, failures);
    });
  });
}

cotar_status cotar_run_mobile(const cotar_config* config, int tracks, const char* out_dir,
                              char* err, size_t err_len) {
  return run_guarded(err, err_len, [&] {
    const fs::path dir = prepare_out_dir(out_dir);
    const cotar::RunHeader header = header_of(config);
    const cotar::MobileResult result =
        cotar::run_mobile(config->cfg, tracks > 0 ? tracks : 200);
    write_file(dir / "trials.csv", [&](std::ostream& out) {
      cotar::write_trials_csv(out, header, result.records);
    });
    write_file(dir / "summary.json", [&](std::ostream& out) {
      out << cotar::mobile_summary_json(config->cfg, header, result);
    });
  });
}

}  // extern "C"
