// CLI front end. All experiment logic lives behind the C API in cotar.h;
// this file only parses flags, dispatches, and reports.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cotar.h"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir = "./out";
  std::uint64_t seed = 0;
  bool seed_set = false;
  int threads = -1;
  bool quiet = false;
};

void add_common(CLI::App* cmd, CommonArgs* args) {
  cmd->add_option("--config", args->config_path, "experiment config (JSON)")
      ->required();
  cmd->add_option("--out", args->out_dir, "output directory (default ./out)");
  cmd->add_option("--seed", args->seed, "seed override")
      ->each([args](const std::string&) { args->seed_set = true; });
  cmd->add_option("--threads", args->threads, "worker threads (0 = auto)");
  cmd->add_flag("--quiet", args->quiet, "suppress progress output");
}

int resolve_threads(const CommonArgs& args) {
  if (args.threads >= 0) return args.threads;
  if (const char* env = std::getenv("COTAR_THREADS")) {
    return std::atoi(env);
  }
  return 0;
}

// Loads the config and applies overrides; on failure prints one
// machine-parsable line and returns nullptr.
cotar_config* load(const CommonArgs& args, int* exit_code) {
  cotar_config* config = nullptr;
  char err[512];
  const cotar_status st = cotar_config_load(args.config_path.c_str(), &config, err, sizeof err);
  if (st != COTAR_OK) {
    std::fprintf(stderr, "error: config: %s\n", err);
    *exit_code = static_cast<int>(st);
    return nullptr;
  }
  if (args.seed_set) cotar_config_set_seed(config, args.seed);
  cotar_config_set_threads(config, resolve_threads(args));
  return config;
}

int report(cotar_status st, const char* err, const CommonArgs& args, const char* what) {
  if (st != COTAR_OK) {
    std::fprintf(stderr, "error: %s: %s\n", what, err);
    return static_cast<int>(st);
  }
  if (!args.quiet) std::printf("%s: artifacts written to %s\n", what, args.out_dir.c_str());
  return 0;
}

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos < csv.size()) {
    const std::size_t comma = csv.find(',', pos);
    out.push_back(std::atoi(csv.substr(pos, comma - pos).c_str()));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& csv) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < csv.size()) {
    const std::size_t comma = csv.find(',', pos);
    out.push_back(std::atof(csv.substr(pos, comma - pos).c_str()));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"COTAR cooperative TOA+RSS localization simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", cotar_version());

  CommonArgs crb_args, static_args, coop_args, miss_args, mobile_args, validate_args;
  std::string n_list, delta_list, p_list;
  int tracks = 0;

  CLI::App* crb = app.add_subcommand("crb-map", "bound maps for all four schemes");
  add_common(crb, &crb_args);

  CLI::App* stat = app.add_subcommand("simulate-static", "Monte-Carlo localization over the lattice");
  add_common(stat, &static_args);

  CLI::App* coop = app.add_subcommand("sweep-cooperation", "bound + RMS per (N, delta) at center");
  add_common(coop, &coop_args);
  coop->add_option("--n-list", n_list, "comma list of cluster sizes (default 1,2,4,9,16,25)");
  coop->add_option("--delta-list", delta_list, "comma list of grid spacings (default from config)");

  CLI::App* miss = app.add_subcommand("sweep-missing-rss", "RMS vs missing neighbor-RSS probability");
  add_common(miss, &miss_args);
  miss->add_option("--p-list", p_list, "comma list of probabilities (default 0,0.1,...,1)");

  CLI::App* mobile = app.add_subcommand("simulate-mobile", "tracking with wall-reflection motion");
  add_common(mobile, &mobile_args);
  mobile->add_option("--tracks", tracks, "number of tracks (default 200)");

  CLI::App* validate = app.add_subcommand("validate-config", "parse and validate a config file");
  validate->add_option("--config", validate_args.config_path, "experiment config (JSON)")
      ->required();
  validate->add_flag("--quiet", validate_args.quiet, "suppress output");

  CLI11_PARSE(app, argc, argv);

  char err[512] = {0};
  int exit_code = 0;

  if (validate->parsed()) {
    cotar_config* config = nullptr;
    const cotar_status st =
        cotar_config_load(validate_args.config_path.c_str(), &config, err, sizeof err);
    if (st != COTAR_OK) {
      std::fprintf(stderr, "error: config: %s\n", err);
      return static_cast<int>(st);
    }
    cotar_config_free(config);
    if (!validate_args.quiet) std::printf("config ok: %s\n", validate_args.config_path.c_str());
    return 0;
  }

  const CommonArgs& args = crb->parsed()      ? crb_args
                           : stat->parsed()   ? static_args
                           : coop->parsed()   ? coop_args
                           : miss->parsed()   ? miss_args
                                              : mobile_args;
  cotar_config* config = load(args, &exit_code);
  if (config == nullptr) return exit_code;

  cotar_status st = COTAR_OK;
  const char* what = "";
  if (crb->parsed()) {
    what = "crb-map";
    st = cotar_run_crb_map(config, args.out_dir.c_str(), err, sizeof err);
  } else if (stat->parsed()) {
    what = "simulate-static";
    st = cotar_run_static(config, args.out_dir.c_str(), err, sizeof err);
  } else if (coop->parsed()) {
    what = "sweep-cooperation";
    const std::vector<int> ns = parse_int_list(n_list);
    const std::vector<double> deltas = parse_double_list(delta_list);
    st = cotar_run_cooperation_sweep(config, ns.empty() ? nullptr : ns.data(), ns.size(),
                                     deltas.empty() ? nullptr : deltas.data(), deltas.size(),
                                     args.out_dir.c_str(), err, sizeof err);
  } else if (miss->parsed()) {
    what = "sweep-missing-rss";
    const std::vector<double> ps = parse_double_list(p_list);
    st = cotar_run_missing_rss_sweep(config, ps.empty() ? nullptr : ps.data(), ps.size(),
                                     args.out_dir.c_str(), err, sizeof err);
  } else if (mobile->parsed()) {
    what = "simulate-mobile";
    st = cotar_run_mobile(config, tracks, args.out_dir.c_str(), err, sizeof err);
  }
  exit_code = report(st, err, args, what);
  cotar_config_free(config);
  return exit_code;
}
