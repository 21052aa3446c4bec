#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "cotar.h"
#include "doctest.h"

namespace fs = std::filesystem;

namespace {

fs::path make_temp_dir(const std::string& tag) {
  fs::path dir = fs::temp_directory_path() / ("cotar_capi_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_file(const fs::path& dir, const std::string& name, const std::string& text) {
  const fs::path p = dir / name;
  std::ofstream out(p);
  out << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const char* kSmallConfig = R"({
  "area_side_m": 50, "references": "corners", "n_targets": 2,
  "grid_spacing_m": 1, "channel": "clear", "scheme": "cotar",
  "iterations": 2, "trials": 40, "seed": 5, "grid_pitch_m": 25
})";

}  // namespace

TEST_SUITE("capi") {

TEST_CASE("version string") {
  CHECK(std::string(cotar_version()) == "0.1.0");
}

TEST_CASE("config load failure paths") {
  char err[256] = {0};
  cotar_config* cfg = nullptr;
  CHECK(cotar_config_load("/nonexistent/path.json", &cfg, err, sizeof err) == COTAR_ERR_CONFIG);
  CHECK(cfg == nullptr);
  CHECK(std::string(err).find("cannot open") != std::string::npos);

  const fs::path dir = make_temp_dir("badcfg");
  const fs::path bad = write_file(dir, "bad.json", R"({"references": [[0,0],[1,1]]})");
  CHECK(cotar_config_load(bad.string().c_str(), &cfg, err, sizeof err) == COTAR_ERR_CONFIG);
  CHECK(std::string(err).find("references") != std::string::npos);
}

TEST_CASE("static run writes artifacts with provenance headers") {
  const fs::path dir = make_temp_dir("static");
  const fs::path cfg_path = write_file(dir, "cfg.json", kSmallConfig);
  char err[256] = {0};
  cotar_config* cfg = nullptr;
  REQUIRE(cotar_config_load(cfg_path.string().c_str(), &cfg, err, sizeof err) == COTAR_OK);
  cotar_config_set_threads(cfg, 2);

  const fs::path out = dir / "out";
  REQUIRE(cotar_run_static(cfg, out.string().c_str(), err, sizeof err) == COTAR_OK);
  for (const char* name : {"trials.csv", "rms_grid.csv", "summary.json"}) {
    CHECK(fs::exists(out / name));
  }
  const std::string trials = slurp(out / "trials.csv");
  CHECK(trials.rfind("# cotar 0.1.0 config_hash=", 0) == 0);
  CHECK(trials.find("seed=5") != std::string::npos);
  CHECK(trials.find("trial,step,node,true_x,true_y,est_x,est_y,err_m,iters") != std::string::npos);

  SUBCASE("same seed replays byte-identically; seed override changes the draw") {
    const fs::path out2 = dir / "out2";
    REQUIRE(cotar_run_static(cfg, out2.string().c_str(), err, sizeof err) == COTAR_OK);
    CHECK(slurp(out2 / "trials.csv") == trials);

    cotar_config_set_seed(cfg, 6);
    const fs::path out3 = dir / "out3";
    REQUIRE(cotar_run_static(cfg, out3.string().c_str(), err, sizeof err) == COTAR_OK);
    CHECK(slurp(out3 / "trials.csv") != trials);
  }
  cotar_config_free(cfg);
}

TEST_CASE("crb map run emits one grid per scheme") {
  const fs::path dir = make_temp_dir("crb");
  const fs::path cfg_path = write_file(dir, "cfg.json", kSmallConfig);
  char err[256] = {0};
  cotar_config* cfg = nullptr;
  REQUIRE(cotar_config_load(cfg_path.string().c_str(), &cfg, err, sizeof err) == COTAR_OK);
  const fs::path out = dir / "out";
  REQUIRE(cotar_run_crb_map(cfg, out.string().c_str(), err, sizeof err) == COTAR_OK);
  for (const char* name :
       {"crb_map_rss.csv", "crb_map_toa.csv", "crb_map_hybrid.csv", "crb_map_cotar.csv"}) {
    CHECK(fs::exists(out / name));
  }
  const std::string grid = slurp(out / "crb_map_toa.csv");
  CHECK(grid.find("x,y,scheme,condition,metric,value_m") != std::string::npos);
  CHECK(grid.find("toa,clear,crb") != std::string::npos);
  cotar_config_free(cfg);
}

TEST_CASE("sweeps and mobile through the C surface") {
  const fs::path dir = make_temp_dir("sweeps");
  const fs::path cfg_path = write_file(dir, "cfg.json", R"({
    "area_side_m": 50, "n_targets": 2, "trials": 30, "seed": 3,
    "mobility": {"speed_kmh": 30, "sample_interval_s": 5, "duration_s": 60}
  })");
  char err[256] = {0};
  cotar_config* cfg = nullptr;
  REQUIRE(cotar_config_load(cfg_path.string().c_str(), &cfg, err, sizeof err) == COTAR_OK);

  const int ns[] = {1, 2};
  const double deltas[] = {1.0};
  REQUIRE(cotar_run_cooperation_sweep(cfg, ns, 2, deltas, 1, (dir / "coop").string().c_str(),
                                      err, sizeof err) == COTAR_OK);
  CHECK(fs::exists(dir / "coop" / "cooperation.csv"));

  const double ps[] = {0.0, 0.5, 1.0};
  REQUIRE(cotar_run_missing_rss_sweep(cfg, ps, 3, (dir / "miss").string().c_str(), err,
                                      sizeof err) == COTAR_OK);
  CHECK(fs::exists(dir / "miss" / "missing_rss.csv"));

  REQUIRE(cotar_run_mobile(cfg, 2, (dir / "mob").string().c_str(), err, sizeof err) == COTAR_OK);
  CHECK(fs::exists(dir / "mob" / "trials.csv"));
  CHECK(fs::exists(dir / "mob" / "summary.json"));
  cotar_config_free(cfg);
}

TEST_CASE("mobile without a mobility block is a config error") {
  const fs::path dir = make_temp_dir("nomob");
  const fs::path cfg_path = write_file(dir, "cfg.json", kSmallConfig);
  char err[256] = {0};
  cotar_config* cfg = nullptr;
  REQUIRE(cotar_config_load(cfg_path.string().c_str(), &cfg, err, sizeof err) == COTAR_OK);
  CHECK(cotar_run_mobile(cfg, 2, (dir / "out").string().c_str(), err, sizeof err) ==
        COTAR_ERR_CONFIG);
  CHECK(std::string(err).find("mobility") != std::string::npos);
  cotar_config_free(cfg);
}

}  // TEST_SUITE
