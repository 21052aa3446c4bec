#include <sstream>

#include "cotar/report_io.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace cotar;

TEST_SUITE("report_io") {

TEST_CASE("fnv1a is stable and byte-sensitive") {
  CHECK(fnv1a_64("") == 0xCBF29CE484222325ull);
  CHECK(fnv1a_64("a") != fnv1a_64("b"));
  CHECK(fnv1a_64("config") == fnv1a_64("config"));
}

TEST_CASE("header line format") {
  const RunHeader header{"0.1.0", 0xDEADBEEFull, 42};
  CHECK(header.line() == "# cotar 0.1.0 config_hash=00000000deadbeef seed=42");
}

TEST_CASE("trials csv layout") {
  const RunHeader header{"0.1.0", 1, 2};
  std::ostringstream out;
  write_trials_csv(out, header, {{0, 0, 1, 25.0, 25.0, 25.5, 24.5, 0.7071067811865476, 2}});
  const std::string text = out.str();
  CHECK(text.find("trial,step,node,true_x,true_y,est_x,est_y,err_m,iters\n") !=
        std::string::npos);
  CHECK(text.find("0,0,1,25,25,25.5,24.5,0.707106781187,2\n") != std::string::npos);
}

TEST_CASE("grid csv carries nan for unbounded points") {
  const RunHeader header{"0.1.0", 1, 2};
  PointStats p;
  p.x = 3.0;
  p.y = 4.0;
  p.eps_m = std::numeric_limits<double>::quiet_NaN();
  std::ostringstream out;
  write_grid_csv(out, header, "toa", "clear", "crb", {p});
  CHECK(out.str().find("3,4,toa,clear,crb,nan") != std::string::npos);
}

TEST_CASE("solve report serializes to json") {
  SolveReport report;
  report.estimate = PositionVector{{1.0, 2.0}, {3.0, 4.0}};
  report.iterations = 2;
  report.converged = true;
  report.last_step_norm = 5e-5;
  report.step_norms = {1.0, 5e-5};
  report.normal_condition = 123.0;
  const auto j = nlohmann::json::parse(solve_report_json(report));
  CHECK(j["estimate_x"].size() == 2);
  CHECK(j["estimate_y"][1] == 4.0);
  CHECK(j["converged"] == true);
  CHECK(j["iterations"] == 2);
  CHECK(j["step_norms_m"].size() == 2);
}

TEST_CASE("summary json echoes the config") {
  ExperimentConfig cfg;
  cfg.references = corner_references(50.0);
  const RunHeader header{"0.1.0", 7, 9};
  const auto j = nlohmann::json::parse(summary_json(cfg, header, "simulate-static", {}, 10, 1));
  CHECK(j["experiment"] == "simulate-static");
  CHECK(j["config"]["scheme"] == "cotar");
  CHECK(j["config"]["n_references"] == 4);
  CHECK(j["total_failures"] == 1);
}

}  // TEST_SUITE
