#include "cotar/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace cotar {

namespace {

using nlohmann::json;

[[noreturn]] void bad_field(const std::string& field, const std::string& why) {
  throw config_error(field + ": " + why);
}

double number_field(const json& j, const std::string& field) {
  if (!j.is_number()) bad_field(field, "expected a number");
  return j.get<double>();
}

void check_known_keys(const json& obj, const std::set<std::string>& known,
                      const std::string& scope) {
  for (const auto& item : obj.items()) {
    if (known.find(item.key()) == known.end())
      bad_field(scope.empty() ? item.key() : scope + "." + item.key(), "unknown key");
  }
}

ChannelParams parse_channel(const json& j, std::string* condition) {
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    *condition = name;
    if (name == "clear") return ChannelParams::clear_los();
    if (name == "obstructed") return ChannelParams::obstructed();
    bad_field("channel", "unknown preset \"" + name + "\" (expected clear|obstructed)");
  }
  if (!j.is_object()) bad_field("channel", "expected preset name or object");
  check_known_keys(j, {"k_factor", "toa_std_ns", "shadow_std_db", "eta", "g0_db",
                       "mean_excess_delay_ns"},
                   "channel");
  ChannelParams p = ChannelParams::clear_los();
  *condition = "custom";
  if (j.contains("eta")) p.eta = number_field(j["eta"], "channel.eta");
  if (j.contains("g0_db")) p.g0_db = number_field(j["g0_db"], "channel.g0_db");
  if (j.contains("shadow_std_db"))
    p.sigma_g_db = number_field(j["shadow_std_db"], "channel.shadow_std_db");
  if (j.contains("toa_std_ns"))
    p.sigma_tau_s = 1e-9 * number_field(j["toa_std_ns"], "channel.toa_std_ns");
  if (j.contains("k_factor")) p.k_factor = number_field(j["k_factor"], "channel.k_factor");
  if (j.contains("mean_excess_delay_ns"))
    p.mean_excess_delay_s =
        1e-9 * number_field(j["mean_excess_delay_ns"], "channel.mean_excess_delay_ns");
  return p;
}

ReferenceLayout parse_references(const json& j, double area_side) {
  if (j.is_string()) {
    if (j.get<std::string>() == "corners") return corner_references(area_side);
    bad_field("references", "unknown keyword \"" + j.get<std::string>() + "\" (expected corners)");
  }
  if (!j.is_array()) bad_field("references", "expected \"corners\" or a list of [x,y] pairs");
  ReferenceLayout refs;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& pt = j[i];
    if (!pt.is_array() || pt.size() != 2 || !pt[0].is_number() || !pt[1].is_number())
      bad_field("references[" + std::to_string(i) + "]", "expected an [x,y] pair");
    refs.x.push_back(pt[0].get<double>());
    refs.y.push_back(pt[1].get<double>());
  }
  return refs;
}

MobilitySpec parse_mobility(const json& j) {
  if (!j.is_object()) bad_field("mobility", "expected an object");
  check_known_keys(j, {"speed_kmh", "sample_interval_s", "duration_s", "heading_rad"},
                   "mobility");
  MobilitySpec m;
  if (!j.contains("speed_kmh")) bad_field("mobility.speed_kmh", "required");
  m.speed_kmh = number_field(j["speed_kmh"], "mobility.speed_kmh");
  if (j.contains("sample_interval_s"))
    m.sample_interval_s = number_field(j["sample_interval_s"], "mobility.sample_interval_s");
  if (j.contains("duration_s")) m.duration_s = number_field(j["duration_s"], "mobility.duration_s");
  if (j.contains("heading_rad")) m.heading_rad = number_field(j["heading_rad"], "mobility.heading_rad");
  return m;
}

}  // namespace

std::vector<std::array<double, 2>> ExperimentConfig::formation() const {
  return grid_formation(n_targets, grid_spacing_m);
}

void ExperimentConfig::validate() const {
  if (!(area_side_m > 0.0)) bad_field("area_side_m", "must be > 0");
  references.validate();
  if (n_targets < 1) bad_field("n_targets", "must be >= 1");
  if (!(grid_spacing_m > 0.0)) bad_field("grid_spacing_m", "must be > 0");
  channel.validate();
  if (iterations < 1) bad_field("iterations", "must be >= 1");
  if (trials < 1) bad_field("trials", "must be >= 1");
  if (p_missing_rss < 0.0 || p_missing_rss > 1.0) bad_field("p_missing_rss", "must be in [0,1]");
  if (!(grid_pitch_m > 0.0)) bad_field("grid_pitch_m", "must be > 0");
  if (mobility) {
    if (mobility->speed_kmh < 0.0) bad_field("mobility.speed_kmh", "must be >= 0");
    if (!(mobility->sample_interval_s > 0.0))
      bad_field("mobility.sample_interval_s", "must be > 0");
    if (mobility->sample_interval_s > mobility->duration_s)
      bad_field("mobility.duration_s", "must be >= sample_interval_s");
  }
}

ReferenceLayout corner_references(double area_side_m) {
  return ReferenceLayout{{0.0, area_side_m, 0.0, area_side_m},
                         {0.0, 0.0, area_side_m, area_side_m}};
}

ReferenceLayout grid_references(double area_side_m) {
  ReferenceLayout refs;
  const double half = area_side_m / 2.0;
  for (double y : {0.0, half, area_side_m}) {
    for (double x : {0.0, half, area_side_m}) {
      refs.x.push_back(x);
      refs.y.push_back(y);
    }
  }
  return refs;
}

ExperimentConfig parse_config(const std::string& json_text, const std::string& origin) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw config_error(origin + ": JSON parse failure: " + e.what());
  }
  if (!j.is_object()) throw config_error(origin + ": top level must be an object");
  check_known_keys(j, {"area_side_m", "references", "n_targets", "grid_spacing_m", "channel",
                       "scheme", "iterations", "trials", "seed", "p_missing_rss", "mobility",
                       "grid_pitch_m"},
                   "");

  ExperimentConfig cfg;
  if (j.contains("area_side_m")) cfg.area_side_m = number_field(j["area_side_m"], "area_side_m");
  cfg.references = j.contains("references") ? parse_references(j["references"], cfg.area_side_m)
                                            : corner_references(cfg.area_side_m);
  if (j.contains("n_targets")) {
    if (!j["n_targets"].is_number_integer()) bad_field("n_targets", "expected an integer");
    cfg.n_targets = j["n_targets"].get<int>();
  }
  if (j.contains("grid_spacing_m"))
    cfg.grid_spacing_m = number_field(j["grid_spacing_m"], "grid_spacing_m");
  if (j.contains("channel")) cfg.channel = parse_channel(j["channel"], &cfg.condition);
  if (j.contains("scheme")) {
    if (!j["scheme"].is_string()) bad_field("scheme", "expected a string");
    cfg.scheme = scheme_from_name(j["scheme"].get<std::string>());
  }
  if (j.contains("iterations")) {
    if (!j["iterations"].is_number_integer()) bad_field("iterations", "expected an integer");
    cfg.iterations = j["iterations"].get<int>();
  }
  if (j.contains("trials")) {
    if (!j["trials"].is_number_integer()) bad_field("trials", "expected an integer");
    cfg.trials = j["trials"].get<int>();
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
      bad_field("seed", "expected an unsigned integer");
    cfg.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("p_missing_rss"))
    cfg.p_missing_rss = number_field(j["p_missing_rss"], "p_missing_rss");
  if (j.contains("grid_pitch_m")) cfg.grid_pitch_m = number_field(j["grid_pitch_m"], "grid_pitch_m");
  if (j.contains("mobility")) cfg.mobility = parse_mobility(j["mobility"]);
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error(path + ": cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

std::vector<double> lattice_coords(double area_side_m, double pitch_m) {
  std::vector<double> coords;
  const int count = static_cast<int>(std::floor(area_side_m / pitch_m + 1e-9));
  coords.reserve(static_cast<std::size_t>(count) + 1);
  for (int i = 0; i <= count; ++i) coords.push_back(i * pitch_m);
  return coords;
}

}  // namespace cotar
