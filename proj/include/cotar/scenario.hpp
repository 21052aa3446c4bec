#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cotar/channel.hpp"
#include "cotar/types.hpp"

namespace cotar {

struct MobilitySpec {
  double speed_kmh = 0.0;
  double sample_interval_s = 5.0;
  double duration_s = 600.0;
  std::optional<double> heading_rad;  // unset = random per track
};

struct ExperimentConfig {
  double area_side_m = 50.0;
  ReferenceLayout references;
  int n_targets = 4;
  double grid_spacing_m = 1.0;
  ChannelParams channel;
  std::string condition = "clear";
  Scheme scheme = Scheme::Cotar;
  int iterations = 2;
  int trials = 1000;
  std::uint64_t seed = 0;
  double p_missing_rss = 0.0;
  double grid_pitch_m = 1.0;
  std::optional<MobilitySpec> mobility;
  int threads = 0;  // 0 = auto; set via API/CLI, not part of the file schema

  std::vector<std::array<double, 2>> formation() const;
  void validate() const;
};

// M reference nodes on the corners of the L x L square (M=4).
ReferenceLayout corner_references(double area_side_m);

// 3x3 reference grid at half-side pitch (the nine-reference study layout).
ReferenceLayout grid_references(double area_side_m);

// Parse + validate the documented JSON schema; defaults applied for omitted
// optional keys. Errors name the offending field.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& json_text, const std::string& origin = "<inline>");

// Lattice coordinates {0, pitch, 2*pitch, ...} up to area_side inclusive.
std::vector<double> lattice_coords(double area_side_m, double pitch_m);

}  // namespace cotar
