#include "cotar/channel.hpp"

#include <cmath>

namespace cotar {

ChannelParams ChannelParams::clear_los() {
  ChannelParams p;
  p.k_factor = 5.0;
  p.mean_excess_delay_s = 25.8e-9;
  p.sigma_tau_s = 8.8e-9;
  return p;
}

ChannelParams ChannelParams::obstructed() {
  ChannelParams p;
  p.k_factor = 2.0;
  p.mean_excess_delay_s = 76.9e-9;
  p.sigma_tau_s = 40.2e-9;
  return p;
}

void ChannelParams::validate() const {
  if (!(eta > 0.0)) throw config_error("channel.eta: must be > 0");
  if (sigma_g_db < 0.0) throw config_error("channel.shadow_std_db: must be >= 0");
  if (sigma_tau_s < 0.0) throw config_error("channel.toa_std_ns: must be >= 0");
}

double mean_path_loss_db(double d, const ChannelParams& params) {
  if (!(d > 0.0)) throw geometry_error("path loss undefined at distance <= 0 (coincident nodes)");
  return 10.0 * params.eta * std::log10(d) + params.g0_db;
}

double sample_path_loss_db(double d, const ChannelParams& params, RandomStream& rng) {
  return mean_path_loss_db(d, params) + params.sigma_g_db * rng.next_gaussian();
}

double rss_distance_std(double d, const ChannelParams& params) {
  if (!(d > 0.0)) throw geometry_error("rss_distance_std undefined at distance <= 0");
  return std::log(10.0) * params.sigma_g_db * d / (10.0 * params.eta);
}

double sample_toa(double d, const ChannelParams& params, RandomStream& rng) {
  return d / kWaveSpeed + params.sigma_tau_s * rng.next_gaussian();
}

}  // namespace cotar
