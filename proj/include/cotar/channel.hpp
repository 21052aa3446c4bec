#pragma once

#include "cotar/random.hpp"
#include "cotar/types.hpp"

namespace cotar {

// Wave propagation speed, m/s.
inline constexpr double kWaveSpeed = 299792458.0;

// Path-loss and measurement-error model parameters. Internal units are
// meters, seconds and dB throughout; nanoseconds appear only at I/O.
struct ChannelParams {
  double eta = 3.086;             // path-loss exponent
  double g0_db = 0.0;             // calibration loss; does not affect accuracy
  double sigma_g_db = 8.0;        // shadowing std
  double sigma_tau_s = 8.8e-9;    // TOA error std
  double k_factor = 5.0;          // Rician factor (informational)
  double mean_excess_delay_s = 25.8e-9;  // informational

  static ChannelParams clear_los();
  static ChannelParams obstructed();

  void validate() const;
};

// Mean attenuation in dB at distance d: 10*eta*log10(d) + g0.
double mean_path_loss_db(double d, const ChannelParams& params);

// Mean path loss plus a shadowing draw N(0, sigma_g^2).
double sample_path_loss_db(double d, const ChannelParams& params, RandomStream& rng);

// Std of the RSS-based distance estimate at range d: ln(10)*sigma_g*d/(10*eta).
double rss_distance_std(double d, const ChannelParams& params);

// Propagation time d/c plus a timing-error draw N(0, sigma_tau^2).
double sample_toa(double d, const ChannelParams& params, RandomStream& rng);

}  // namespace cotar
