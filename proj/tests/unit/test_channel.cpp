#include <cmath>

#include "cotar/channel.hpp"
#include "doctest.h"

using namespace cotar;

TEST_SUITE("channel") {

TEST_CASE("mean path loss closed form") {
  ChannelParams p;
  p.eta = 3.086;
  p.g0_db = 0.0;
  CHECK(mean_path_loss_db(10.0, p) == doctest::Approx(30.86).epsilon(1e-12));
  CHECK(mean_path_loss_db(100.0, p) == doctest::Approx(61.72).epsilon(1e-12));
  p.g0_db = 40.0;
  CHECK(mean_path_loss_db(1.0, p) == doctest::Approx(40.0).epsilon(1e-12));
  CHECK_THROWS_AS(mean_path_loss_db(0.0, p), geometry_error);
  CHECK_THROWS_AS(mean_path_loss_db(-1.0, p), geometry_error);
}

TEST_CASE("mean path loss strictly increasing in d") {
  const ChannelParams p = ChannelParams::clear_los();
  double prev = mean_path_loss_db(0.01, p);
  for (double d = 0.02; d < 2000.0; d *= 1.7) {
    const double cur = mean_path_loss_db(d, p);
    CHECK(cur > prev);
    prev = cur;
  }
}

TEST_CASE("rss distance std linear in d") {
  ChannelParams p;
  p.eta = 3.086;
  p.sigma_g_db = 8.0;
  CHECK(rss_distance_std(10.0, p) == doctest::Approx(5.9691121).epsilon(1e-6));
  CHECK(rss_distance_std(1.0, p) == doctest::Approx(0.59691121).epsilon(1e-6));
  const double slope = std::log(10.0) * p.sigma_g_db / (10.0 * p.eta);
  for (double d : {0.5, 3.0, 77.0, 1234.0}) {
    CHECK(rss_distance_std(d, p) == doctest::Approx(slope * d).epsilon(1e-12));
  }
  p.sigma_g_db = 0.0;
  CHECK(rss_distance_std(42.0, p) == 0.0);
}

TEST_CASE("presets carry the measured error parameters") {
  const ChannelParams clear = ChannelParams::clear_los();
  CHECK(clear.k_factor == 5.0);
  CHECK(clear.mean_excess_delay_s == doctest::Approx(25.8e-9));
  CHECK(clear.sigma_tau_s == doctest::Approx(8.8e-9));
  const ChannelParams obs = ChannelParams::obstructed();
  CHECK(obs.k_factor == 2.0);
  CHECK(obs.mean_excess_delay_s == doctest::Approx(76.9e-9));
  CHECK(obs.sigma_tau_s == doctest::Approx(40.2e-9));
  // Distance-equivalent TOA error stds.
  CHECK(kWaveSpeed * clear.sigma_tau_s == doctest::Approx(2.638174).epsilon(1e-6));
  CHECK(kWaveSpeed * obs.sigma_tau_s == doctest::Approx(12.05166).epsilon(1e-6));
}

TEST_CASE("zero-variance sampling is exact") {
  ChannelParams p;
  p.eta = 3.086;
  p.sigma_g_db = 0.0;
  p.sigma_tau_s = 0.0;
  RandomStream rng(7);
  CHECK(sample_path_loss_db(10.0, p, rng) == doctest::Approx(30.86).epsilon(1e-12));
  CHECK(sample_toa(299.792458, p, rng) == doctest::Approx(1e-6).epsilon(1e-12));
}

TEST_CASE("seeded streams replay identically") {
  const ChannelParams p = ChannelParams::clear_los();
  RandomStream a(123), b(123);
  for (int i = 0; i < 100; ++i) {
    CHECK(sample_path_loss_db(17.0, p, a) == sample_path_loss_db(17.0, p, b));
    CHECK(sample_toa(17.0, p, a) == sample_toa(17.0, p, b));
  }
  RandomStream c(123), d(124);
  bool any_diff = false;
  for (int i = 0; i < 10; ++i) {
    any_diff = any_diff || (c.next_gaussian() != d.next_gaussian());
  }
  CHECK(any_diff);
  // fork is a pure function of (state, key)
  const RandomStream e(9);
  RandomStream f1 = e.fork(4);
  RandomStream f2 = e.fork(4);
  RandomStream f3 = e.fork(5);
  CHECK(f1.next_u64() == f2.next_u64());
  CHECK(f1.next_u64() != f3.next_u64());
}

TEST_CASE("empirical shadowing std matches sigma_g") {
  const ChannelParams p = ChannelParams::clear_los();  // sigma_g = 8 dB
  RandomStream rng(99);
  const int draws = 100000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < draws; ++i) {
    const double v = sample_path_loss_db(25.0, p, rng) - mean_path_loss_db(25.0, p);
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / draws;
  const double std = std::sqrt(sum2 / draws - mean * mean);
  CHECK(std == doctest::Approx(8.0).epsilon(0.1 / 8.0));
  CHECK(std::abs(mean) < 0.1);
}

TEST_CASE("empirical toa error std within 3 percent") {
  const ChannelParams p = ChannelParams::obstructed();
  RandomStream rng(5);
  const int draws = 20000;
  double sum2 = 0.0;
  for (int i = 0; i < draws; ++i) {
    const double v = sample_toa(100.0, p, rng) - 100.0 / kWaveSpeed;
    sum2 += v * v;
  }
  CHECK(std::sqrt(sum2 / draws) == doctest::Approx(p.sigma_tau_s).epsilon(0.03));
}

}  // TEST_SUITE
