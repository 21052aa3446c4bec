#include <cmath>
#include <sstream>

#include "cotar/observation.hpp"
#include "cotar/scenario.hpp"
#include "doctest.h"

using namespace cotar;

namespace {

ChannelParams test_params() {
  ChannelParams p;
  p.eta = 3.086;
  p.g0_db = 0.0;
  return p;
}

}  // namespace

TEST_SUITE("observation") {

TEST_CASE("row counts per scheme") {
  for (int n : {1, 2, 4, 9}) {
    for (int m : {3, 4, 9}) {
      CHECK(ObservationLayout(Scheme::Cotar, n, m).rows() == n * (n - 1) / 2 + 2 * m * n);
      CHECK(ObservationLayout(Scheme::HybridToaRss, n, m).rows() == 2 * m * n);
      CHECK(ObservationLayout(Scheme::ToaOnly, n, m).rows() == m * n);
      CHECK(ObservationLayout(Scheme::RssOnly, n, m).rows() == m * n);
    }
  }
  CHECK(ObservationLayout(Scheme::Cotar, 2, 4).rows() == 17);
  CHECK(ObservationLayout(Scheme::Cotar, 1, 4).rows() == 8);  // no pair rows at N=1
}

TEST_CASE("row ordering: pairs lexicographic, then toa by target, then remote rss") {
  const ObservationLayout layout(Scheme::Cotar, 3, 4);
  CHECK(layout.row(0).kind == RowKind::NeighborRss);
  CHECK(layout.row(0).i == 0);
  CHECK(layout.row(0).j == 1);
  CHECK(layout.row(1).j == 2);
  CHECK(layout.row(2).i == 1);
  CHECK(layout.row(2).j == 2);
  CHECK(layout.row(3).kind == RowKind::Toa);
  CHECK(layout.row(3).i == 0);
  CHECK(layout.row(3).j == 0);
  CHECK(layout.row(6).j == 3);
  CHECK(layout.row(7).i == 1);
  CHECK(layout.row(15).kind == RowKind::RemoteRss);
  CHECK(layout.row(15).i == 0);
}

TEST_CASE("forward model values") {
  const ChannelParams p = test_params();
  SUBCASE("single toa row") {
    const ObservationLayout layout(Scheme::ToaOnly, 1, 3);
    const ReferenceLayout refs{{100.0, 0.0, 50.0}, {0.0, 100.0, 120.0}};
    const PositionVector pos{{0.0}, {0.0}};
    const auto f = forward_model(pos, layout, refs, p);
    CHECK(f[0] == doctest::Approx(333.564095e-9).epsilon(1e-9));
  }
  SUBCASE("neighbor rss at unit and 3-4-5 distances") {
    const ObservationLayout layout(Scheme::Cotar, 2, 3);
    const ReferenceLayout refs{{-100.0, 200.0, 0.0}, {0.0, 0.0, 150.0}};
    PositionVector pos{{0.0, 1.0}, {0.0, 0.0}};
    CHECK(forward_model(pos, layout, refs, p)[0] == doctest::Approx(0.0).epsilon(1e-12));
    pos = PositionVector{{0.0, 3.0}, {0.0, 4.0}};
    CHECK(forward_model(pos, layout, refs, p)[0] == doctest::Approx(21.5702).epsilon(1e-4));
  }
}

TEST_CASE("forward model invariant under rigid translation of targets and references") {
  const ChannelParams p = test_params();
  const ObservationLayout layout(Scheme::Cotar, 3, 4);
  const ReferenceLayout refs{{0, 50, 0, 50}, {0, 0, 50, 50}};
  const PositionVector pos{{10, 12, 31}, {20, 22, 7}};
  ReferenceLayout refs2 = refs;
  PositionVector pos2 = pos;
  for (auto& v : refs2.x) v += 13.5;
  for (auto& v : refs2.y) v -= 4.25;
  for (auto& v : pos2.x) v += 13.5;
  for (auto& v : pos2.y) v -= 4.25;
  const auto f1 = forward_model(pos, layout, refs, p);
  const auto f2 = forward_model(pos2, layout, refs2, p);
  CHECK((f1 - f2).lpNorm<Eigen::Infinity>() < 1e-9);
}

TEST_CASE("degenerate pair names the nodes") {
  const ChannelParams p = test_params();
  const ObservationLayout layout(Scheme::Cotar, 2, 3);
  const ReferenceLayout refs{{0, 50, 25}, {0, 0, 50}};
  const PositionVector pos{{10.0, 10.0}, {20.0, 20.0}};
  CHECK_THROWS_WITH_AS(forward_model(pos, layout, refs, p), doctest::Contains("(1,2)"),
                       geometry_error);
}

TEST_CASE("covariance composition") {
  ChannelParams p = ChannelParams::clear_los();
  const ObservationLayout layout(Scheme::Cotar, 2, 4);
  const auto lambda = build_covariance(layout, p);
  REQUIRE(lambda.size() == 17);
  CHECK(lambda[0] == doctest::Approx(64.0));
  for (int k = 1; k <= 8; ++k) CHECK(lambda[k] == doctest::Approx(8.8e-9 * 8.8e-9));
  for (int k = 9; k <= 16; ++k) CHECK(lambda[k] == doctest::Approx(64.0));

  p = ChannelParams::obstructed();
  const auto lambda_obs = build_covariance(layout, p);
  for (int k = 1; k <= 8; ++k) CHECK(lambda_obs[k] == doctest::Approx(40.2e-9 * 40.2e-9));
  CHECK(lambda_obs[0] == doctest::Approx(64.0));  // RSS rows unchanged

  const ObservationLayout toa(Scheme::ToaOnly, 1, 4);
  const auto lt = build_covariance(toa, ChannelParams::clear_los());
  for (int k = 1; k < 4; ++k) CHECK(lt[k] == lt[0]);
}

TEST_CASE("synthesize: masking and noiseless limits") {
  ChannelParams p = test_params();
  const ObservationLayout layout(Scheme::Cotar, 4, 4);
  const ReferenceLayout refs{{0, 50, 0, 50}, {0, 0, 50, 50}};
  const PositionVector pos{{25, 26, 25, 26}, {25, 25, 26, 26}};

  SUBCASE("p=0 keeps everything") {
    RandomStream rng(3);
    const auto obs = synthesize(pos, layout, refs, p, 0.0, rng);
    CHECK(obs.active_rows() == layout.rows());
  }
  SUBCASE("p=1 drops exactly the neighbor rows") {
    RandomStream rng(3);
    const auto obs = synthesize(pos, layout, refs, p, 1.0, rng);
    CHECK(obs.active_rows() == layout.rows() - 6);
    for (int k = 0; k < layout.rows(); ++k) {
      CHECK(obs.mask[k] == (layout.row(k).kind != RowKind::NeighborRss));
    }
  }
  SUBCASE("zero noise reproduces the forward model") {
    p.sigma_g_db = 0.0;
    p.sigma_tau_s = 0.0;
    RandomStream rng(3);
    const auto obs = synthesize(pos, layout, refs, p, 0.0, rng);
    CHECK((obs.values - forward_model(pos, layout, refs, p)).lpNorm<Eigen::Infinity>() == 0.0);
  }
  SUBCASE("masks are nested across p") {
    RandomStream rng(11);
    const auto lo = synthesize(pos, layout, refs, p, 0.3, rng);
    const auto hi = synthesize(pos, layout, refs, p, 0.7, rng);
    CHECK((lo.values - hi.values).lpNorm<Eigen::Infinity>() == 0.0);  // common random numbers
    for (int k = 0; k < layout.rows(); ++k) {
      if (!hi.mask[k]) continue;  // present at high p
      CHECK(lo.mask[k]);          // must be present at low p too
    }
  }
}

TEST_CASE("empirical row means converge to the forward model") {
  const ChannelParams p = ChannelParams::clear_los();
  const ObservationLayout layout(Scheme::Cotar, 2, 4);
  const ReferenceLayout refs{{0, 50, 0, 50}, {0, 0, 50, 50}};
  const PositionVector pos{{20, 21}, {30, 30}};
  const auto f = forward_model(pos, layout, refs, p);
  const auto lambda = build_covariance(layout, p);
  const int draws = 20000;
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(layout.rows());
  RandomStream base(78);
  for (int t = 0; t < draws; ++t) {
    RandomStream trial = base.fork(static_cast<std::uint64_t>(t));
    sum += synthesize(pos, layout, refs, p, 0.0, trial).values;
  }
  for (int k = 0; k < layout.rows(); ++k) {
    const double se = std::sqrt(lambda[k] / draws);
    CHECK(std::abs(sum[k] / draws - f[k]) < 3.0 * se);
  }
}

TEST_CASE("csv debug dump") {
  const ChannelParams p = ChannelParams::clear_los();
  const ObservationLayout layout(Scheme::Cotar, 2, 3);
  const ReferenceLayout refs{{0, 50, 25}, {0, 0, 50}};
  const PositionVector pos{{20, 21}, {30, 30}};
  RandomStream rng(1);
  const auto obs = synthesize(pos, layout, refs, p, 0.0, rng);
  std::ostringstream out;
  write_observation_csv(out, obs);
  const std::string text = out.str();
  CHECK(text.find("row_id,kind,i,j,value,sigma,masked") == 0);
  CHECK(text.find("neighbor_rss") != std::string::npos);
  CHECK(text.find("remote_rss") != std::string::npos);
}

}  // TEST_SUITE
