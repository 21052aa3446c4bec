#pragma once

#include <Eigen/Dense>

#include "cotar/jacobian.hpp"
#include "cotar/observation.hpp"

namespace cotar::testing {

// Central finite differences of the forward model, step h in meters.
// Independent oracle for the analytic Jacobian.
inline Eigen::MatrixXd fd_jacobian(const PositionVector& pos, const ObservationLayout& layout,
                                   const ReferenceLayout& refs, const ChannelParams& params,
                                   double h = 1e-4) {
  const int n = static_cast<int>(pos.size());
  Eigen::MatrixXd fd(layout.rows(), 2 * n);
  for (int col = 0; col < 2 * n; ++col) {
    PositionVector plus = pos;
    PositionVector minus = pos;
    auto& pv = col < n ? plus.x : plus.y;
    auto& mv = col < n ? minus.x : minus.y;
    const auto idx = static_cast<std::size_t>(col % n);
    pv[idx] += h;
    mv[idx] -= h;
    fd.col(col) = (forward_model(plus, layout, refs, params) -
                   forward_model(minus, layout, refs, params)) /
                  (2.0 * h);
  }
  return fd;
}

// Max relative deviation between analytic and finite-difference Jacobians,
// per-row scaled so near-zero entries compare against the row's gradient
// magnitude rather than themselves.
inline double max_jacobian_mismatch(const PositionVector& pos, const ObservationLayout& layout,
                                    const ReferenceLayout& refs, const ChannelParams& params) {
  const Eigen::MatrixXd analytic = assemble_jacobian(pos, layout, refs, params);
  const Eigen::MatrixXd fd = fd_jacobian(pos, layout, refs, params);
  double worst = 0.0;
  for (int r = 0; r < analytic.rows(); ++r) {
    const double scale = analytic.row(r).norm();
    for (int c = 0; c < analytic.cols(); ++c) {
      const double denom = std::max(std::abs(analytic(r, c)), 1e-3 * scale);
      worst = std::max(worst, std::abs(analytic(r, c) - fd(r, c)) / denom);
    }
  }
  return worst;
}

}  // namespace cotar::testing
