#pragma once

#include <Eigen/Dense>
#include <vector>

#include "cotar/jacobian.hpp"
#include "cotar/observation.hpp"

namespace cotar {

// Per-cluster bound summary at one truth position.
struct BoundsReport {
  std::vector<double> per_node_crb_m;  // sqrt([P]_ii + [P]_{N+i,N+i})
  double rms_bound_m = 0.0;            // sqrt(trace(P)/N)
  Eigen::MatrixXd covariance;          // P = (G^T Lambda^-1 G)^-1
};

// Fisher information at the truth: G^T Lambda^-1 G for the scheme's rows.
// For this Gaussian model with position-independent covariance the closed
// form equals the expected-Hessian definition (guarded by a Monte-Carlo
// oracle in the tests).
Eigen::MatrixXd fisher(const PositionVector& truth, const ObservationLayout& layout,
                       const ReferenceLayout& refs, const ChannelParams& params);

// Per-node position std lower bound from the inverse FIM.
double crb_std(const Eigen::MatrixXd& fim, int node);

// Cluster RMS lower bound sqrt(trace(FIM^-1)/N).
double rms_bound(const PositionVector& truth, const ObservationLayout& layout,
                 const ReferenceLayout& refs, const ChannelParams& params);

BoundsReport evaluate_bounds(const PositionVector& truth, const ObservationLayout& layout,
                             const ReferenceLayout& refs, const ChannelParams& params);

// Linearization bias rho of the one-step estimator started at `init`
// (Taylor remainder mapped through the normal equations); diagnostic only.
Eigen::VectorXd linearization_bias(const PositionVector& truth, const PositionVector& init,
                                   const ObservationLayout& layout, const ReferenceLayout& refs,
                                   const ChannelParams& params);

}  // namespace cotar
