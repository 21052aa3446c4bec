#pragma once

#include <Eigen/Dense>
#include <vector>

#include "cotar/jacobian.hpp"
#include "cotar/observation.hpp"

namespace cotar {

struct SolveReport {
  PositionVector estimate;
  int iterations = 0;
  bool converged = false;
  double last_step_norm = 0.0;
  std::vector<double> step_norms;
  double normal_condition = 0.0;  // condition estimate of G^T Lambda^-1 G
  bool near_field_warning = false;
};

// One whitened Gauss-Newton update for the weighted least-squares problem
// min ||W^(1/2) (b - A d)||^2, solved by column-pivoted QR of W^(1/2) A.
// Returns the step d; `condition` receives the condition estimate of A^T W A.
Eigen::VectorXd wls_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& weights,
                          const Eigen::VectorXd& b, double* condition);

// Single Gauss-Newton step from `current` (masked rows excluded).
PositionVector gn_step(const PositionVector& current, const ObservationSet& obs,
                       const ReferenceLayout& refs, const ChannelParams& params);

// Exactly k Gauss-Newton steps (fixed count); converged means the final step
// norm fell below 1e-4 m, reported but never used for control flow.
// An iterate leaving a 10x-inflated box around the references raises
// divergence_error.
SolveReport solve(const PositionVector& init, const ObservationSet& obs,
                  const ReferenceLayout& refs, const ChannelParams& params, int iterations);

// Whitened squared residual [r - f(pos)]^T Lambda^-1 [r - f(pos)] over
// unmasked rows.
double objective(const PositionVector& pos, const ObservationSet& obs,
                 const ReferenceLayout& refs, const ChannelParams& params);

}  // namespace cotar
