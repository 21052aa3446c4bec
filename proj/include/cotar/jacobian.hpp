#pragma once

#include <Eigen/Dense>

#include "cotar/observation.hpp"

namespace cotar {

// dB per log-unit slope of the RSS model: d/dd [10*eta*log10(d)] = alpha'/d
// with alpha' = 10*eta/ln(10).
double rss_slope_const(const ChannelParams& params);

// Distance below which an active row raises geometry_error.
inline constexpr double kDegenerateDistance = 1e-6;
// Distance below which RSS gradients are considered unreliable (1/d blow-up);
// reported via SolveReport, never fatal.
inline constexpr double kNearFieldWarning = 0.1;

// Pairwise-RSS block: C(N,2) rows in lexicographic pair order, 2N columns.
// Each row has four nonzeros (columns p, q, N+p, N+q), antisymmetric in the
// pair, magnitude alpha'/d.
Eigen::MatrixXd neighbor_rss_rows(const PositionVector& pos, const ChannelParams& params);

// TOA block: MN rows grouped by target, entries (x - x_r)/(c d); every row
// has Euclidean norm exactly 1/c.
Eigen::MatrixXd toa_rows(const PositionVector& pos, const ReferenceLayout& refs);

// Remote-RSS block: MN rows grouped by target, entries alpha' (x - x_r)/d^2.
Eigen::MatrixXd remote_rss_rows(const PositionVector& pos, const ReferenceLayout& refs,
                                const ChannelParams& params);

// D x 2N partial-derivative matrix of the forward model. Column order:
// x(1..N) then y(1..N); row order identical to the layout.
Eigen::MatrixXd assemble_jacobian(const PositionVector& pos, const ObservationLayout& layout,
                                  const ReferenceLayout& refs, const ChannelParams& params);

}  // namespace cotar
