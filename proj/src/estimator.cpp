#include "cotar/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace cotar {

namespace {

constexpr double kConditionLimit = 1e12;   // on G^T Lambda^-1 G
constexpr double kConvergedStep = 1e-4;    // meters

struct ActiveSystem {
  Eigen::MatrixXd jac;        // active rows only
  Eigen::VectorXd residual;   // r - f(current), active rows
  Eigen::VectorXd weights;    // 1/lambda, active rows
  double min_distance;
};

double min_active_distance(const PositionVector& pos, const ObservationSet& obs,
                           const ReferenceLayout& refs) {
  double dmin = std::numeric_limits<double>::infinity();
  for (int k = 0; k < obs.layout.rows(); ++k) {
    if (!obs.mask[static_cast<std::size_t>(k)]) continue;
    const RowId& row = obs.layout.row(k);
    const auto i = static_cast<std::size_t>(row.i);
    double dx, dy;
    if (row.kind == RowKind::NeighborRss) {
      dx = pos.x[i] - pos.x[static_cast<std::size_t>(row.j)];
      dy = pos.y[i] - pos.y[static_cast<std::size_t>(row.j)];
    } else {
      dx = pos.x[i] - refs.x[static_cast<std::size_t>(row.j)];
      dy = pos.y[i] - refs.y[static_cast<std::size_t>(row.j)];
    }
    dmin = std::min(dmin, std::hypot(dx, dy));
  }
  return dmin;
}

ActiveSystem build_active(const PositionVector& pos, const ObservationSet& obs,
                          const ReferenceLayout& refs, const ChannelParams& params) {
  const Eigen::VectorXd f = forward_model(pos, obs.layout, refs, params);
  const Eigen::MatrixXd g = assemble_jacobian(pos, obs.layout, refs, params);
  const int active = obs.active_rows();
  if (active == 0) throw geometry_error("no active measurement rows");
  ActiveSystem sys{Eigen::MatrixXd(active, g.cols()), Eigen::VectorXd(active),
                   Eigen::VectorXd(active), min_active_distance(pos, obs, refs)};
  int a = 0;
  for (int k = 0; k < obs.layout.rows(); ++k) {
    if (!obs.mask[static_cast<std::size_t>(k)]) continue;
    sys.jac.row(a) = g.row(k);
    sys.residual[a] = obs.values[k] - f[k];
    sys.weights[a] = inverse_variance(obs.variances[k]);
    ++a;
  }
  return sys;
}

}  // namespace

Eigen::VectorXd wls_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& weights,
                          const Eigen::VectorXd& b, double* condition) {
  const Eigen::VectorXd sw = weights.array().sqrt();
  const Eigen::MatrixXd wa = sw.asDiagonal() * a;
  const Eigen::VectorXd wb = sw.asDiagonal() * b;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(wa);
  const Eigen::VectorXd rdiag = qr.matrixR().diagonal().cwiseAbs();
  const double rmax = rdiag.maxCoeff();
  const double rmin = rdiag.minCoeff();
  // cond(A^T W A) = cond(W^1/2 A)^2, estimated from the R diagonal.
  const double cond = (rmin > 0.0) ? (rmax / rmin) * (rmax / rmin)
                                   : std::numeric_limits<double>::infinity();
  if (condition != nullptr) *condition = cond;
  if (!(cond < kConditionLimit)) {
    throw geometry_error("normal matrix numerically rank deficient (condition " +
                         std::to_string(cond) + "); degenerate scheme geometry");
  }
  return qr.solve(wb);
}

PositionVector gn_step(const PositionVector& current, const ObservationSet& obs,
                       const ReferenceLayout& refs, const ChannelParams& params) {
  const ActiveSystem sys = build_active(current, obs, refs, params);
  const Eigen::VectorXd step = wls_solve(sys.jac, sys.weights, sys.residual, nullptr);
  const std::size_t n = current.size();
  PositionVector next = current;
  for (std::size_t i = 0; i < n; ++i) {
    next.x[i] += step[static_cast<int>(i)];
    next.y[i] += step[static_cast<int>(n + i)];
  }
  return next;
}

SolveReport solve(const PositionVector& init, const ObservationSet& obs,
                  const ReferenceLayout& refs, const ChannelParams& params, int iterations) {
  if (iterations < 1) throw config_error("iterations: must be >= 1");
  // Safety box: reference bounding box inflated to ten times its span.
  const auto [rx_min, rx_max] = std::minmax_element(refs.x.begin(), refs.x.end());
  const auto [ry_min, ry_max] = std::minmax_element(refs.y.begin(), refs.y.end());
  const double span = std::max({*rx_max - *rx_min, *ry_max - *ry_min, 1.0});
  const double cx = 0.5 * (*rx_min + *rx_max);
  const double cy = 0.5 * (*ry_min + *ry_max);
  const double half = 5.0 * span;

  SolveReport report;
  report.estimate = init;
  const std::size_t n = init.size();
  for (int it = 0; it < iterations; ++it) {
    const ActiveSystem sys = build_active(report.estimate, obs, refs, params);
    report.near_field_warning = report.near_field_warning || sys.min_distance < kNearFieldWarning;
    double cond = 0.0;
    const Eigen::VectorXd step = wls_solve(sys.jac, sys.weights, sys.residual, &cond);
    report.normal_condition = cond;
    for (std::size_t i = 0; i < n; ++i) {
      report.estimate.x[i] += step[static_cast<int>(i)];
      report.estimate.y[i] += step[static_cast<int>(n + i)];
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(report.estimate.x[i] - cx) > half || std::abs(report.estimate.y[i] - cy) > half)
        throw divergence_error("iterate left the scenario safety box at iteration " +
                               std::to_string(it + 1));
    }
    report.step_norms.push_back(step.norm());
    report.iterations = it + 1;
  }
  report.last_step_norm = report.step_norms.back();
  report.converged = report.last_step_norm < kConvergedStep;
  return report;
}

double objective(const PositionVector& pos, const ObservationSet& obs,
                 const ReferenceLayout& refs, const ChannelParams& params) {
  const Eigen::VectorXd f = forward_model(pos, obs.layout, refs, params);
  double q = 0.0;
  for (int k = 0; k < obs.layout.rows(); ++k) {
    if (!obs.mask[static_cast<std::size_t>(k)]) continue;
    const double r = obs.values[k] - f[k];
    q += r * r * inverse_variance(obs.variances[k]);
  }
  return q;
}

}  // namespace cotar
