#include "cotar/bounds.hpp"

#include <cmath>

namespace cotar {

namespace {

Eigen::MatrixXd inverse_fim(const Eigen::MatrixXd& fim) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(fim);
  if (eig.info() != Eigen::Success) {
    throw geometry_error("Fisher information singular: unbounded variance");
  }
  const Eigen::VectorXd& values = eig.eigenvalues();
  if (values.minCoeff() <= 1e-12 * values.maxCoeff() || values.maxCoeff() <= 0.0) {
    throw geometry_error("Fisher information singular: unbounded variance");
  }
  return eig.eigenvectors() * values.cwiseInverse().asDiagonal() *
         eig.eigenvectors().transpose();
}

}  // namespace

Eigen::MatrixXd fisher(const PositionVector& truth, const ObservationLayout& layout,
                       const ReferenceLayout& refs, const ChannelParams& params) {
  const Eigen::MatrixXd g = assemble_jacobian(truth, layout, refs, params);
  Eigen::VectorXd w = build_covariance(layout, params);
  for (int k = 0; k < w.size(); ++k) w[k] = inverse_variance(w[k]);
  return g.transpose() * w.asDiagonal() * g;
}

double crb_std(const Eigen::MatrixXd& fim, int node) {
  const Eigen::MatrixXd p = inverse_fim(fim);
  const int n = static_cast<int>(fim.rows()) / 2;
  return std::sqrt(p(node, node) + p(n + node, n + node));
}

double rms_bound(const PositionVector& truth, const ObservationLayout& layout,
                 const ReferenceLayout& refs, const ChannelParams& params) {
  const Eigen::MatrixXd p = inverse_fim(fisher(truth, layout, refs, params));
  return std::sqrt(p.trace() / static_cast<double>(truth.size()));
}

BoundsReport evaluate_bounds(const PositionVector& truth, const ObservationLayout& layout,
                             const ReferenceLayout& refs, const ChannelParams& params) {
  BoundsReport report;
  report.covariance = inverse_fim(fisher(truth, layout, refs, params));
  const int n = static_cast<int>(truth.size());
  report.per_node_crb_m.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    report.per_node_crb_m.push_back(
        std::sqrt(report.covariance(i, i) + report.covariance(n + i, n + i)));
  }
  report.rms_bound_m = std::sqrt(report.covariance.trace() / static_cast<double>(n));
  return report;
}

Eigen::VectorXd linearization_bias(const PositionVector& truth, const PositionVector& init,
                                   const ObservationLayout& layout, const ReferenceLayout& refs,
                                   const ChannelParams& params) {
  const Eigen::MatrixXd g = assemble_jacobian(init, layout, refs, params);
  Eigen::VectorXd w = build_covariance(layout, params);
  for (int k = 0; k < w.size(); ++k) w[k] = inverse_variance(w[k]);
  const int n = static_cast<int>(truth.size());
  Eigen::VectorXd delta(2 * n);
  for (int i = 0; i < n; ++i) {
    delta[i] = truth.x[static_cast<std::size_t>(i)] - init.x[static_cast<std::size_t>(i)];
    delta[n + i] = truth.y[static_cast<std::size_t>(i)] - init.y[static_cast<std::size_t>(i)];
  }
  // Taylor remainder of f at init, mapped through the normal equations.
  const Eigen::VectorXd remainder = forward_model(truth, layout, refs, params) -
                                    forward_model(init, layout, refs, params) - g * delta;
  const Eigen::MatrixXd fim = g.transpose() * w.asDiagonal() * g;
  Eigen::LDLT<Eigen::MatrixXd> ldlt(fim);
  if (ldlt.info() != Eigen::Success) throw geometry_error("singular normal matrix at init");
  return ldlt.solve(g.transpose() * w.asDiagonal() * remainder);
}

}  // namespace cotar
