#include "cotar/jacobian.hpp"

#include <cmath>
#include <string>

namespace cotar {

namespace {

[[noreturn]] void throw_zero_distance(const RowId& row) {
  if (row.kind == RowKind::NeighborRss) {
    throw geometry_error("degenerate geometry: target pair (" + std::to_string(row.i + 1) +
                         "," + std::to_string(row.j + 1) + ") coincides");
  }
  throw geometry_error("degenerate geometry: target " + std::to_string(row.i + 1) +
                       " coincides with reference " + std::to_string(row.j + 1));
}

// Writes one measurement row's gradient into `out` (length 2N, zeroed).
// The Ref accepts strided matrix rows.
void row_gradient(const RowId& row, const PositionVector& pos, const ReferenceLayout& refs,
                  double alpha,
                  Eigen::Ref<Eigen::RowVectorXd, 0, Eigen::InnerStride<>> out) {
  const int n = static_cast<int>(pos.size());
  const auto i = static_cast<std::size_t>(row.i);
  double dx, dy;
  if (row.kind == RowKind::NeighborRss) {
    const auto j = static_cast<std::size_t>(row.j);
    dx = pos.x[i] - pos.x[j];
    dy = pos.y[i] - pos.y[j];
  } else {
    const auto j = static_cast<std::size_t>(row.j);
    dx = pos.x[i] - refs.x[j];
    dy = pos.y[i] - refs.y[j];
  }
  const double d2 = dx * dx + dy * dy;
  const double d = std::sqrt(d2);
  if (d < kDegenerateDistance) throw_zero_distance(row);
  switch (row.kind) {
    case RowKind::NeighborRss: {
      // Antisymmetric pair gradient, alpha'/d magnitude.
      const double gx = alpha * dx / d2;
      const double gy = alpha * dy / d2;
      out[row.i] = gx;
      out[row.j] = -gx;
      out[n + row.i] = gy;
      out[n + row.j] = -gy;
      break;
    }
    case RowKind::Toa:
      // Unit vector scaled by 1/c; row norm exactly 1/c.
      out[row.i] = dx / (kWaveSpeed * d);
      out[n + row.i] = dy / (kWaveSpeed * d);
      break;
    case RowKind::RemoteRss:
      out[row.i] = alpha * dx / d2;
      out[n + row.i] = alpha * dy / d2;
      break;
  }
}

}  // namespace

double rss_slope_const(const ChannelParams& params) {
  return 10.0 * params.eta / std::log(10.0);
}

Eigen::MatrixXd neighbor_rss_rows(const PositionVector& pos, const ChannelParams& params) {
  const int n = static_cast<int>(pos.size());
  const double alpha = rss_slope_const(params);
  const ReferenceLayout no_refs;
  Eigen::MatrixXd block = Eigen::MatrixXd::Zero(n * (n - 1) / 2, 2 * n);
  int k = 0;
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      row_gradient({RowKind::NeighborRss, p, q}, pos, no_refs, alpha, block.row(k++));
    }
  }
  return block;
}

Eigen::MatrixXd toa_rows(const PositionVector& pos, const ReferenceLayout& refs) {
  const int n = static_cast<int>(pos.size());
  const int m = static_cast<int>(refs.size());
  Eigen::MatrixXd block = Eigen::MatrixXd::Zero(m * n, 2 * n);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      row_gradient({RowKind::Toa, i, j}, pos, refs, 0.0, block.row(k++));
    }
  }
  return block;
}

Eigen::MatrixXd remote_rss_rows(const PositionVector& pos, const ReferenceLayout& refs,
                                const ChannelParams& params) {
  const int n = static_cast<int>(pos.size());
  const int m = static_cast<int>(refs.size());
  const double alpha = rss_slope_const(params);
  Eigen::MatrixXd block = Eigen::MatrixXd::Zero(m * n, 2 * n);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      row_gradient({RowKind::RemoteRss, i, j}, pos, refs, alpha, block.row(k++));
    }
  }
  return block;
}

Eigen::MatrixXd assemble_jacobian(const PositionVector& pos, const ObservationLayout& layout,
                                  const ReferenceLayout& refs, const ChannelParams& params) {
  const double alpha = rss_slope_const(params);
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(layout.rows(), 2 * layout.n_targets());
  for (int k = 0; k < layout.rows(); ++k) {
    row_gradient(layout.row(k), pos, refs, alpha, g.row(k));
  }
  return g;
}

}  // namespace cotar
