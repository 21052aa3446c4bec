#include "cotar/observation.hpp"

#include <cmath>
#include <ostream>
#include <string>

namespace cotar {

namespace {

// Substream keys so that noise and mask draws never collide.
constexpr std::uint64_t kNoiseTag = 0x6E6F6973;  // "nois"
constexpr std::uint64_t kMaskTag = 0x6D61736B;   // "mask"

double pair_distance(const PositionVector& pos, int p, int q) {
  const double dx = pos.x[static_cast<std::size_t>(p)] - pos.x[static_cast<std::size_t>(q)];
  const double dy = pos.y[static_cast<std::size_t>(p)] - pos.y[static_cast<std::size_t>(q)];
  return std::hypot(dx, dy);
}

double ref_distance(const PositionVector& pos, const ReferenceLayout& refs, int i, int j) {
  const double dx = pos.x[static_cast<std::size_t>(i)] - refs.x[static_cast<std::size_t>(j)];
  const double dy = pos.y[static_cast<std::size_t>(i)] - refs.y[static_cast<std::size_t>(j)];
  return std::hypot(dx, dy);
}

[[noreturn]] void throw_degenerate(const RowId& row) {
  if (row.kind == RowKind::NeighborRss)
    throw geometry_error("degenerate geometry: target pair (" + std::to_string(row.i + 1) + "," +
                         std::to_string(row.j + 1) + ") coincides");
  throw geometry_error("degenerate geometry: target " + std::to_string(row.i + 1) +
                       " coincides with reference " + std::to_string(row.j + 1));
}

}  // namespace

ObservationLayout::ObservationLayout(Scheme scheme, int n_targets, int n_refs)
    : scheme_(scheme), n_targets_(n_targets), n_refs_(n_refs) {
  if (n_targets < 1) throw config_error("layout: n_targets must be >= 1");
  if (n_refs < 3) throw config_error("layout: reference count below minimum 3");
  if (scheme == Scheme::Cotar) {
    for (int p = 0; p < n_targets; ++p)
      for (int q = p + 1; q < n_targets; ++q) rows_.push_back({RowKind::NeighborRss, p, q});
  }
  if (scheme == Scheme::ToaOnly || scheme == Scheme::HybridToaRss || scheme == Scheme::Cotar) {
    for (int i = 0; i < n_targets; ++i)
      for (int j = 0; j < n_refs; ++j) rows_.push_back({RowKind::Toa, i, j});
  }
  if (scheme == Scheme::RssOnly || scheme == Scheme::HybridToaRss || scheme == Scheme::Cotar) {
    for (int i = 0; i < n_targets; ++i)
      for (int j = 0; j < n_refs; ++j) rows_.push_back({RowKind::RemoteRss, i, j});
  }
}

int ObservationSet::active_rows() const {
  int n = 0;
  for (bool m : mask) n += m ? 1 : 0;
  return n;
}

Eigen::VectorXd forward_model(const PositionVector& pos, const ObservationLayout& layout,
                              const ReferenceLayout& refs, const ChannelParams& params) {
  Eigen::VectorXd f(layout.rows());
  for (int k = 0; k < layout.rows(); ++k) {
    const RowId& row = layout.row(k);
    double d;
    if (row.kind == RowKind::NeighborRss) {
      d = pair_distance(pos, row.i, row.j);
    } else {
      d = ref_distance(pos, refs, row.i, row.j);
    }
    if (d < 1e-6) throw_degenerate(row);
    if (row.kind == RowKind::Toa) {
      f[k] = d / kWaveSpeed;
    } else {
      f[k] = 10.0 * params.eta * std::log10(d) + params.g0_db;
    }
  }
  return f;
}

Eigen::VectorXd build_covariance(const ObservationLayout& layout, const ChannelParams& params) {
  Eigen::VectorXd lambda(layout.rows());
  const double var_rss = params.sigma_g_db * params.sigma_g_db;
  const double var_toa = params.sigma_tau_s * params.sigma_tau_s;
  for (int k = 0; k < layout.rows(); ++k) {
    lambda[k] = layout.row(k).kind == RowKind::Toa ? var_toa : var_rss;
  }
  return lambda;
}

ObservationSet synthesize(const PositionVector& pos, const ObservationLayout& layout,
                          const ReferenceLayout& refs, const ChannelParams& params,
                          double p_missing, RandomStream& rng) {
  ObservationSet obs{layout, forward_model(pos, layout, refs, params),
                     build_covariance(layout, params),
                     std::vector<bool>(static_cast<std::size_t>(layout.rows()), true)};
  RandomStream noise_stream = rng.fork(kNoiseTag);
  RandomStream mask_stream = rng.fork(kMaskTag);
  for (int k = 0; k < layout.rows(); ++k) {
    obs.values[k] += std::sqrt(obs.variances[k]) *
                     noise_stream.fork(static_cast<std::uint64_t>(k)).next_gaussian();
    if (layout.row(k).kind == RowKind::NeighborRss) {
      // Draw the uniform unconditionally: masks are nested across p_missing.
      const double u = mask_stream.fork(static_cast<std::uint64_t>(k)).next_unit();
      if (u < p_missing) obs.mask[static_cast<std::size_t>(k)] = false;
    }
  }
  return obs;
}

void write_observation_csv(std::ostream& out, const ObservationSet& obs) {
  out << "row_id,kind,i,j,value,sigma,masked\n";
  for (int k = 0; k < obs.layout.rows(); ++k) {
    const RowId& row = obs.layout.row(k);
    const char* kind = row.kind == RowKind::NeighborRss ? "neighbor_rss"
                       : row.kind == RowKind::Toa       ? "toa"
                                                        : "remote_rss";
    out << k << ',' << kind << ',' << row.i + 1 << ',' << row.j + 1 << ',' << obs.values[k]
        << ',' << std::sqrt(obs.variances[k]) << ','
        << (obs.mask[static_cast<std::size_t>(k)] ? 0 : 1) << '\n';
  }
}

}  // namespace cotar
