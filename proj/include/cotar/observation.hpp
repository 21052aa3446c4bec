#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "cotar/channel.hpp"
#include "cotar/random.hpp"
#include "cotar/types.hpp"

namespace cotar {

enum class RowKind : std::uint8_t { NeighborRss, Toa, RemoteRss };

// Identity of one measurement row. NeighborRss: i<j are target indices.
// Toa / RemoteRss: i = target index, j = reference index. All 0-based.
struct RowId {
  RowKind kind;
  int i;
  int j;
};

// Row index map for a scheme. Row order: all NeighborRss pairs in
// lexicographic order, then Toa grouped by target (M refs each), then
// RemoteRss grouped the same way.
class ObservationLayout {
 public:
  ObservationLayout(Scheme scheme, int n_targets, int n_refs);

  Scheme scheme() const { return scheme_; }
  int n_targets() const { return n_targets_; }
  int n_refs() const { return n_refs_; }
  int rows() const { return static_cast<int>(rows_.size()); }
  const RowId& row(int k) const { return rows_[static_cast<std::size_t>(k)]; }
  const std::vector<RowId>& row_ids() const { return rows_; }

 private:
  Scheme scheme_;
  int n_targets_;
  int n_refs_;
  std::vector<RowId> rows_;
};

// Measured vector r, per-row variances, and presence mask for one snapshot.
// Masked rows are excluded from every downstream product.
struct ObservationSet {
  ObservationLayout layout;
  Eigen::VectorXd values;       // dB for RSS rows, seconds for TOA rows
  Eigen::VectorXd variances;    // dB^2 or s^2
  std::vector<bool> mask;       // true = measurement present

  int active_rows() const;
};

// Noise-free model f(x, y) for every row in the layout.
Eigen::VectorXd forward_model(const PositionVector& pos, const ObservationLayout& layout,
                              const ReferenceLayout& refs, const ChannelParams& params);

// Diagonal of the stacked covariance: sigma_g^2 on RSS rows, sigma_tau^2 on TOA rows.
Eigen::VectorXd build_covariance(const ObservationLayout& layout, const ChannelParams& params);

// forward_model + independent per-row Gaussian noise; each NeighborRss row is
// masked absent with probability p_missing. Noise and mask draws come from
// per-row substreams of `rng`, so masks are nested across p_missing values.
ObservationSet synthesize(const PositionVector& pos, const ObservationLayout& layout,
                          const ReferenceLayout& refs, const ChannelParams& params,
                          double p_missing, RandomStream& rng);

// Whitening weight 1/variance with a floor so exact (zero-variance) rows stay
// finite; they then act as near-hard constraints.
inline double inverse_variance(double variance) {
  return 1.0 / (variance > 1e-30 ? variance : 1e-30);
}

// Debug dump: row_id, kind, i, j, value, sigma, masked.
void write_observation_csv(std::ostream& out, const ObservationSet& obs);

}  // namespace cotar
