#include "cotar/types.hpp"

#include <cmath>

namespace cotar {

namespace {

bool all_finite(const std::vector<double>& v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

}  // namespace

void PositionVector::validate() const {
  if (x.size() != y.size()) throw config_error("position vector: x and y lengths differ");
  if (x.empty()) throw config_error("position vector: need at least one node");
  if (!all_finite(x) || !all_finite(y)) throw config_error("position vector: non-finite coordinate");
}

void ReferenceLayout::validate() const {
  if (x.size() != y.size()) throw config_error("references: x and y lengths differ");
  if (x.size() < 3) throw config_error("references: reference count below minimum 3");
  if (!all_finite(x) || !all_finite(y)) throw config_error("references: non-finite coordinate");
  for (std::size_t a = 0; a < x.size(); ++a) {
    for (std::size_t b = a + 1; b < x.size(); ++b) {
      if (x[a] == x[b] && y[a] == y[b])
        throw config_error("references: nodes " + std::to_string(a) + " and " +
                           std::to_string(b) + " coincide");
    }
  }
}

std::array<double, 2> TargetCluster::centroid() const {
  double cx = 0.0, cy = 0.0;
  for (const auto& f : formation) {
    cx += f[0];
    cy += f[1];
  }
  const double n = static_cast<double>(formation.size());
  return {anchor[0] + cx / n, anchor[1] + cy / n};
}

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::RssOnly: return "rss";
    case Scheme::ToaOnly: return "toa";
    case Scheme::HybridToaRss: return "hybrid";
    case Scheme::Cotar: return "cotar";
  }
  return "?";
}

Scheme scheme_from_name(const std::string& name) {
  if (name == "rss") return Scheme::RssOnly;
  if (name == "toa") return Scheme::ToaOnly;
  if (name == "hybrid") return Scheme::HybridToaRss;
  if (name == "cotar") return Scheme::Cotar;
  throw config_error("scheme: unknown value \"" + name + "\" (expected rss|toa|hybrid|cotar)");
}

PositionVector cluster_positions(const TargetCluster& cluster) {
  PositionVector pos;
  pos.x.reserve(cluster.formation.size());
  pos.y.reserve(cluster.formation.size());
  for (const auto& f : cluster.formation) {
    pos.x.push_back(cluster.anchor[0] + f[0]);
    pos.y.push_back(cluster.anchor[1] + f[1]);
  }
  return pos;
}

std::vector<std::array<double, 2>> grid_formation(int n, double delta) {
  if (n < 1) throw config_error("n_targets: must be >= 1");
  int side = 1;
  while (side * side < n) ++side;
  std::vector<std::array<double, 2>> formation;
  formation.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    formation.push_back({delta * (k % side), delta * (k / side)});
  }
  return formation;
}

PositionVector centered_cluster(const std::vector<std::array<double, 2>>& formation,
                                double cx, double cy) {
  double mx = 0.0, my = 0.0;
  for (const auto& f : formation) {
    mx += f[0];
    my += f[1];
  }
  mx /= static_cast<double>(formation.size());
  my /= static_cast<double>(formation.size());
  PositionVector pos;
  pos.x.reserve(formation.size());
  pos.y.reserve(formation.size());
  for (const auto& f : formation) {
    pos.x.push_back(cx + f[0] - mx);
    pos.y.push_back(cy + f[1] - my);
  }
  return pos;
}

}  // namespace cotar
