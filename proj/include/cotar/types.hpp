#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace cotar {

// Error hierarchy. config_error maps to CLI exit code 2, everything else to 1.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class config_error : public error {
 public:
  using error::error;
};

// Raised when an active measurement row has (near-)zero distance, or the
// normal matrix is numerically rank deficient.
class geometry_error : public error {
 public:
  using error::error;
};

// Raised when a Gauss-Newton iterate leaves the scenario safety box.
class divergence_error : public error {
 public:
  using error::error;
};

// Stacked planar coordinates of the N target nodes.
struct PositionVector {
  std::vector<double> x;
  std::vector<double> y;

  PositionVector() = default;
  PositionVector(std::vector<double> xs, std::vector<double> ys)
      : x(std::move(xs)), y(std::move(ys)) {}

  std::size_t size() const { return x.size(); }
  void validate() const;
};

// Known coordinates of the M assisting reference nodes.
struct ReferenceLayout {
  std::vector<double> x;
  std::vector<double> y;

  std::size_t size() const { return x.size(); }
  void validate() const;
};

// Rigid cluster: fixed formation offsets plus a movable anchor point.
struct TargetCluster {
  std::vector<std::array<double, 2>> formation;
  std::array<double, 2> anchor{0.0, 0.0};

  std::size_t size() const { return formation.size(); }
  std::array<double, 2> centroid() const;
};

enum class Scheme { RssOnly, ToaOnly, HybridToaRss, Cotar };

const char* scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

// Absolute node positions: anchor + formation, ordering = formation order.
PositionVector cluster_positions(const TargetCluster& cluster);

// Square-grid formation with spacing `delta` (row-major, smallest enclosing
// grid when n is not a perfect square). First offset is (0,0).
std::vector<std::array<double, 2>> grid_formation(int n, double delta);

// Cluster whose formation centroid sits at (cx, cy); used to place clusters
// on evaluation lattices and motion tracks.
PositionVector centered_cluster(const std::vector<std::array<double, 2>>& formation,
                                double cx, double cy);

}  // namespace cotar
