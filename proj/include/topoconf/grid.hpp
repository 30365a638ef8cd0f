#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "topoconf/geometry.hpp"

namespace topoconf {

struct GridAxis {
  double lo = 0.0;
  double hi = 1.0;
  std::size_t resolution = 2;

  double coordinate(std::size_t i) const;
  friend bool operator==(const GridAxis&, const GridAxis&) = default;
};

/// Regular grid over a box. Vertices are numbered row-major: axis 0 varies
/// slowest.
class GridGeometry {
 public:
  GridGeometry() = default;
  explicit GridGeometry(std::vector<GridAxis> axes);

  /// Bounding box of `cloud`, inflated by `margin` on every side.
  static GridGeometry around(const PointCloud& cloud, double margin,
                             std::size_t resolution);

  std::size_t dim() const { return axes_.size(); }
  const GridAxis& axis(std::size_t a) const { return axes_[a]; }
  const std::vector<GridAxis>& axes() const { return axes_; }
  std::size_t vertex_count() const;

  std::vector<std::size_t> unflatten(std::size_t flat) const;
  std::size_t flatten(const std::vector<std::size_t>& index) const;
  std::vector<double> vertex_position(std::size_t flat) const;

  /// Largest half-width of the box, i.e. C in X = [-C, C]^D after centering.
  double half_width() const;

  friend bool operator==(const GridGeometry&, const GridGeometry&) = default;

 private:
  std::vector<GridAxis> axes_;
};

/// A function sampled at every vertex of a GridGeometry.
struct GridField {
  GridGeometry geometry;
  std::vector<double> values;

  GridField() = default;
  GridField(GridGeometry g, std::vector<double> v);

  std::size_t size() const { return values.size(); }
  friend bool operator==(const GridField&, const GridField&) = default;
};

/// Line 1: `lo,hi,res;lo,hi,res;...`; then values in row-major order, one
/// line per run of the last axis.
GridField parse_grid_field_csv(std::string_view text);
std::string format_grid_field_csv(const GridField& field);

}  // namespace topoconf
