#include "topoconf/grid.hpp"

#include <algorithm>
#include <cmath>

#include "topoconf/errors.hpp"
#include "topoconf/text_io.hpp"

namespace topoconf {

double GridAxis::coordinate(std::size_t i) const {
  if (i + 1 == resolution) return hi;
  return lo + (hi - lo) * static_cast<double>(i) /
                  static_cast<double>(resolution - 1);
}

GridGeometry::GridGeometry(std::vector<GridAxis> axes) : axes_(std::move(axes)) {
  if (axes_.empty()) throw ConfigError("grid needs at least one axis");
  for (const auto& a : axes_) {
    if (a.resolution < 2) throw ConfigError("grid resolution must be >= 2 per axis");
    if (!(a.hi > a.lo) || !std::isfinite(a.lo) || !std::isfinite(a.hi)) {
      throw ConfigError("grid axis needs finite lo < hi");
    }
  }
}

GridGeometry GridGeometry::around(const PointCloud& cloud, double margin,
                                  std::size_t resolution) {
  if (cloud.empty()) throw ConfigError("cannot size a grid around an empty cloud");
  std::vector<GridAxis> axes;
  for (std::size_t a = 0; a < cloud.dim(); ++a) {
    const auto& v = cloud.axis(a);
    const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
    double lo = *mn - margin;
    double hi = *mx + margin;
    if (!(hi > lo)) {
      lo -= 0.5;
      hi += 0.5;
    }
    axes.push_back({lo, hi, resolution});
  }
  return GridGeometry(std::move(axes));
}

std::size_t GridGeometry::vertex_count() const {
  std::size_t n = 1;
  for (const auto& a : axes_) n *= a.resolution;
  return n;
}

std::vector<std::size_t> GridGeometry::unflatten(std::size_t flat) const {
  std::vector<std::size_t> idx(axes_.size());
  for (std::size_t a = axes_.size(); a-- > 0;) {
    idx[a] = flat % axes_[a].resolution;
    flat /= axes_[a].resolution;
  }
  return idx;
}

std::size_t GridGeometry::flatten(const std::vector<std::size_t>& index) const {
  std::size_t flat = 0;
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    flat = flat * axes_[a].resolution + index[a];
  }
  return flat;
}

std::vector<double> GridGeometry::vertex_position(std::size_t flat) const {
  const auto idx = unflatten(flat);
  std::vector<double> pos(axes_.size());
  for (std::size_t a = 0; a < axes_.size(); ++a) pos[a] = axes_[a].coordinate(idx[a]);
  return pos;
}

double GridGeometry::half_width() const {
  double c = 0.0;
  for (const auto& a : axes_) c = std::max(c, 0.5 * (a.hi - a.lo));
  return c;
}

GridField::GridField(GridGeometry g, std::vector<double> v)
    : geometry(std::move(g)), values(std::move(v)) {
  if (values.size() != geometry.vertex_count()) {
    throw ConfigError("grid field has " + std::to_string(values.size()) +
                      " values for " + std::to_string(geometry.vertex_count()) +
                      " vertices");
  }
  for (double x : values) {
    if (!std::isfinite(x)) throw ConfigError("grid field values must be finite");
  }
}

GridField parse_grid_field_csv(std::string_view text) {
  const auto nl = text.find('\n');
  if (nl == std::string_view::npos) throw IoError("grid file has no value lines");
  std::string_view header = text.substr(0, nl);
  std::vector<GridAxis> axes;
  for (auto spec : split_fields(header, ';')) {
    const auto f = split_fields(spec, ',');
    if (f.size() != 3) throw IoError("grid header axis needs lo,hi,res");
    const double res = parse_double(f[2]);
    if (res < 2 || res != std::floor(res)) throw IoError("grid resolution must be an integer >= 2");
    axes.push_back({parse_double(f[0]), parse_double(f[1]),
                    static_cast<std::size_t>(res)});
  }
  GridGeometry geom;
  try {
    geom = GridGeometry(std::move(axes));
  } catch (const ConfigError& e) {
    throw IoError(std::string("bad grid header: ") + e.what());
  }
  std::vector<double> values;
  values.reserve(geom.vertex_count());
  std::string_view rest = text.substr(nl + 1);
  while (!rest.empty()) {
    const auto p = rest.find('\n');
    const std::string_view line = rest.substr(0, p);
    rest = p == std::string_view::npos ? std::string_view{} : rest.substr(p + 1);
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    for (auto f : split_fields(line, ',')) values.push_back(parse_double(f));
  }
  if (values.size() != geom.vertex_count()) {
    throw IoError("grid file has " + std::to_string(values.size()) +
                  " values, header implies " + std::to_string(geom.vertex_count()));
  }
  try {
    return GridField(std::move(geom), std::move(values));
  } catch (const ConfigError& e) {
    throw IoError(e.what());
  }
}

std::string format_grid_field_csv(const GridField& field) {
  std::string out;
  const auto& g = field.geometry;
  for (std::size_t a = 0; a < g.dim(); ++a) {
    if (a) out += ';';
    out += format_double(g.axis(a).lo) + ',' + format_double(g.axis(a).hi) + ',' +
           std::to_string(g.axis(a).resolution);
  }
  out += '\n';
  const std::size_t run = g.axis(g.dim() - 1).resolution;
  for (std::size_t i = 0; i < field.values.size(); ++i) {
    out += format_double(field.values[i]);
    out += ((i + 1) % run == 0) ? '\n' : ',';
  }
  return out;
}

}  // namespace topoconf
