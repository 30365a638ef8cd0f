#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "topoconf/geometry.hpp"
#include "topoconf/grid.hpp"

namespace topoconf {

using VertexId = std::uint32_t;

/// Vertex indices in strictly increasing order.
struct Simplex {
  std::vector<VertexId> vertices;

  int dim() const { return static_cast<int>(vertices.size()) - 1; }
  /// The codimension-1 faces, each obtained by dropping one vertex.
  std::vector<Simplex> facets() const;

  friend auto operator<=>(const Simplex&, const Simplex&) = default;
};

struct FiltrationEntry {
  Simplex simplex;
  double value = 0.0;
};

/// Ordered simplices with filtration values.
class Filtration {
 public:
  Filtration() = default;

  /// Sorts by (value, dim, lexicographic vertex list).
  static Filtration sorted(std::vector<FiltrationEntry> entries);
  /// Keeps the given order; validity is checked by consumers.
  static Filtration from_ordered(std::vector<FiltrationEntry> entries);

  const std::vector<FiltrationEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const FiltrationEntry& operator[](std::size_t i) const { return entries_[i]; }
  int max_dim() const;

  /// Throws ConfigError naming the first simplex whose vertex list is not
  /// strictly increasing, whose facet is missing, has a larger value, or
  /// appears later in the order.
  void validate() const;

 private:
  explicit Filtration(std::vector<FiltrationEntry> e) : entries_(std::move(e)) {}
  std::vector<FiltrationEntry> entries_;
};

/// Vietoris-Rips filtration. An edge enters at half its length; a simplex at
/// the largest value of its edges. Simplices above `max_scale` or of dimension
/// above `max_dim` are left out.
Filtration rips_filtration(const PointCloud& cloud, double max_scale, int max_dim);

enum class Sweep { kSublevel, kSuperlevel };

/// Lower-star filtration over the Freudenthal triangulation of the grid.
/// kSuperlevel negates the values first, so upper level sets of the field
/// become sublevel sets of the filtration.
Filtration lower_star_filtration(const GridField& field,
                                 Sweep sweep = Sweep::kSublevel);

/// One simplex per line: `value dim v0 v1 ... vk`.
std::string format_filtration_dump(const Filtration& filtration);

}  // namespace topoconf
