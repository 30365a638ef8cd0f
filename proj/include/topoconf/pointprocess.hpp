#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "topoconf/density.hpp"
#include "topoconf/persistence.hpp"

namespace topoconf {

/// Square window [lo, hi)^2 in the (birth, death) plane.
struct PlaneWindow {
  double lo = 0.0;
  double hi = 1.0;
};

/// Cell counts of the diagram points over squares of side w tiling the
/// window. counts[i * cells + j] holds cell i along birth, j along death.
struct SmoothedDiagram {
  double w = 1.0;
  PlaneWindow window;
  std::size_t cells = 0;
  std::vector<std::size_t> counts;

  std::size_t total() const;
};

/// Bounding square of the finite pairs inflated by 10% of its side; the unit
/// square around the point for a single location, [0,1) for none.
PlaneWindow default_window(const PersistenceDiagram& diagram);

/// Counts finite pairs with both coordinates in [lo, hi). Cells are
/// half-open; the last row and column are clipped at hi.
SmoothedDiagram smooth_diagram(const PersistenceDiagram& diagram, double w,
                               const PlaneWindow& window);

/// First line `w,lo,hi,cells`, then one row of counts per birth cell.
std::string format_smoothed_csv(const SmoothedDiagram& s);

/// Euclidean distance to the diagonal, |death - birth| / sqrt(2).
double euclidean_diagonal_distance(const PersistencePair& p);

/// Pairs farther than `threshold` from the diagonal in the Euclidean sense;
/// essential pairs always count.
std::size_t count_beyond(const PersistenceDiagram& diagram, double threshold);

struct CountInterval {
  std::size_t lo = 0;
  std::size_t hi = 0;
  std::vector<std::size_t> replicate_counts;  // in replicate order
};

/// Bootstrap interval for count_beyond of the density diagram: the empirical
/// alpha/2 and 1-alpha/2 quantiles (sorted counts at index ceil(pB)-1).
CountInterval bootstrap_count_ci(const PointCloud& cloud, const KernelSpec& kernel,
                                 const GridGeometry& grid, double threshold, double alpha,
                                 std::size_t replicates, std::uint64_t seed);

}  // namespace topoconf
