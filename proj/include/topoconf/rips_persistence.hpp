#pragma once

#include "topoconf/geometry.hpp"
#include "topoconf/persistence.hpp"

namespace topoconf {

/// Persistence of the Rips filtration in homology dimensions 0..max_dim-1,
/// without building the filtration explicitly. Same diagram as
/// reduce(rips_filtration(cloud, max_scale, max_dim)) restricted to those
/// dimensions, with zero-persistence pairs dropped.
PersistenceDiagram rips_persistence(const PointCloud& cloud, double max_scale,
                                    int max_dim);

}  // namespace topoconf
