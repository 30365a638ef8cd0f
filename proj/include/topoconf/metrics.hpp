#pragma once

#include "topoconf/grid.hpp"
#include "topoconf/persistence.hpp"

namespace topoconf {

/// L-infinity distance between two finite diagram points.
double linf_cost(const PersistencePair& a, const PersistencePair& b);

/// L-infinity distance from a finite point to the diagonal, |death-birth|/2.
double diagonal_distance(const PersistencePair& p);

/// Exact bottleneck distance between the dimension-p parts of two diagrams.
/// Essential points are matched among themselves on birth values; differing
/// essential counts give +inf.
double bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b, int p);

/// max over grid vertices of |f - g|. Throws ConfigError on differing grids.
double sup_distance(const GridField& f, const GridField& g);

}  // namespace topoconf
