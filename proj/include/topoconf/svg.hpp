#pragma once

#include <string>

#include "topoconf/persistence.hpp"

namespace topoconf {

struct DiagramPlotOptions {
  std::string title;
  /// Shaded band |death - birth| <= 2c around the diagonal; negative for none.
  double band_c = -1.0;
  /// Where essential classes are drawn; NaN places them just past the data.
  double infinity_cap = std::numeric_limits<double>::quiet_NaN();
  int size_px = 480;
};

/// Birth on x, death on y. H0 as black circles, H1 as red triangles, higher
/// dimensions as blue squares; a y = x line; essential classes at the cap.
std::string render_diagram_svg(const PersistenceDiagram& diagram,
                               const DiagramPlotOptions& options = {});

}  // namespace topoconf
