#include <gtest/gtest.h>

#include <string>

#include "topoconf/svg.hpp"

namespace {

using namespace topoconf;

std::size_t occurrences(const std::string& s, const std::string& needle) {
  std::size_t count = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++count;
  return count;
}

TEST(Svg, MarkersBandAndInfinity) {
  const PersistenceDiagram d{{{0, 0, 0.5}, {0, 0, 0.3}, {0, 0, kInfinity}, {1, 0.2, 0.8}}};
  DiagramPlotOptions opt;
  opt.title = "a < b";
  opt.band_c = 0.1;
  const auto svg = render_diagram_svg(d, opt);
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  EXPECT_EQ(occurrences(svg, "class=\"h0\""), 3u);
  EXPECT_EQ(occurrences(svg, "class=\"h1\""), 1u);
  EXPECT_EQ(occurrences(svg, "class=\"band\""), 1u);
  EXPECT_EQ(occurrences(svg, "class=\"diagonal\""), 1u);
  EXPECT_EQ(occurrences(svg, "class=\"infinity\""), 1u);
  EXPECT_NE(svg.find("a &lt; b"), std::string::npos);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

TEST(Svg, OptionalPartsAndDeterminism) {
  const PersistenceDiagram d{{{0, 1.0, 0.2}, {2, 0.4, 0.9}}};
  const auto svg = render_diagram_svg(d);
  EXPECT_EQ(occurrences(svg, "class=\"band\""), 0u);
  EXPECT_EQ(occurrences(svg, "class=\"infinity\""), 0u);
  EXPECT_EQ(occurrences(svg, "class=\"h2\""), 1u);
  EXPECT_EQ(svg, render_diagram_svg(d));
  DiagramPlotOptions inf_band;
  inf_band.band_c = kInfinity;
  EXPECT_EQ(occurrences(render_diagram_svg(d, inf_band), "class=\"band\""), 0u);
  EXPECT_NE(render_diagram_svg({}).find("</svg>"), std::string::npos);
}

}  // namespace
