#include "topoconf/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace topoconf {

namespace {

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

}  // namespace

std::string render_diagram_svg(const PersistenceDiagram& diagram,
                               const DiagramPlotOptions& options) {
  double lo = kInfinity, hi = -kInfinity;
  bool any_essential = false;
  for (const auto& p : diagram.pairs) {
    lo = std::min(lo, p.birth);
    hi = std::max(hi, p.birth);
    if (p.essential()) {
      any_essential = true;
    } else {
      lo = std::min(lo, p.death);
      hi = std::max(hi, p.death);
    }
  }
  if (lo > hi) {
    lo = 0.0;
    hi = 1.0;
  }
  if (hi == lo) hi = lo + 1.0;
  double cap = options.infinity_cap;
  if (std::isnan(cap)) cap = hi + 0.1 * (hi - lo);
  if (any_essential) hi = std::max(hi, cap);
  const double pad = 0.05 * (hi - lo);
  lo -= pad;
  hi += pad;

  const double size = options.size_px;
  const double margin = 40.0;
  const double inner = size - 2.0 * margin;
  auto sx = [&](double v) { return margin + (v - lo) / (hi - lo) * inner; };
  auto sy = [&](double v) { return size - margin - (v - lo) / (hi - lo) * inner; };

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(size) + "\" height=\"" +
       fixed(size) + "\" viewBox=\"0 0 " + fixed(size) + " " + fixed(size) + "\">\n";
  s += "<defs><clipPath id=\"plot\"><rect x=\"" + fixed(margin) + "\" y=\"" + fixed(margin) +
       "\" width=\"" + fixed(inner) + "\" height=\"" + fixed(inner) + "\"/></clipPath></defs>\n";
  s += "<rect x=\"0\" y=\"0\" width=\"" + fixed(size) + "\" height=\"" + fixed(size) +
       "\" fill=\"white\"/>\n";
  s += "<rect x=\"" + fixed(margin) + "\" y=\"" + fixed(margin) + "\" width=\"" + fixed(inner) +
       "\" height=\"" + fixed(inner) + "\" fill=\"none\" stroke=\"black\"/>\n";
  if (!options.title.empty()) {
    s += "<text x=\"" + fixed(size / 2.0) + "\" y=\"" + fixed(margin / 2.0) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" +
         escape(options.title) + "</text>\n";
  }
  if (options.band_c > 0.0 && std::isfinite(options.band_c)) {
    const double w = 2.0 * options.band_c;
    s += "<polygon class=\"band\" clip-path=\"url(#plot)\" fill=\"#d0d0ff\" fill-opacity=\"0.6\" points=\"" +
         fixed(sx(lo)) + "," + fixed(sy(lo - w)) + " " + fixed(sx(hi)) + "," + fixed(sy(hi - w)) +
         " " + fixed(sx(hi)) + "," + fixed(sy(hi + w)) + " " + fixed(sx(lo)) + "," +
         fixed(sy(lo + w)) + "\"/>\n";
  }
  s += "<line class=\"diagonal\" x1=\"" + fixed(sx(lo)) + "\" y1=\"" + fixed(sy(lo)) + "\" x2=\"" +
       fixed(sx(hi)) + "\" y2=\"" + fixed(sy(hi)) + "\" stroke=\"gray\"/>\n";
  if (any_essential) {
    s += "<line class=\"infinity\" x1=\"" + fixed(sx(lo)) + "\" y1=\"" + fixed(sy(cap)) +
         "\" x2=\"" + fixed(sx(hi)) + "\" y2=\"" + fixed(sy(cap)) +
         "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
    s += "<text x=\"" + fixed(margin - 4.0) + "\" y=\"" + fixed(sy(cap) + 4.0) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">inf</text>\n";
  }
  for (const auto& p : diagram.canonical().pairs) {
    const double x = sx(p.birth);
    const double y = sy(p.essential() ? cap : p.death);
    if (p.dim == 0) {
      s += "<circle class=\"h0\" cx=\"" + fixed(x) + "\" cy=\"" + fixed(y) +
           "\" r=\"3.5\" fill=\"black\"/>\n";
    } else if (p.dim == 1) {
      s += "<polygon class=\"h1\" points=\"" + fixed(x) + "," + fixed(y - 4.5) + " " +
           fixed(x - 4.0) + "," + fixed(y + 3.0) + " " + fixed(x + 4.0) + "," + fixed(y + 3.0) +
           "\" fill=\"red\"/>\n";
    } else {
      s += "<rect class=\"h" + std::to_string(p.dim) + "\" x=\"" + fixed(x - 3.0) + "\" y=\"" +
           fixed(y - 3.0) + "\" width=\"6\" height=\"6\" fill=\"blue\"/>\n";
    }
  }
  s += "<text x=\"" + fixed(size / 2.0) + "\" y=\"" + fixed(size - 8.0) +
       "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">birth</text>\n";
  s += "<text x=\"12\" y=\"" + fixed(size / 2.0) +
       "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 12 " +
       fixed(size / 2.0) + ")\">death</text>\n";
  s += "</svg>\n";
  return s;
}

}  // namespace topoconf
