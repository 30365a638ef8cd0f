#include "topoconf/pointprocess.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "topoconf/errors.hpp"
#include "topoconf/random.hpp"
#include "topoconf/text_io.hpp"

namespace topoconf {

std::size_t SmoothedDiagram::total() const {
  std::size_t t = 0;
  for (auto c : counts) t += c;
  return t;
}

PlaneWindow default_window(const PersistenceDiagram& diagram) {
  double lo = kInfinity, hi = -kInfinity;
  for (const auto& p : diagram.pairs) {
    if (p.essential()) continue;
    lo = std::min({lo, p.birth, p.death});
    hi = std::max({hi, p.birth, p.death});
  }
  if (lo > hi) return {0.0, 1.0};
  if (lo == hi) return {lo - 0.5, lo + 0.5};
  const double pad = 0.1 * (hi - lo);
  return {lo - pad, hi + pad};
}

SmoothedDiagram smooth_diagram(const PersistenceDiagram& diagram, double w,
                               const PlaneWindow& window) {
  if (!(w > 0.0) || !std::isfinite(w)) throw ConfigError("cell side w must be positive");
  if (!(window.hi > window.lo)) throw ConfigError("window must satisfy lo < hi");
  SmoothedDiagram s;
  s.w = w;
  s.window = window;
  const double span = (window.hi - window.lo) / w;
  if (span > 1e6) throw ConfigError("too many cells for the window");
  s.cells = static_cast<std::size_t>(std::ceil(span));
  s.counts.assign(s.cells * s.cells, 0);
  auto cell = [&](double x) {
    const auto k = static_cast<std::size_t>(std::floor((x - window.lo) / w));
    return std::min(k, s.cells - 1);
  };
  for (const auto& p : diagram.pairs) {
    if (p.essential()) continue;
    if (p.birth < window.lo || p.birth >= window.hi) continue;
    if (p.death < window.lo || p.death >= window.hi) continue;
    ++s.counts[cell(p.birth) * s.cells + cell(p.death)];
  }
  return s;
}

std::string format_smoothed_csv(const SmoothedDiagram& s) {
  std::string out = format_double(s.w) + "," + format_double(s.window.lo) + "," +
                    format_double(s.window.hi) + "," + std::to_string(s.cells) + "\n";
  for (std::size_t i = 0; i < s.cells; ++i) {
    for (std::size_t j = 0; j < s.cells; ++j) {
      if (j) out += ',';
      out += std::to_string(s.counts[i * s.cells + j]);
    }
    out += '\n';
  }
  return out;
}

double euclidean_diagonal_distance(const PersistencePair& p) {
  return p.persistence() / std::numbers::sqrt2;
}

std::size_t count_beyond(const PersistenceDiagram& diagram, double threshold) {
  if (!(threshold >= 0.0)) throw ConfigError("threshold must be non-negative");
  std::size_t count = 0;
  for (const auto& p : diagram.pairs) {
    if (p.essential() || euclidean_diagonal_distance(p) > threshold) ++count;
  }
  return count;
}

CountInterval bootstrap_count_ci(const PointCloud& cloud, const KernelSpec& kernel,
                                 const GridGeometry& grid, double threshold, double alpha,
                                 std::size_t replicates, std::uint64_t seed) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  if (replicates < 1) throw ConfigError("bootstrap needs at least one replicate");
  const KdeResampler engine(cloud, kernel, grid);
  CountInterval ci;
  ci.replicate_counts.resize(replicates);
  for (std::size_t j = 0; j < replicates; ++j) {
    Rng rng = substream(seed, StreamTag::kCountBootstrap, j);
    const auto field = engine.resample(bootstrap_indices(rng, cloud.size()));
    ci.replicate_counts[j] = count_beyond(density_diagram(field), threshold);
  }
  auto sorted = ci.replicate_counts;
  std::sort(sorted.begin(), sorted.end());
  const double B = static_cast<double>(replicates);
  auto at = [&](double p) {
    const double k = std::ceil(p * B) - 1.0;
    const auto idx = static_cast<std::size_t>(std::clamp(k, 0.0, B - 1.0));
    return sorted[idx];
  };
  ci.lo = at(alpha / 2.0);
  ci.hi = at(1.0 - alpha / 2.0);
  return ci;
}

}  // namespace topoconf
