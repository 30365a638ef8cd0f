#include "topoconf/complex.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "topoconf/errors.hpp"
#include "topoconf/text_io.hpp"

namespace topoconf {

std::vector<Simplex> Simplex::facets() const {
  std::vector<Simplex> out;
  if (vertices.size() < 2) return out;
  out.reserve(vertices.size());
  for (std::size_t drop = 0; drop < vertices.size(); ++drop) {
    Simplex f;
    f.vertices.reserve(vertices.size() - 1);
    for (std::size_t k = 0; k < vertices.size(); ++k) {
      if (k != drop) f.vertices.push_back(vertices[k]);
    }
    out.push_back(std::move(f));
  }
  return out;
}

Filtration Filtration::sorted(std::vector<FiltrationEntry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const FiltrationEntry& a, const FiltrationEntry& b) {
              if (a.value != b.value) return a.value < b.value;
              if (a.simplex.dim() != b.simplex.dim()) {
                return a.simplex.dim() < b.simplex.dim();
              }
              return a.simplex.vertices < b.simplex.vertices;
            });
  return Filtration(std::move(entries));
}

Filtration Filtration::from_ordered(std::vector<FiltrationEntry> entries) {
  return Filtration(std::move(entries));
}

int Filtration::max_dim() const {
  int d = -1;
  for (const auto& e : entries_) d = std::max(d, e.simplex.dim());
  return d;
}

namespace {

std::string describe(const Simplex& s) {
  std::string out = "{";
  for (std::size_t k = 0; k < s.vertices.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(s.vertices[k]);
  }
  return out + "}";
}

}  // namespace

void Filtration::validate() const {
  std::map<std::vector<VertexId>, std::size_t> position;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& s = entries_[i].simplex;
    if (s.vertices.empty()) throw ConfigError("filtration contains an empty simplex");
    if (!std::is_sorted(s.vertices.begin(), s.vertices.end()) ||
        std::adjacent_find(s.vertices.begin(), s.vertices.end()) != s.vertices.end()) {
      throw ConfigError("simplex " + describe(s) + " vertices not strictly increasing");
    }
    if (!std::isfinite(entries_[i].value)) {
      throw ConfigError("simplex " + describe(s) + " has a non-finite value");
    }
    if (!position.emplace(s.vertices, i).second) {
      throw ConfigError("simplex " + describe(s) + " listed twice");
    }
  }
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    for (const auto& f : entries_[i].simplex.facets()) {
      const auto it = position.find(f.vertices);
      if (it == position.end()) {
        throw ConfigError("facet " + describe(f) + " of " +
                          describe(entries_[i].simplex) + " is missing");
      }
      if (it->second > i) {
        throw ConfigError("facet " + describe(f) + " appears after its coface " +
                          describe(entries_[i].simplex));
      }
      if (entries_[it->second].value > entries_[i].value) {
        throw ConfigError("facet " + describe(f) + " has a larger value than " +
                          describe(entries_[i].simplex));
      }
    }
  }
}

namespace {

struct RipsBuilder {
  std::size_t n;
  std::vector<double> half;  // n x n half-distances
  std::vector<std::vector<VertexId>> higher;  // neighbors with larger index
  double max_scale;
  int max_dim;
  std::vector<FiltrationEntry> out;

  double edge(VertexId a, VertexId b) const { return half[a * n + b]; }

  void extend(std::vector<VertexId>& simplex, double value,
              const std::vector<VertexId>& candidates) {
    out.push_back({Simplex{simplex}, value});
    if (static_cast<int>(simplex.size()) > max_dim) return;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      const VertexId w = candidates[c];
      double v = value;
      for (VertexId u : simplex) v = std::max(v, edge(u, w));
      if (v > max_scale) continue;
      std::vector<VertexId> next;
      for (std::size_t k = c + 1; k < candidates.size(); ++k) {
        const VertexId x = candidates[k];
        if (edge(w, x) <= max_scale) next.push_back(x);
      }
      simplex.push_back(w);
      extend(simplex, v, next);
      simplex.pop_back();
    }
  }
};

}  // namespace

Filtration rips_filtration(const PointCloud& cloud, double max_scale, int max_dim) {
  if (max_dim < 0) throw ConfigError("max_dim must be >= 0");
  if (!(max_scale > 0.0)) throw ConfigError("max_scale must be positive");
  RipsBuilder b;
  b.n = cloud.size();
  b.max_scale = max_scale;
  b.max_dim = max_dim;
  b.half = pairwise_distances(cloud);
  for (double& v : b.half) v *= 0.5;
  b.higher.resize(b.n);
  for (std::size_t i = 0; i < b.n; ++i) {
    for (std::size_t j = i + 1; j < b.n; ++j) {
      if (b.half[i * b.n + j] <= max_scale) {
        b.higher[i].push_back(static_cast<VertexId>(j));
      }
    }
  }
  std::vector<VertexId> simplex;
  for (std::size_t i = 0; i < b.n; ++i) {
    simplex.assign(1, static_cast<VertexId>(i));
    b.extend(simplex, 0.0, b.higher[i]);
  }
  return Filtration::sorted(std::move(b.out));
}

Filtration lower_star_filtration(const GridField& field, Sweep sweep) {
  const auto& geom = field.geometry;
  const std::size_t dim = geom.dim();
  if (field.values.empty() || dim == 0) throw ConfigError("empty grid");
  const double sign = sweep == Sweep::kSuperlevel ? -1.0 : 1.0;

  // Strides of the row-major numbering.
  std::vector<std::size_t> stride(dim, 1);
  for (std::size_t a = dim - 1; a-- > 0;) {
    stride[a] = stride[a + 1] * geom.axis(a + 1).resolution;
  }

  std::vector<std::size_t> perm(dim);
  std::vector<std::vector<VertexId>> simplices;
  std::vector<std::size_t> corner(dim, 0);
  std::vector<std::size_t> cube_counts(dim);
  std::size_t cubes = 1;
  for (std::size_t a = 0; a < dim; ++a) {
    cube_counts[a] = geom.axis(a).resolution - 1;
    cubes *= cube_counts[a];
  }
  std::vector<VertexId> chain(dim + 1);
  for (std::size_t c = 0; c < cubes; ++c) {
    std::size_t rem = c;
    std::size_t base = 0;
    for (std::size_t a = dim; a-- > 0;) {
      corner[a] = rem % cube_counts[a];
      rem /= cube_counts[a];
      base += corner[a] * stride[a];
    }
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    do {
      std::size_t v = base;
      chain[0] = static_cast<VertexId>(v);
      for (std::size_t k = 0; k < dim; ++k) {
        v += stride[perm[k]];
        chain[k + 1] = static_cast<VertexId>(v);
      }
      // chain is increasing; every nonempty subset is a face.
      const std::size_t m = chain.size();
      for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
        std::vector<VertexId> face;
        for (std::size_t k = 0; k < m; ++k) {
          if (mask & (std::size_t{1} << k)) face.push_back(chain[k]);
        }
        simplices.push_back(std::move(face));
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  std::sort(simplices.begin(), simplices.end());
  simplices.erase(std::unique(simplices.begin(), simplices.end()), simplices.end());

  std::vector<FiltrationEntry> entries;
  entries.reserve(simplices.size());
  for (auto& s : simplices) {
    double v = -HUGE_VAL;
    for (VertexId u : s) v = std::max(v, sign * field.values[u]);
    entries.push_back({Simplex{std::move(s)}, v});
  }
  return Filtration::sorted(std::move(entries));
}

std::string format_filtration_dump(const Filtration& filtration) {
  std::string out;
  for (const auto& e : filtration.entries()) {
    out += format_double(e.value);
    out += ' ';
    out += std::to_string(e.simplex.dim());
    for (VertexId v : e.simplex.vertices) {
      out += ' ';
      out += std::to_string(v);
    }
    out += '\n';
  }
  return out;
}

}  // namespace topoconf
