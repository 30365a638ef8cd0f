// Implicit cohomology reduction with clearing and emergent pairs, in the
// style of Bauer's Ripser. Simplices are encoded in the combinatorial number
// system; the filtration order is (diameter ascending, index descending).

#include "topoconf/rips_persistence.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <queue>
#include <unordered_map>

#include "topoconf/errors.hpp"

namespace topoconf {
namespace {

using Index = std::uint64_t;

struct Entry {
  double diam;
  Index index;
};

// Filtration order: smaller diameter first, larger index first on ties.
bool earlier(const Entry& a, const Entry& b) {
  return a.diam < b.diam || (a.diam == b.diam && a.index > b.index);
}

struct LaterFirst {
  bool operator()(const Entry& a, const Entry& b) const { return earlier(a, b); }
};
struct EarlierFirst {
  bool operator()(const Entry& a, const Entry& b) const { return earlier(b, a); }
};

class Binomial {
 public:
  Binomial(std::size_t n, int k) : k_(k + 1), table_((n + 1) * (k + 2), 0) {
    for (std::size_t i = 0; i <= n; ++i) {
      at(i, 0) = 1;
      for (int j = 1; j <= std::min<int>(static_cast<int>(i), k + 1); ++j) {
        at(i, j) = (j == static_cast<int>(i)) ? 1 : at(i - 1, j - 1) + at(i - 1, j);
      }
    }
  }
  Index operator()(std::size_t n, int k) const {
    return k < 0 ? 0 : table_[n * (k_ + 1) + static_cast<std::size_t>(k)];
  }

 private:
  Index& at(std::size_t n, int k) { return table_[n * (k_ + 1) + static_cast<std::size_t>(k)]; }
  int k_;
  std::vector<Index> table_;
};

class Engine {
 public:
  Engine(const PointCloud& cloud, double threshold, int max_dim)
      : n_(cloud.size()), threshold_(threshold), max_dim_(max_dim),
        binom_(cloud.size(), max_dim + 1), dist_(pairwise_distances(cloud)) {
    for (double& v : dist_) v *= 0.5;
  }

  PersistenceDiagram run() {
    PersistenceDiagram out;
    std::vector<Entry> columns = dim0(out);
    for (int d = 1; d < max_dim_; ++d) {
      std::unordered_map<Index, std::size_t> pivots;
      pivots.reserve(columns.size());
      reduce_dim(d, columns, pivots, out);
      if (d + 1 < max_dim_) columns = next_columns(d, pivots);
    }
    return out.canonical();
  }

 private:
  double d(std::size_t i, std::size_t j) const { return dist_[i * n_ + j]; }

  void vertices_of(Index idx, int dim, std::vector<std::size_t>& out) const {
    out.resize(static_cast<std::size_t>(dim) + 1);
    std::size_t top = n_;
    for (int k = dim + 1; k >= 1; --k) {
      // Largest v with C(v, k) <= idx.
      std::size_t lo = static_cast<std::size_t>(k - 1), hi = top;
      while (hi - lo > 1) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (binom_(mid, k) <= idx) lo = mid; else hi = mid;
      }
      out[static_cast<std::size_t>(k - 1)] = lo;
      idx -= binom_(lo, k);
      top = lo;
    }
  }

  Index index_of(const std::vector<std::size_t>& v) const {
    Index idx = 0;
    for (std::size_t k = 0; k < v.size(); ++k) idx += binom_(v[k], static_cast<int>(k) + 1);
    return idx;
  }

  double diameter(const std::vector<std::size_t>& v) const {
    double m = 0.0;
    for (std::size_t a = 0; a < v.size(); ++a) {
      for (std::size_t b = a + 1; b < v.size(); ++b) m = std::max(m, d(v[a], v[b]));
    }
    return m;
  }

  // Visits cofacets within the threshold in decreasing index order; the
  // visitor returns false to stop early.
  template <typename Visit>
  void cofacets(const Entry& s, int dim, Visit&& visit) {
    vertices_of(s.index, dim, scratch_);
    Index below = s.index, above = 0;
    int j = dim;
    for (std::size_t w = n_; w-- > 0;) {
      if (j >= 0 && w == scratch_[static_cast<std::size_t>(j)]) {
        below -= binom_(w, j + 1);
        above += binom_(w, j + 2);
        --j;
        continue;
      }
      double diam = s.diam;
      for (int k = 0; k <= dim; ++k) diam = std::max(diam, d(w, scratch_[static_cast<std::size_t>(k)]));
      if (diam > threshold_) continue;
      const Entry c{diam, above + binom_(w, j + 2) + below};
      if (!visit(c)) return;
    }
  }

  std::vector<Entry> dim0(PersistenceDiagram& out) {
    std::vector<Entry> edges;
    for (std::size_t b = 1; b < n_; ++b) {
      for (std::size_t a = 0; a < b; ++a) {
        if (d(a, b) <= threshold_) edges.push_back({d(a, b), binom_(b, 2) + a});
      }
    }
    std::sort(edges.begin(), edges.end(), earlier);
    std::vector<std::size_t> parent(n_);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    std::vector<Entry> unpaired;
    std::vector<std::size_t> v;
    for (const Entry& e : edges) {
      vertices_of(e.index, 1, v);
      const std::size_t ra = find(v[0]), rb = find(v[1]);
      if (ra == rb) {
        unpaired.push_back(e);
        continue;
      }
      parent[std::max(ra, rb)] = std::min(ra, rb);
      if (e.diam > 0.0) out.pairs.push_back({0, 0.0, e.diam});
    }
    for (std::size_t i = 0; i < n_; ++i) {
      if (find(i) == i) out.pairs.push_back({0, 0.0, kInfinity});
    }
    // Edges are reduced latest first.
    std::reverse(unpaired.begin(), unpaired.end());
    return unpaired;
  }

  // Earliest entry with odd multiplicity, left on the heap.
  bool pop_pivot(std::priority_queue<Entry, std::vector<Entry>, EarlierFirst>& heap,
                 Entry& pivot) {
    while (!heap.empty()) {
      Entry top = heap.top();
      heap.pop();
      if (!heap.empty() && heap.top().index == top.index) {
        heap.pop();
        continue;
      }
      pivot = top;
      heap.push(top);
      return true;
    }
    return false;
  }

  void reduce_dim(int dim, const std::vector<Entry>& columns,
                  std::unordered_map<Index, std::size_t>& pivots,
                  PersistenceDiagram& out) {
    // Reduction records: the simplices whose coboundaries sum to each pivot column.
    std::vector<std::vector<Entry>> records;
    for (const Entry& sigma : columns) {
      // Emergent pair: the earliest cofacet has the same diameter and is free.
      bool found_equal = false;
      Entry first{};
      cofacets(sigma, dim, [&](const Entry& c) {
        if (c.diam == sigma.diam) {
          first = c;
          found_equal = true;
          return false;
        }
        return true;
      });
      if (found_equal && !pivots.count(first.index)) {
        pivots.emplace(first.index, records.size());
        records.push_back({sigma});
        continue;
      }

      std::priority_queue<Entry, std::vector<Entry>, EarlierFirst> heap;
      std::vector<Entry> record{sigma};
      cofacets(sigma, dim, [&](const Entry& c) { heap.push(c); return true; });
      Entry pivot{};
      bool has = pop_pivot(heap, pivot);
      while (has) {
        const auto it = pivots.find(pivot.index);
        if (it == pivots.end()) break;
        for (const Entry& s : records[it->second]) {
          record.push_back(s);
          cofacets(s, dim, [&](const Entry& c) { heap.push(c); return true; });
        }
        has = pop_pivot(heap, pivot);
      }
      if (!has) {
        out.pairs.push_back({dim, sigma.diam, kInfinity});
        continue;
      }
      if (pivot.diam > sigma.diam) out.pairs.push_back({dim, sigma.diam, pivot.diam});
      // Cancel duplicate simplices in the record before storing it.
      std::sort(record.begin(), record.end(),
                [](const Entry& a, const Entry& b) { return a.index < b.index; });
      std::vector<Entry> compact;
      for (std::size_t k = 0; k < record.size();) {
        std::size_t m = k;
        while (m < record.size() && record[m].index == record[k].index) ++m;
        if ((m - k) % 2 == 1) compact.push_back(record[k]);
        k = m;
      }
      pivots.emplace(pivot.index, records.size());
      records.push_back(std::move(compact));
    }
  }

  // (dim+1)-simplices in reverse filtration order, skipping those already
  // paired as pivots (clearing).
  std::vector<Entry> next_columns(int dim, const std::unordered_map<Index, std::size_t>& pivots) {
    std::vector<Entry> all;
    std::vector<std::size_t> v(static_cast<std::size_t>(dim) + 2);
    enumerate(0, 0, dim + 2, v, all, pivots);
    std::sort(all.begin(), all.end(), [](const Entry& a, const Entry& b) { return earlier(b, a); });
    return all;
  }

  void enumerate(std::size_t pos, std::size_t start, int size, std::vector<std::size_t>& v,
                 std::vector<Entry>& out,
                 const std::unordered_map<Index, std::size_t>& pivots) {
    if (pos == static_cast<std::size_t>(size)) {
      const Entry e{diameter(v), index_of(v)};
      if (!pivots.count(e.index)) out.push_back(e);
      return;
    }
    for (std::size_t w = start; w < n_; ++w) {
      bool ok = true;
      for (std::size_t k = 0; k < pos; ++k) {
        if (d(v[k], w) > threshold_) { ok = false; break; }
      }
      if (!ok) continue;
      v[pos] = w;
      enumerate(pos + 1, w + 1, size, v, out, pivots);
    }
  }

  std::size_t n_;
  double threshold_;
  int max_dim_;
  Binomial binom_;
  std::vector<double> dist_;
  std::vector<std::size_t> scratch_;
};

}  // namespace

PersistenceDiagram rips_persistence(const PointCloud& cloud, double max_scale,
                                    int max_dim) {
  if (max_dim < 1) throw ConfigError("max_dim must be >= 1");
  if (!(max_scale > 0.0)) throw ConfigError("max_scale must be positive");
  if (cloud.empty()) return {};
  // Past the enclosing radius the complex is a cone and nothing changes.
  double enclosing = kInfinity;
  const std::size_t n = cloud.size();
  {
    const auto dist = pairwise_distances(cloud);
    for (std::size_t i = 0; i < n; ++i) {
      double far = 0.0;
      for (std::size_t j = 0; j < n; ++j) far = std::max(far, dist[i * n + j] * 0.5);
      enclosing = std::min(enclosing, far);
    }
  }
  Engine engine(cloud, std::min(max_scale, enclosing), max_dim);
  return engine.run();
}

}  // namespace topoconf
