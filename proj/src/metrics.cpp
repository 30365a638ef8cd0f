#include "topoconf/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "topoconf/errors.hpp"
#include "topoconf/simd/kernels.hpp"

namespace topoconf {

double linf_cost(const PersistencePair& a, const PersistencePair& b) {
  return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

double diagonal_distance(const PersistencePair& p) { return p.persistence() / 2.0; }

namespace {

// Hopcroft-Karp on a bipartite graph given by adjacency lists.
class HopcroftKarp {
 public:
  HopcroftKarp(std::size_t left, std::size_t right)
      : adj_(left), match_l_(left), match_r_(right), dist_(left) {}

  void add_edge(std::size_t u, std::size_t v) { adj_[u].push_back(v); }

  std::size_t max_matching() {
    std::fill(match_l_.begin(), match_l_.end(), kFree);
    std::fill(match_r_.begin(), match_r_.end(), kFree);
    std::size_t size = 0;
    while (bfs()) {
      for (std::size_t u = 0; u < adj_.size(); ++u) {
        if (match_l_[u] == kFree && dfs(u)) ++size;
      }
    }
    return size;
  }

 private:
  static constexpr std::size_t kFree = std::numeric_limits<std::size_t>::max();

  bool bfs() {
    std::queue<std::size_t> q;
    bool reachable_free = false;
    for (std::size_t u = 0; u < adj_.size(); ++u) {
      if (match_l_[u] == kFree) {
        dist_[u] = 0;
        q.push(u);
      } else {
        dist_[u] = kFree;
      }
    }
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop();
      for (std::size_t v : adj_[u]) {
        const std::size_t w = match_r_[v];
        if (w == kFree) {
          reachable_free = true;
        } else if (dist_[w] == kFree) {
          dist_[w] = dist_[u] + 1;
          q.push(w);
        }
      }
    }
    return reachable_free;
  }

  bool dfs(std::size_t u) {
    for (std::size_t v : adj_[u]) {
      const std::size_t w = match_r_[v];
      if (w == kFree || (dist_[w] == dist_[u] + 1 && dfs(w))) {
        match_l_[u] = v;
        match_r_[v] = u;
        return true;
      }
    }
    dist_[u] = kFree;
    return false;
  }

  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::size_t> match_l_, match_r_, dist_;
};

// Left: A then diagonal copies of B. Right: B then diagonal copies of A.
bool feasible(const std::vector<PersistencePair>& a, const std::vector<PersistencePair>& b,
              double t) {
  const std::size_t m = a.size(), k = b.size();
  HopcroftKarp hk(m + k, m + k);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (linf_cost(a[i], b[j]) <= t) hk.add_edge(i, j);
    }
    if (diagonal_distance(a[i]) <= t) hk.add_edge(i, k + i);
  }
  for (std::size_t j = 0; j < k; ++j) {
    if (diagonal_distance(b[j]) <= t) hk.add_edge(m + j, j);
    for (std::size_t i = 0; i < m; ++i) hk.add_edge(m + j, k + i);
  }
  return hk.max_matching() == m + k;
}

}  // namespace

double bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b, int p) {
  std::vector<PersistencePair> fa, fb;
  std::vector<double> ea, eb;
  for (const auto& x : a.pairs) {
    if (x.dim != p) continue;
    if (x.essential()) ea.push_back(x.birth); else fa.push_back(x);
  }
  for (const auto& x : b.pairs) {
    if (x.dim != p) continue;
    if (x.essential()) eb.push_back(x.birth); else fb.push_back(x);
  }
  if (ea.size() != eb.size()) return kInfinity;
  std::sort(ea.begin(), ea.end());
  std::sort(eb.begin(), eb.end());
  double essential_cost = 0.0;
  for (std::size_t i = 0; i < ea.size(); ++i) {
    essential_cost = std::max(essential_cost, std::abs(ea[i] - eb[i]));
  }

  std::vector<double> candidates{0.0};
  for (const auto& x : fa) {
    candidates.push_back(diagonal_distance(x));
    for (const auto& y : fb) candidates.push_back(linf_cost(x, y));
  }
  for (const auto& y : fb) candidates.push_back(diagonal_distance(y));
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  // Matching every point to the diagonal is always feasible at the largest
  // diagonal distance, so the search has a feasible upper end.
  std::size_t lo = 0, hi = candidates.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (feasible(fa, fb, candidates[mid])) hi = mid; else lo = mid + 1;
  }
  return std::max(essential_cost, candidates[lo]);
}

double sup_distance(const GridField& f, const GridField& g) {
  if (!(f.geometry == g.geometry) || f.values.size() != g.values.size()) {
    throw ConfigError("sup_distance needs fields on the same grid");
  }
  return simd::kernels().max_abs_diff(f.values.data(), g.values.data(), f.values.size());
}

}  // namespace topoconf
