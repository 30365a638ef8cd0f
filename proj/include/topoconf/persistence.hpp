#pragma once

#include <compare>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "topoconf/complex.hpp"

namespace topoconf {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct PersistencePair {
  int dim = 0;
  double birth = 0.0;
  double death = kInfinity;

  bool essential() const { return death == kInfinity; }
  /// |death - birth|; +inf for essential classes. Density diagrams store the
  /// higher level as birth, so the order of the two values is not fixed.
  double persistence() const;

  friend auto operator<=>(const PersistencePair&, const PersistencePair&) = default;
};

/// Multiset of pairs. Order carries no meaning; `canonical()` sorts by
/// (dim, birth, death) for comparisons and output.
struct PersistenceDiagram {
  std::vector<PersistencePair> pairs;

  std::size_t size() const { return pairs.size(); }
  bool empty() const { return pairs.empty(); }
  PersistenceDiagram in_dim(int dim) const;
  PersistenceDiagram canonical() const;
  std::size_t essential_count(int dim) const;

  friend bool operator==(const PersistenceDiagram&, const PersistenceDiagram&) = default;
};

enum class ReductionAlgorithm {
  kStandard,  // left-to-right column additions
  kTwist,     // same, high dimension first, clearing killed columns
};

struct ReduceOptions {
  ReductionAlgorithm algorithm = ReductionAlgorithm::kTwist;
  bool keep_zero_persistence = false;
};

/// Z2 boundary-matrix reduction. Throws ConfigError when a facet is missing,
/// appears after its coface, or carries a larger value.
PersistenceDiagram reduce(const Filtration& filtration, const ReduceOptions& options = {});

/// Rank of H_p of the subcomplex with values <= value, by dense Gaussian
/// elimination of the boundary matrices.
std::size_t betti_at(const Filtration& filtration, double value, int p);

/// 2 * sum over finite pairs with |death-birth|/2 > threshold of
/// (|death-birth|/2)^degree.
double total_persistence(const PersistenceDiagram& diagram, double degree,
                         double threshold);

/// Header `dim,birth,death`; essential deaths written as `inf`.
std::string format_diagram_csv(const PersistenceDiagram& diagram);
PersistenceDiagram parse_diagram_csv(std::string_view text);
PersistenceDiagram read_diagram_csv(const std::string& path);
void write_diagram_csv(const PersistenceDiagram& diagram, const std::string& path);

}  // namespace topoconf
