#include "topoconf/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>

#include <boost/functional/hash.hpp>

#include "topoconf/errors.hpp"
#include "topoconf/text_io.hpp"

namespace topoconf {

double PersistencePair::persistence() const {
  return essential() ? kInfinity : std::abs(death - birth);
}

PersistenceDiagram PersistenceDiagram::in_dim(int dim) const {
  PersistenceDiagram out;
  for (const auto& p : pairs) {
    if (p.dim == dim) out.pairs.push_back(p);
  }
  return out;
}

PersistenceDiagram PersistenceDiagram::canonical() const {
  PersistenceDiagram out = *this;
  std::sort(out.pairs.begin(), out.pairs.end());
  return out;
}

std::size_t PersistenceDiagram::essential_count(int dim) const {
  return static_cast<std::size_t>(std::count_if(
      pairs.begin(), pairs.end(),
      [dim](const PersistencePair& p) { return p.dim == dim && p.essential(); }));
}

namespace {

using Column = std::vector<std::uint32_t>;
using SimplexIndex =
    std::unordered_map<std::vector<VertexId>, std::uint32_t, boost::hash<std::vector<VertexId>>>;

// Boundary columns as sorted filtration indices.
std::vector<Column> boundary_matrix(const Filtration& f) {
  SimplexIndex index;
  index.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto& v = f[i].simplex.vertices;
    if (v.empty()) throw ConfigError("filtration contains an empty simplex");
    for (std::size_t k = 1; k < v.size(); ++k) {
      if (v[k - 1] >= v[k]) throw ConfigError("simplex vertices not strictly increasing");
    }
    if (!index.emplace(v, static_cast<std::uint32_t>(i)).second) {
      throw ConfigError("simplex listed twice in filtration");
    }
  }
  std::vector<Column> cols(f.size());
  std::vector<VertexId> facet;
  for (std::size_t j = 0; j < f.size(); ++j) {
    const auto& v = f[j].simplex.vertices;
    if (v.size() < 2) continue;
    cols[j].reserve(v.size());
    for (std::size_t drop = 0; drop < v.size(); ++drop) {
      facet.clear();
      for (std::size_t k = 0; k < v.size(); ++k) {
        if (k != drop) facet.push_back(v[k]);
      }
      const auto it = index.find(facet);
      if (it == index.end()) throw ConfigError("filtration is missing a facet");
      if (it->second >= j) throw ConfigError("facet appears after its coface in filtration");
      if (f[it->second].value > f[j].value) {
        throw ConfigError("facet has a larger filtration value than its coface");
      }
      cols[j].push_back(it->second);
    }
    std::sort(cols[j].begin(), cols[j].end());
  }
  return cols;
}

void add_into(Column& target, const Column& source, Column& scratch) {
  scratch.clear();
  std::set_symmetric_difference(target.begin(), target.end(), source.begin(),
                                source.end(), std::back_inserter(scratch));
  target.swap(scratch);
}

constexpr std::uint32_t kNone = 0xffffffffu;

void reduce_column(std::size_t j, std::vector<Column>& cols,
                   std::vector<std::uint32_t>& pivot_owner, Column& scratch) {
  Column& c = cols[j];
  while (!c.empty()) {
    const std::uint32_t low = c.back();
    const std::uint32_t owner = pivot_owner[low];
    if (owner == kNone) {
      pivot_owner[low] = static_cast<std::uint32_t>(j);
      return;
    }
    add_into(c, cols[owner], scratch);
  }
}

}  // namespace

PersistenceDiagram reduce(const Filtration& filtration, const ReduceOptions& options) {
  std::vector<Column> cols = boundary_matrix(filtration);
  const std::size_t m = cols.size();
  std::vector<std::uint32_t> pivot_owner(m, kNone);
  Column scratch;

  if (options.algorithm == ReductionAlgorithm::kStandard) {
    for (std::size_t j = 0; j < m; ++j) reduce_column(j, cols, pivot_owner, scratch);
  } else {
    const int top = filtration.max_dim();
    for (int d = top; d >= 1; --d) {
      for (std::size_t j = 0; j < m; ++j) {
        if (filtration[j].simplex.dim() != d || cols[j].empty()) continue;
        reduce_column(j, cols, pivot_owner, scratch);
        // The birth simplex of this pair is positive; its column reduces to zero.
        if (!cols[j].empty()) cols[cols[j].back()].clear();
      }
    }
  }

  PersistenceDiagram out;
  std::vector<char> paired(m, 0);
  for (std::size_t j = 0; j < m; ++j) {
    if (cols[j].empty()) continue;
    const std::uint32_t i = cols[j].back();
    paired[i] = paired[j] = 1;
    const double b = filtration[i].value;
    const double d = filtration[j].value;
    if (b == d && !options.keep_zero_persistence) continue;
    out.pairs.push_back({filtration[i].simplex.dim(), b, d});
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (!paired[j] && cols[j].empty()) {
      out.pairs.push_back({filtration[j].simplex.dim(), filtration[j].value, kInfinity});
    }
  }
  return out.canonical();
}

namespace {

// Rank over Z2 of a set of sparse rows, using dense bit rows.
std::size_t z2_rank(const std::vector<Column>& rows, std::size_t width) {
  const std::size_t words = (width + 63) / 64;
  std::vector<std::vector<std::uint64_t>> m;
  m.reserve(rows.size());
  for (const auto& r : rows) {
    std::vector<std::uint64_t> bits(words, 0);
    for (auto c : r) bits[c / 64] ^= std::uint64_t{1} << (c % 64);
    m.push_back(std::move(bits));
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < width && rank < m.size(); ++col) {
    const std::size_t w = col / 64;
    const std::uint64_t bit = std::uint64_t{1} << (col % 64);
    std::size_t pivot = rank;
    while (pivot < m.size() && !(m[pivot][w] & bit)) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r != rank && (m[r][w] & bit)) {
        for (std::size_t k = 0; k < words; ++k) m[r][k] ^= m[rank][k];
      }
    }
    ++rank;
  }
  return rank;
}

// Rank of the boundary map from dimension q to q-1 restricted to simplices
// with value <= t. Rows are q-simplices, columns index (q-1)-simplices.
std::size_t boundary_rank(const Filtration& f, const std::vector<Column>& cols,
                          double t, int q) {
  if (q < 1) return 0;
  std::unordered_map<std::uint32_t, std::uint32_t> local;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i].value <= t && f[i].simplex.dim() == q - 1) {
      local.emplace(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(local.size()));
    }
  }
  std::vector<Column> rows;
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (f[j].value > t || f[j].simplex.dim() != q) continue;
    Column r;
    for (auto i : cols[j]) r.push_back(local.at(i));
    rows.push_back(std::move(r));
  }
  return z2_rank(rows, local.size());
}

}  // namespace

std::size_t betti_at(const Filtration& filtration, double value, int p) {
  if (p < 0) return 0;
  const std::vector<Column> cols = boundary_matrix(filtration);
  std::size_t chains = 0;
  for (std::size_t i = 0; i < filtration.size(); ++i) {
    if (filtration[i].value <= value && filtration[i].simplex.dim() == p) ++chains;
  }
  const std::size_t cycles = chains - boundary_rank(filtration, cols, value, p);
  return cycles - boundary_rank(filtration, cols, value, p + 1);
}

double total_persistence(const PersistenceDiagram& diagram, double degree,
                         double threshold) {
  if (!(degree > 0.0)) throw ConfigError("degree must be positive");
  if (!(threshold >= 0.0)) throw ConfigError("threshold must be non-negative");
  double sum = 0.0;
  for (const auto& p : diagram.pairs) {
    if (p.essential()) continue;
    const double r = p.persistence() / 2.0;
    if (r > threshold) sum += std::pow(r, degree);
  }
  return 2.0 * sum;
}

std::string format_diagram_csv(const PersistenceDiagram& diagram) {
  std::string out = "dim,birth,death\n";
  for (const auto& p : diagram.pairs) {
    out += std::to_string(p.dim);
    out += ',';
    out += format_double(p.birth);
    out += ',';
    out += format_double(p.death);
    out += '\n';
  }
  return out;
}

PersistenceDiagram parse_diagram_csv(std::string_view text) {
  PersistenceDiagram out;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    const auto fields = split_fields(line, ',');
    if (!header_seen) {
      header_seen = true;
      if (fields.size() == 3 && fields[0] == "dim" && fields[1] == "birth" &&
          fields[2] == "death") {
        continue;
      }
      throw IoError("diagram CSV must start with header dim,birth,death");
    }
    if (fields.size() != 3) {
      throw IoError("diagram CSV line " + std::to_string(line_no) + ": expected 3 fields");
    }
    const double dim = parse_double(fields[0]);
    if (dim < 0 || dim != std::floor(dim) || dim > 64) {
      throw IoError("diagram CSV line " + std::to_string(line_no) + ": bad dimension");
    }
    PersistencePair p{static_cast<int>(dim), parse_double(fields[1]), parse_double(fields[2])};
    if (!std::isfinite(p.birth) || std::isnan(p.death) || p.death == -kInfinity) {
      throw IoError("diagram CSV line " + std::to_string(line_no) + ": invalid pair");
    }
    out.pairs.push_back(p);
  }
  if (!header_seen) throw IoError("diagram CSV is empty");
  return out;
}

PersistenceDiagram read_diagram_csv(const std::string& path) {
  return parse_diagram_csv(read_text_file(path));
}

void write_diagram_csv(const PersistenceDiagram& diagram, const std::string& path) {
  write_text_file(path, format_diagram_csv(diagram));
}

}  // namespace topoconf
