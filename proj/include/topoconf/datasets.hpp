#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "topoconf/geometry.hpp"

namespace topoconf {

enum class GeneratorKind {
  kUniformCircle,
  kTruncatedNormalCircle,
  kEyeglasses,
  kBartSimpson,
};

/// Extra points uniform in the inner cloud's bounding box scaled by
/// `box_scale` about its centre, appended after the inner points.
struct OutlierSpec {
  std::size_t count = 0;
  double box_scale = 1.5;
};

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::kUniformCircle;
  std::size_t n = 500;
  std::uint64_t seed = 0;
  double radius = 1.0;             // circles
  double sigma = 1.0;              // truncated normal angle, radians
  double eyeglasses_offset = 0.9;  // centres at (+-c, 0)
  std::optional<OutlierSpec> outliers;

  /// Accepts the kind names and a `+outliers` suffix, which adds 5% of n
  /// (rounded, at least 1) outliers.
  static GeneratorSpec from_kind(std::string_view kind, std::size_t n, std::uint64_t seed);
  /// Throws ConfigError on invalid parameters.
  void validate() const;
};

GeneratorKind parse_generator_kind(std::string_view name);
std::string_view generator_kind_name(GeneratorKind kind);

/// Deterministic given `spec`. Inner points and outliers use separate random
/// streams, so adding outliers leaves the inner points unchanged.
PointCloud generate(const GeneratorSpec& spec);

/// Points at the given angles on the circle of radius r about the origin.
PointCloud circle_points(const std::vector<double>& angles, double radius);

/// Angle density of the truncated normal on (-pi, pi].
double truncated_normal_angle_pdf(double theta, double sigma);

/// 1/2 phi(x; 0, 1) + 1/10 sum_{j=0..4} phi(x; j/2 - 1, 1/10).
double bart_simpson_pdf(double x);
double bart_simpson_cdf(double x);

}  // namespace topoconf
