#include "topoconf/datasets.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/distributions/normal.hpp>

#include "topoconf/errors.hpp"
#include "topoconf/random.hpp"

namespace topoconf {

GeneratorKind parse_generator_kind(std::string_view name) {
  if (name == "uniform_circle") return GeneratorKind::kUniformCircle;
  if (name == "truncated_normal_circle") return GeneratorKind::kTruncatedNormalCircle;
  if (name == "eyeglasses") return GeneratorKind::kEyeglasses;
  if (name == "bart_simpson") return GeneratorKind::kBartSimpson;
  throw ConfigError("unknown generator kind '" + std::string(name) + "'");
}

std::string_view generator_kind_name(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::kUniformCircle: return "uniform_circle";
    case GeneratorKind::kTruncatedNormalCircle: return "truncated_normal_circle";
    case GeneratorKind::kEyeglasses: return "eyeglasses";
    case GeneratorKind::kBartSimpson: return "bart_simpson";
  }
  return "?";
}

GeneratorSpec GeneratorSpec::from_kind(std::string_view kind, std::size_t n, std::uint64_t seed) {
  GeneratorSpec spec;
  constexpr std::string_view kSuffix = "+outliers";
  bool with_outliers = false;
  if (kind.size() > kSuffix.size() && kind.substr(kind.size() - kSuffix.size()) == kSuffix) {
    with_outliers = true;
    kind.remove_suffix(kSuffix.size());
  }
  spec.kind = parse_generator_kind(kind);
  spec.n = n;
  spec.seed = seed;
  if (with_outliers) {
    const auto count = static_cast<std::size_t>(std::llround(0.05 * static_cast<double>(n)));
    spec.outliers = OutlierSpec{std::max<std::size_t>(count, 1), 1.5};
  }
  spec.validate();
  return spec;
}

void GeneratorSpec::validate() const {
  if (n < 1) throw ConfigError("n must be at least 1");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw ConfigError("radius must be positive");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ConfigError("sigma must be positive");
  if (!(eyeglasses_offset > 0.0 && eyeglasses_offset < 1.0)) {
    throw ConfigError("eyeglasses offset must lie in (0, 1)");
  }
  if (outliers && !(outliers->box_scale > 0.0)) throw ConfigError("outlier box scale must be positive");
}

PointCloud circle_points(const std::vector<double>& angles, double radius) {
  PointCloud cloud(2);
  for (double a : angles) {
    const double p[2] = {radius * std::cos(a), radius * std::sin(a)};
    cloud.push_back(p);
  }
  return cloud;
}

double truncated_normal_angle_pdf(double theta, double sigma) {
  if (theta <= -std::numbers::pi || theta > std::numbers::pi) return 0.0;
  const boost::math::normal_distribution<double> z(0.0, sigma);
  const double mass = boost::math::cdf(z, std::numbers::pi) - boost::math::cdf(z, -std::numbers::pi);
  return boost::math::pdf(z, theta) / mass;
}

namespace {

constexpr double kSpikeSd = 0.1;

double spike_mean(int j) { return j / 2.0 - 1.0; }

}  // namespace

double bart_simpson_pdf(double x) {
  const boost::math::normal_distribution<double> wide(0.0, 1.0);
  double p = 0.5 * boost::math::pdf(wide, x);
  for (int j = 0; j <= 4; ++j) {
    p += 0.1 * boost::math::pdf(boost::math::normal_distribution<double>(spike_mean(j), kSpikeSd), x);
  }
  return p;
}

double bart_simpson_cdf(double x) {
  const boost::math::normal_distribution<double> wide(0.0, 1.0);
  double p = 0.5 * boost::math::cdf(wide, x);
  for (int j = 0; j <= 4; ++j) {
    p += 0.1 * boost::math::cdf(boost::math::normal_distribution<double>(spike_mean(j), kSpikeSd), x);
  }
  return p;
}

namespace {

PointCloud inner_points(const GeneratorSpec& spec) {
  Rng rng = substream(spec.seed, StreamTag::kGenerate);
  const double two_pi = 2.0 * std::numbers::pi;
  switch (spec.kind) {
    case GeneratorKind::kUniformCircle: {
      std::vector<double> angles(spec.n);
      for (auto& a : angles) a = two_pi * uniform01(rng);
      return circle_points(angles, spec.radius);
    }
    case GeneratorKind::kTruncatedNormalCircle: {
      const boost::math::normal_distribution<double> z(0.0, spec.sigma);
      const double lo = boost::math::cdf(z, -std::numbers::pi);
      const double hi = boost::math::cdf(z, std::numbers::pi);
      std::vector<double> angles(spec.n);
      for (auto& a : angles) {
        const double u = lo + (hi - lo) * uniform_open01(rng);
        a = std::clamp(boost::math::quantile(z, u), -std::numbers::pi, std::numbers::pi);
      }
      return circle_points(angles, spec.radius);
    }
    case GeneratorKind::kEyeglasses: {
      // Outer arcs of two unit circles centred at (+-c, 0); equal lengths, so
      // a fair coin picks the arc.
      const double c = spec.eyeglasses_offset;
      const double a0 = std::acos(c);
      const double span = two_pi - 2.0 * a0;
      PointCloud cloud(2);
      for (std::size_t i = 0; i < spec.n; ++i) {
        const bool left = uniform01(rng) < 0.5;
        const double phi = a0 + span * uniform01(rng);
        // Left circle: angles measured from its centre, away from the join.
        double p[2];
        if (left) {
          p[0] = -c + std::cos(phi);
          p[1] = std::sin(phi);
        } else {
          p[0] = c - std::cos(phi);
          p[1] = std::sin(phi);
        }
        cloud.push_back(p);
      }
      return cloud;
    }
    case GeneratorKind::kBartSimpson: {
      PointCloud cloud(1);
      for (std::size_t i = 0; i < spec.n; ++i) {
        const double u = uniform01(rng);
        double x = 0.0;
        if (u < 0.5) {
          x = standard_normal(rng);
        } else {
          const int j = std::min(4, static_cast<int>((u - 0.5) * 10.0));
          x = spike_mean(j) + kSpikeSd * standard_normal(rng);
        }
        cloud.push_back(std::span<const double>(&x, 1));
      }
      return cloud;
    }
  }
  throw ConfigError("unknown generator kind");
}

}  // namespace

PointCloud generate(const GeneratorSpec& spec) {
  spec.validate();
  PointCloud cloud = inner_points(spec);
  if (!spec.outliers || spec.outliers->count == 0) return cloud;
  const std::size_t dim = cloud.dim();
  std::vector<double> lo(dim), hi(dim);
  for (std::size_t a = 0; a < dim; ++a) {
    const auto& ax = cloud.axis(a);
    const auto [mn, mx] = std::minmax_element(ax.begin(), ax.end());
    const double mid = (*mn + *mx) / 2.0;
    const double half = (*mx - *mn) / 2.0 * spec.outliers->box_scale;
    lo[a] = mid - half;
    hi[a] = mid + half;
  }
  Rng rng = substream(spec.seed, StreamTag::kOutliers);
  std::vector<double> p(dim);
  for (std::size_t i = 0; i < spec.outliers->count; ++i) {
    for (std::size_t a = 0; a < dim; ++a) p[a] = lo[a] + (hi[a] - lo[a]) * uniform01(rng);
    cloud.push_back(p);
  }
  return cloud;
}

}  // namespace topoconf
