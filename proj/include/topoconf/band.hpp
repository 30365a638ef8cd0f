#pragma once

#include <map>
#include <string>
#include <string_view>
#include <variant>

namespace topoconf {

using DiagnosticValue = std::variant<double, std::string>;

/// Half-width c of a confidence band around the diagonal, with the quantities
/// that produced it.
struct BandResult {
  std::string method;
  double alpha = 0.05;
  double c = 0.0;
  std::map<std::string, DiagnosticValue> diagnostics;

  /// Numeric diagnostic, or NaN when absent or not a number.
  double number(const std::string& key) const;

  friend bool operator==(const BandResult&, const BandResult&) = default;
};

/// `{"method": ..., "alpha": ..., "c": ..., "diagnostics": {...}}`. Non-finite
/// numbers are written as the strings "inf", "-inf" and "nan".
std::string band_to_json(const BandResult& band);
BandResult band_from_json(std::string_view text);
BandResult read_band_json(const std::string& path);
void write_band_json(const BandResult& band, const std::string& path);

}  // namespace topoconf
