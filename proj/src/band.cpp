#include "topoconf/band.hpp"

#include <cmath>
#include <limits>

#include "json.hpp"
#include "topoconf/errors.hpp"
#include "topoconf/text_io.hpp"

namespace topoconf {

double BandResult::number(const std::string& key) const {
  const auto it = diagnostics.find(key);
  if (it == diagnostics.end() || !std::holds_alternative<double>(it->second)) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return std::get<double>(it->second);
}

namespace {

using nlohmann::ordered_json;

ordered_json number_json(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

bool special_number(const std::string& s, double& out) {
  if (s == "nan") {
    out = std::numeric_limits<double>::quiet_NaN();
    return true;
  }
  if (s == "inf" || s == "-inf") {
    out = parse_double(s);
    return true;
  }
  return false;
}

double number_from(const ordered_json& j, const char* what) {
  if (j.is_number()) return j.get<double>();
  double v = 0.0;
  if (j.is_string() && special_number(j.get<std::string>(), v)) return v;
  throw IoError(std::string("band JSON: field '") + what + "' is not a number");
}

}  // namespace

std::string band_to_json(const BandResult& band) {
  ordered_json j;
  j["method"] = band.method;
  j["alpha"] = number_json(band.alpha);
  j["c"] = number_json(band.c);
  ordered_json diag = ordered_json::object();
  for (const auto& [key, value] : band.diagnostics) {
    if (std::holds_alternative<double>(value)) {
      diag[key] = number_json(std::get<double>(value));
    } else {
      diag[key] = std::get<std::string>(value);
    }
  }
  j["diagnostics"] = std::move(diag);
  return j.dump(2) + "\n";
}

BandResult band_from_json(std::string_view text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("band JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("method") || !j.contains("alpha") || !j.contains("c")) {
    throw IoError("band JSON needs method, alpha and c");
  }
  BandResult band;
  if (!j["method"].is_string()) throw IoError("band JSON: method must be a string");
  band.method = j["method"].get<std::string>();
  band.alpha = number_from(j["alpha"], "alpha");
  band.c = number_from(j["c"], "c");
  if (j.contains("diagnostics")) {
    if (!j["diagnostics"].is_object()) throw IoError("band JSON: diagnostics must be an object");
    for (const auto& [key, value] : j["diagnostics"].items()) {
      if (value.is_number()) {
        band.diagnostics[key] = value.get<double>();
      } else if (value.is_string()) {
        const auto s = value.get<std::string>();
        double v = 0.0;
        if (special_number(s, v)) {
          band.diagnostics[key] = v;
        } else {
          band.diagnostics[key] = s;
        }
      } else {
        throw IoError("band JSON: diagnostic '" + key + "' must be a number or string");
      }
    }
  }
  return band;
}

BandResult read_band_json(const std::string& path) {
  return band_from_json(read_text_file(path));
}

void write_band_json(const BandResult& band, const std::string& path) {
  write_text_file(path, band_to_json(band));
}

}  // namespace topoconf
