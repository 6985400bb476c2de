#pragma once

// Report data model for `check` and the JSON (machine) form of every report.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "finsler/classify.hpp"
#include "finsler/metric.hpp"
#include "finsler/tolerances.hpp"

namespace finsler::report {

struct PropertyResult {
  std::string name;
  bool passed = true;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  std::size_t evaluated = 0;
  std::size_t violations = 0;
  std::vector<TangentSample> witnesses;  // worst first, at most 5
  std::string note;

  friend bool operator==(const PropertyResult&, const PropertyResult&) = default;
};

struct CheckReport {
  std::string metric;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  Tolerances tolerances;
  std::vector<PropertyResult> properties;

  bool passed() const;
  friend bool operator==(const CheckReport&, const CheckReport&) = default;
};

nlohmann::json to_json(const TangentSample& s);
TangentSample sample_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Tolerances& t);
Tolerances tolerances_from_json(const nlohmann::json& j);

nlohmann::json to_json(const classify::ProbeResult& p);
classify::ProbeResult probe_from_json(const nlohmann::json& j);

nlohmann::json to_json(const classify::ClassificationReport& r);
classify::ClassificationReport classification_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CheckReport& r);
CheckReport check_from_json(const nlohmann::json& j);

nlohmann::json to_json(const num::SymMatrix& m);
nlohmann::json to_json(const num::Matrix& m);

/// Serialized machine form: compact JSON plus a trailing newline.
std::string dump(const nlohmann::json& j);

}  // namespace finsler::report
