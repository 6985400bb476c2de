#pragma once

// JSON run configuration for the command-line front end.
//
//   {
//     "metric":   <metric node>,
//     "sampling": {"x": [[lo, hi], ...], "y": [[lo, hi], ...],
//                  "count": 1000, "seed": 7,
//                  "base_points": 10, "directions": 6},
//     "tolerances": {"euler": 1e-9, ...},
//     "format": "table" | "machine",
//     "validity_points": [[x...], ...]
//   }
//
// Metric nodes carry a "family" tag (euclidean, const_riemann, klein,
// quartic_minkowski, knorm_minkowski, randers, example11, example43,
// convolution) plus its parameters; any node may add "offset" to build the
// non-homogeneous F + offset test fixture. Convolution nodes hold
// "factor1", "factor2" (metric nodes) and "f1", "f2" (field nodes with a
// "kind" of constant, exp_linear, monomial, norm_squared_plus). Nesting is
// limited to depth 4.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "finsler/convolution.hpp"
#include "finsler/errors.hpp"
#include "finsler/metric.hpp"
#include "finsler/tolerances.hpp"

namespace finsler::cli {

class ConfigError : public InvalidParameter {
 public:
  using InvalidParameter::InvalidParameter;
};

inline constexpr int kMaxSpecDepth = 4;

enum class OutputFormat { Table, Machine };

struct ParsedMetric {
  MetricPtr metric;
  std::optional<conv::ConvolutionSpec> convolution;  // top-level node only
};

ScalarField parse_field(const nlohmann::json& node, std::size_t dim);
ParsedMetric parse_metric(const nlohmann::json& node,
                          const std::vector<Vec>& validity_points = {},
                          int depth = 1);

struct SamplingConfig {
  std::optional<SampleBox> box;
  std::size_t count = 1000;
  std::optional<std::uint64_t> seed;
  std::size_t base_points = 10;
  std::size_t directions = 6;
};

struct RunConfig {
  ParsedMetric metric;
  SamplingConfig sampling;
  Tolerances tolerances;
  OutputFormat format = OutputFormat::Table;

  SampleBox box() const;
};

RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

/// Applies "name=value[,name=value...]" overrides.
void apply_tolerance_overrides(Tolerances& tol, const std::string& spec);

}  // namespace finsler::cli
