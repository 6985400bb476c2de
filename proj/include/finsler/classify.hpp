#pragma once

// Sampled probes for the special classes of Finsler metrics. Each probe
// certifies its class only at the sampled resolution and reports the
// largest deviation it saw, so verdicts always come with numbers.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "finsler/convolution.hpp"
#include "finsler/metric.hpp"
#include "finsler/sampling.hpp"
#include "finsler/tolerances.hpp"

namespace finsler::classify {

enum class Verdict { Positive, Negative, Unclassifiable };
const char* to_string(Verdict v);
std::optional<Verdict> verdict_from_string(std::string_view s);

struct ProbeResult {
  Verdict verdict = Verdict::Unclassifiable;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  std::size_t evaluated = 0;
  std::size_t skipped = 0;  // samples rejected with DomainError
  std::optional<TangentSample> witness;
  std::map<std::string, double> stats;
  std::string note;

  bool positive() const noexcept { return verdict == Verdict::Positive; }
  friend bool operator==(const ProbeResult&, const ProbeResult&) = default;
};

/// Positive iff max |Cartan| < tol over the samples.
ProbeResult probe_riemannian(const FinslerMetric& m,
                             std::span<const TangentSample> samples,
                             double tol = 1e-6, double step = 1e-4);

/// Positive iff, for every shared direction, g varies across base points by
/// less than tol (max entrywise spread).
ProbeResult probe_minkowski(const FinslerMetric& m, const SampleGrid& grid,
                            double tol = 1e-6);

/// Least-squares 1-form and Riemannian part recovered at one base point
/// from the even/odd split of F.
struct RandersFit {
  Vec b;                       // fitted beta coefficients
  num::SymMatrix a;            // (1/2) Hess(alpha^2) at the first direction
  double linear_residual = 0;  // max |beta - b.y| / max F
  double alpha_spread = 0;     // max spread of Hess(alpha^2)/2 over y, / max|a|
  double beta_norm = 0;        // sqrt(b^T a^-1 b)
};

RandersFit fit_randers(const FinslerMetric& m, Point x, std::span<const Vec> ys,
                       double margin = Tolerances{}.domain_margin);

/// Positive iff beta is linear in y, alpha^2 is quadratic in y (both within
/// tol, relative) and |beta|_alpha < 1 at every base point. Unclassifiable
/// when the domain is not symmetric under y -> -y.
ProbeResult probe_randers(const FinslerMetric& m, const SampleGrid& grid,
                          double tol = 1e-6);

/// Positive iff Riemannian, locally Minkowskian, and g is one constant
/// matrix on all samples (flat: Euclidean up to a linear change of
/// coordinates).
ProbeResult probe_euclidean(const FinslerMetric& m, const SampleGrid& grid,
                            const Tolerances& tol = {});

/// |a1 b2 - a2 b1| / (|a1 b2| + |a2 b1|); DivisionDomain if the
/// denominator vanishes.
double ratio_residual(double alpha1, double beta1, double alpha2, double beta2);

struct RatioCheck {
  bool ratio_holds = false;
  double max_residual = 0.0;
  std::size_t evaluated = 0;
  std::size_t skipped = 0;
  /// max |F_combined - F_convolution| / F_convolution, when the ratio holds
  std::optional<double> max_combined_error;
  std::optional<TangentSample> witness;
};

/// Tests alpha1/alpha2 = beta1/beta2 for a convolution of two Randers
/// factors with one constant field. When it holds, also rebuilds the
/// combined form alpha = sqrt(alpha1*^2 + alpha2*^2), beta likewise (signed),
/// with alpha1* = f2 alpha1, alpha2* = f1 alpha2, and checks alpha + beta
/// against the convolution.
RatioCheck check_randers_ratio(const conv::ConvolutionSpec& spec,
                               std::span<const TangentSample> samples,
                               double tol = 1e-9);

struct ClassificationReport {
  std::string metric;
  std::uint64_t seed = 0;
  std::size_t sample_count = 0;
  Tolerances tolerances;
  ProbeResult riemannian;
  ProbeResult minkowskian;
  ProbeResult randers;
  ProbeResult euclidean;
  ProbeResult homogeneity;
  ProbeResult strong_convexity;
  std::string convention;

  /// Names of the positive classes, or {"Unclassified"}.
  std::vector<std::string> classes() const;

  friend bool operator==(const ClassificationReport&,
                         const ClassificationReport&) = default;
};

struct ClassifyOptions {
  std::size_t base_points = 10;
  std::size_t directions = 6;
  std::uint64_t seed = 1;
};

inline constexpr std::size_t kMinClassifySamples = 30;

/// Runs every probe on a sampled grid. Throws InsufficientSamples when fewer
/// than 30 valid samples are available.
ClassificationReport classify(const FinslerMetric& m, const SampleBox& box,
                              const ClassifyOptions& options,
                              const Tolerances& tol = {});

}  // namespace finsler::classify
