#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "finsler/metric.hpp"

namespace finsler {

/// Portable uniform draws: std::mt19937_64 (fully specified by the C++
/// standard) with a 53-bit mantissa mapping, so seeds reproduce across
/// platforms and standard libraries.
class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed) : engine_(seed) {}

  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  Vec draw(const std::vector<Interval>& box);

 private:
  std::mt19937_64 engine_;
};

/// `count` samples from `box` that pass the metric's domain predicate.
/// Throws InsufficientSamples when rejection fails too often.
std::vector<TangentSample> draw_samples(const FinslerMetric& m,
                                        const SampleBox& box,
                                        std::size_t count, std::uint64_t seed,
                                        double margin);

/// Base points crossed with a shared set of directions.
struct SampleGrid {
  std::vector<Vec> xs;
  std::vector<Vec> ys;

  /// All (x, y) pairs, x-major.
  std::vector<TangentSample> pairs() const;
};

/// Draws `ny` directions and `nx` base points such that every pair is in
/// the domain.
SampleGrid draw_grid(const FinslerMetric& m, const SampleBox& box,
                     std::size_t nx, std::size_t ny, std::uint64_t seed,
                     double margin);

}  // namespace finsler
