#include "finsler/sampling.hpp"

#include <string>

#include "finsler/errors.hpp"

namespace finsler {
namespace {

constexpr std::size_t kAttemptsPerSample = 1000;

}  // namespace

Vec SampleRng::draw(const std::vector<Interval>& box) {
  Vec v(box.size());
  for (std::size_t i = 0; i < box.size(); ++i) v[i] = uniform(box[i].lo, box[i].hi);
  return v;
}

std::vector<TangentSample> draw_samples(const FinslerMetric& m,
                                        const SampleBox& box,
                                        std::size_t count, std::uint64_t seed,
                                        double margin) {
  if (box.x.size() != m.dim() || box.y.size() != m.dim()) {
    throw InvalidParameter("sample box dimension does not match metric (n=" +
                           std::to_string(m.dim()) + ")");
  }
  SampleRng rng(seed);
  std::vector<TangentSample> out;
  out.reserve(count);
  std::size_t attempts = 0;
  while (out.size() < count) {
    if (++attempts > kAttemptsPerSample * (count + 1)) {
      throw InsufficientSamples("only " + std::to_string(out.size()) + " of " +
                                std::to_string(count) +
                                " samples found inside the domain");
    }
    TangentSample s{rng.draw(box.x), rng.draw(box.y)};
    if (m.in_domain(s.x, s.y, margin)) out.push_back(std::move(s));
  }
  return out;
}

std::vector<TangentSample> SampleGrid::pairs() const {
  std::vector<TangentSample> out;
  out.reserve(xs.size() * ys.size());
  for (const auto& x : xs) {
    for (const auto& y : ys) out.push_back({x, y});
  }
  return out;
}

SampleGrid draw_grid(const FinslerMetric& m, const SampleBox& box,
                     std::size_t nx, std::size_t ny, std::uint64_t seed,
                     double margin) {
  const auto anchor = draw_samples(m, box, 1, seed, margin).front();
  SampleRng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  SampleGrid grid;
  grid.ys.push_back(anchor.y);
  std::size_t attempts = 0;
  const std::size_t budget = kAttemptsPerSample * (nx + ny + 2);
  while (grid.ys.size() < ny) {
    if (++attempts > budget) throw InsufficientSamples("grid: too few directions");
    Vec y = rng.draw(box.y);
    if (m.in_domain(anchor.x, y, margin)) grid.ys.push_back(std::move(y));
  }
  while (grid.xs.size() < nx) {
    if (++attempts > budget) throw InsufficientSamples("grid: too few base points");
    Vec x = rng.draw(box.x);
    bool ok = true;
    for (const auto& y : grid.ys) {
      if (!m.in_domain(x, y, margin)) {
        ok = false;
        break;
      }
    }
    if (ok) grid.xs.push_back(std::move(x));
  }
  return grid;
}

}  // namespace finsler
