#pragma once

// Built-in metric families and the worked examples of convolution metrics.

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "finsler/linalg.hpp"
#include "finsler/metric.hpp"

namespace finsler::zoo {

/// |y| on R^n.
struct Euclidean {
  std::size_t n = 2;
};

/// sqrt(y^T A y) with constant SPD A.
struct ConstRiemann {
  num::SymMatrix a;
};

/// Klein metric on the unit ball of R^n.
struct Klein {
  std::size_t n = 2;
};

using RiemannAlpha = std::variant<Euclidean, ConstRiemann, Klein>;

/// (y1^4 + lambda y1^2 y2^2 + y2^4)^(1/4) on R^2, lambda in [2, 4].
struct QuarticMinkowski {
  double lambda = 3.0;
};

/// [y1^2 + y2^2 + lambda (y1^2k + y2^2k)^(1/k)]^(1/2) on R^2.
struct KNormMinkowski {
  double lambda = 3.0;
  int k = 2;
};

/// alpha(x, y) + b(x) . y with b_i(x) = b0_i + sum_j b_linear[i][j] x^j.
struct Randers {
  RiemannAlpha alpha = Euclidean{2};
  Vec b0;
  std::vector<Vec> b_linear;  // empty for constant coefficients
};

/// The quartic/k-norm convolution on {x1 > 0, x3 > 0} x {y1 > 0, y3 > 0}:
/// F^2 = x3^2 (y1^4 + lambda y1^2 y2^2 + y2^4)^(1/2) + 8 x1^3 x3^3 y1 y3
///     + x3^2 [y3^2 + y4^2 + lambda (y3^2k + y4^2k)^(1/k)].
struct Example11 {
  double lambda = 3.0;
  int k = 2;
};

/// Randers convolution on V x B^(n-3), V = R^3:
/// F^2 = |x2|^2 (|y1| + eps y1^3)^2 + 2 <x1,y1><x2,y2> + |x1|^2 Funk(x2,y2)^2
/// where Funk is the Funk metric of the unit ball.
struct Example43 {
  std::size_t n = 5;
  double epsilon = 0.5;
};

using ZooSpec = std::variant<Euclidean, ConstRiemann, Klein, QuarticMinkowski,
                             KNormMinkowski, Randers, Example11, Example43>;

std::string family_name(const ZooSpec& spec);

/// Validates parameters and returns the metric. Randers specs are checked
/// for |beta|_alpha < 1 at every point of `validity_xs` (the origin when
/// empty); violations raise RandersInvalid with the witness point.
MetricPtr build(const ZooSpec& spec, std::span<const Vec> validity_xs = {});

/// alpha-norm of the 1-form of a Randers metric built by `build`, at x.
/// Throws InvalidParameter if `m` is not such a metric.
double randers_beta_norm(const FinslerMetric& m, Point x);

struct RandersParts {
  double alpha = 0.0;  // even part (F(x,y) + F(x,-y)) / 2
  double beta = 0.0;   // odd part  (F(x,y) - F(x,-y)) / 2
};

/// Even/odd split of F in y. Requires (x, -y) in the domain.
RandersParts randers_decompose(const FinslerMetric& m, const TangentSample& s,
                               double margin = Tolerances{}.domain_margin);

/// F + offset: deliberately breaks homogeneity (test fixture).
MetricPtr make_offset_fixture(MetricPtr base, double offset);

}  // namespace finsler::zoo
