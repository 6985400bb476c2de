#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "finsler/linalg.hpp"
#include "finsler/taylor2.hpp"
#include "finsler/tolerances.hpp"

namespace finsler {

using Vec = std::vector<double>;
using Point = std::span<const double>;

/// A point (x, y) of the slit tangent bundle.
struct TangentSample {
  Vec x;
  Vec y;
  friend bool operator==(const TangentSample&, const TangentSample&) = default;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Per-coordinate sampling intervals for base and fiber coordinates.
struct SampleBox {
  std::vector<Interval> x;
  std::vector<Interval> y;
  friend bool operator==(const SampleBox&, const SampleBox&) = default;
};

SampleBox concat(const SampleBox& a, const SampleBox& b);

/// A Finsler function F(x, y) on a single coordinate chart.
///
/// Implementations evaluate F both in plain doubles and in Taylor2 (with y
/// as the active variables); everything else is derived from these two.
/// Values are immutable after construction and safe to share across threads.
class FinslerMetric {
 public:
  virtual ~FinslerMetric() = default;

  virtual std::size_t dim() const = 0;
  virtual std::string describe() const = 0;

  virtual double value(Point x, Point y) const = 0;
  virtual num::Taylor2 value(Point x, std::span<const num::Taylor2> y) const = 0;

  /// F^2 in Taylor2. Metrics with a polynomial square override this so the
  /// fundamental tensor avoids a sqrt round trip.
  virtual num::Taylor2 squared_value(Point x, std::span<const num::Taylor2> y) const;
  virtual double squared_value(Point x, Point y) const;

  /// Throws DomainError when (x, y) is outside the chart, within `margin`
  /// of its boundary, or on the slit (y = 0).
  virtual void check_domain(Point x, Point y, double margin) const = 0;

  /// Default sampling box, inside the chart.
  virtual SampleBox default_box() const = 0;

  bool in_domain(Point x, Point y, double margin) const noexcept;
};

using MetricPtr = std::shared_ptr<const FinslerMetric>;

/// Adapter that implements both evaluation modes from one generic
/// `template <class T> T eval(Point x, std::span<const T> y) const`.
template <class Derived>
class BasicMetric : public FinslerMetric {
 public:
  double value(Point x, Point y) const override {
    return derived().template eval<double>(x, y);
  }
  num::Taylor2 value(Point x, std::span<const num::Taylor2> y) const override {
    return derived().template eval<num::Taylor2>(x, y);
  }
  num::Taylor2 squared_value(Point x, std::span<const num::Taylor2> y) const override {
    if constexpr (requires { derived().template eval_squared<num::Taylor2>(x, y); }) {
      return derived().template eval_squared<num::Taylor2>(x, y);
    } else {
      return FinslerMetric::squared_value(x, y);
    }
  }
  double squared_value(Point x, Point y) const override {
    if constexpr (requires { derived().template eval_squared<double>(x, y); }) {
      return derived().template eval_squared<double>(x, y);
    } else {
      return FinslerMetric::squared_value(x, y);
    }
  }

 private:
  const Derived& derived() const { return static_cast<const Derived&>(*this); }
};

/// Throws DomainError if y is (numerically) the zero vector.
void require_nonzero(Point y, double margin, const char* what);
void require_dims(const FinslerMetric& m, Point x, Point y);

enum class Provenance { Autodiff, Block, Symmetrized };
const char* to_string(Provenance p);

/// g_ij = (1/2) d^2 F^2 / dy^i dy^j at a sample, with F and dF/dy.
struct FundamentalTensor {
  TangentSample at;
  num::SymMatrix g;
  Provenance provenance = Provenance::Autodiff;
  double F = 0.0;
  Vec dF;  // dF/dy^i
  double min_eig = 0.0;
  bool strongly_convex = false;  // min_eig > 0
};

FundamentalTensor fundamental_tensor(const FinslerMetric& m,
                                     const TangentSample& s,
                                     double margin = Tolerances{}.domain_margin);

/// A[i][j][k] = (F/2) dg_ij/dy^k, totally symmetrized.
struct CartanTensor {
  TangentSample at;
  std::size_t n = 0;
  Vec entries;               // n^3, index (i*n + j)*n + k
  double asymmetry = 0.0;    // max deviation removed by symmetrization

  double operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return entries[(i * n + j) * n + k];
  }
  double max_abs() const noexcept;
  /// max_{j,k} |A[i][j][k] y^i|
  double max_contraction_with_y() const;
};

CartanTensor cartan_tensor(const FinslerMetric& m, const TangentSample& s,
                           double step = Tolerances{}.cartan_step,
                           double margin = Tolerances{}.domain_margin);

class ScalarField;

/// g^{ij}(x,y) du/dx^i for a scalar field u on the metric's base.
Vec gradient_field(const FinslerMetric& m, const ScalarField& u,
                   const TangentSample& s);

struct HomogeneityReport {
  double max_rel_error = 0.0;   // |F(x,cy) - cF(x,y)| / (cF(x,y))
  double max_tensor_dev = 0.0;  // max |g(x,cy) - g(x,y)|
  double worst_scale = 1.0;
};

HomogeneityReport check_homogeneity(const FinslerMetric& m,
                                    const TangentSample& s,
                                    std::span<const double> scales,
                                    bool include_tensor = true);

struct ConvexityReport {
  bool is_positive = false;
  double min_eig = 0.0;
};

ConvexityReport check_strong_convexity(const FinslerMetric& m,
                                       const TangentSample& s);

}  // namespace finsler
