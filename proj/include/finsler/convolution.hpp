#pragma once

// Convolution of two Finsler metrics via two positive scalar fields:
//
//   F^2 = f2^2 F1^2 + f1^2 F2^2
//       + 2 f1 f2 F1 F2 (dF1/dy^i)(dF2/dy^j)(grad f1)^i (grad f2)^j,
//
// where grad f_k is raised with the factor's own fundamental tensor g_k at
// (x_k, y_k). Since F_k dF_k/dy^i = g_k,ij y^j, the cross term reduces to
// 2 f1 f2 df1(y1) df2(y2), which is what the metric evaluates.

#include <optional>
#include <string>
#include <vector>

#include "finsler/linalg.hpp"
#include "finsler/metric.hpp"
#include "finsler/scalar_field.hpp"

namespace finsler::conv {

struct ConvolutionSpec {
  MetricPtr metric1;    // F1 on factor 1 (dim n1)
  MetricPtr metric2;    // F2 on factor 2 (dim n2)
  ScalarField field1;   // f1 on factor 1
  ScalarField field2;   // f2 on factor 2

  std::size_t n1() const { return metric1->dim(); }
  std::size_t n2() const { return metric2->dim(); }
  std::size_t n() const { return n1() + n2(); }

  /// Throws InvalidParameter on dimension mismatches.
  void validate() const;
};

/// A sample of the product split into its two factor samples.
struct SplitSample {
  TangentSample first;
  TangentSample second;
};

SplitSample split(const ConvolutionSpec& spec, const TangentSample& s);

class ConvolutionMetric final : public BasicMetric<ConvolutionMetric> {
 public:
  explicit ConvolutionMetric(ConvolutionSpec spec);

  const ConvolutionSpec& spec() const noexcept { return spec_; }

  std::size_t dim() const override { return spec_.n(); }
  std::string describe() const override;
  /// Both factor domains, both slit conditions, and field positivity.
  /// F^2 > 0 is not part of the domain: evaluation raises NonPositive.
  void check_domain(Point x, Point y, double margin) const override;
  SampleBox default_box() const override;

  template <class T>
  T eval(Point x, std::span<const T> y) const;
  template <class T>
  T eval_squared(Point x, std::span<const T> y) const;

  /// F^2 evaluated in doubles without the final square root.
  double squared(Point x, Point y) const;

 private:
  ConvolutionSpec spec_;
};

std::shared_ptr<const ConvolutionMetric> convolve(ConvolutionSpec spec);

/// 2 f1 f2 df1(y1) df2(y2).
double cross_term_simplified(const ConvolutionSpec& spec, const TangentSample& s);

/// 2 f1 f2 F1 F2 (dF1/dy . grad f1)(dF2/dy . grad f2) with grad f_k = g_k^-1 df_k.
double cross_term_unsimplified(const ConvolutionSpec& spec,
                               const TangentSample& s);

/// The block form of the fundamental tensor:
///   [ f2^2 g1                    2 f1 f2 (df1/dx^a)(df2/dx^v) ]
///   [ 0                          f1^2 g2                      ]
/// It is not symmetric; its quadratic form equals that of the true tensor.
struct BlockTensor {
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  num::Matrix tl;  // n1 x n1
  num::Matrix tr;  // n1 x n2
  num::Matrix bl;  // n2 x n1, identically zero
  num::Matrix br;  // n2 x n2
  num::Matrix assembled;

  num::SymMatrix symmetrized() const;
  double quadratic_form(std::span<const double> v) const;
};

BlockTensor block_tensor(const ConvolutionSpec& spec, const TangentSample& s);

struct PositivityCheck {
  bool condition_holds = false;
  double quadratic_form = 0.0;
  double lhs = 0.0;  // g1(v,v)/f1^2 + g2(v,v)/f2^2
  double rhs = 0.0;  // -2/(f1 f2) (df1 . v1)(df2 . v2)
};

/// Sufficient condition for v^T g v > 0, alongside the block quadratic form.
PositivityCheck check_positivity_condition(const ConvolutionSpec& spec,
                                           const TangentSample& s,
                                           std::span<const double> v);

enum class WarpedBranch { ConstantFactor, GradientOrthogonal, CrossActive };
const char* to_string(WarpedBranch b);

struct WarpedDiagnosis {
  WarpedBranch branch = WarpedBranch::CrossActive;
  double max_grad1 = 0.0;   // max |df1| over samples
  double max_grad2 = 0.0;
  double max_cross = 0.0;   // max |df1(y1) df2(y2)|
  std::optional<int> constant_factor;        // 1 or 2
  std::optional<double> constant_value;      // value of that factor
  std::optional<TangentSample> witness;      // for CrossActive
  std::string note;
};

WarpedDiagnosis diagnose_warped(const ConvolutionSpec& spec,
                                std::span<const TangentSample> samples,
                                double zero_tol = 1e-12);

/// The warped product f2^2 F1^2 + F2^2 (or F1^2 + f1^2 F2^2) when one of the
/// fields is Constant(1); empty otherwise.
std::optional<MetricPtr> warped_reduction(const ConvolutionSpec& spec);

}  // namespace finsler::conv
