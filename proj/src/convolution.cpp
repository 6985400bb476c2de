#include "finsler/convolution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "finsler/errors.hpp"

namespace finsler::conv {
namespace {

double dot(Point a, Point b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(Point a) { return std::sqrt(dot(a, a)); }

template <class T>
T linear_form(Point coeffs, std::span<const T> y) {
  T s = coeffs[0] * y[0];
  for (std::size_t i = 1; i < y.size(); ++i) s += coeffs[i] * y[i];
  return s;
}

}  // namespace

void ConvolutionSpec::validate() const {
  if (!metric1 || !metric2) throw InvalidParameter("convolution: missing factor metric");
  if (field1.dim() != metric1->dim()) {
    throw InvalidParameter("convolution: f1 dimension != factor 1 dimension");
  }
  if (field2.dim() != metric2->dim()) {
    throw InvalidParameter("convolution: f2 dimension != factor 2 dimension");
  }
  if (n() > num::kMaxDim) throw InvalidParameter("convolution: dimension exceeds 16");
}

SplitSample split(const ConvolutionSpec& spec, const TangentSample& s) {
  const std::size_t n1 = spec.n1();
  if (s.x.size() != spec.n() || s.y.size() != spec.n()) {
    throw DomainError("sample dimension does not match convolution");
  }
  return {{Vec(s.x.begin(), s.x.begin() + n1), Vec(s.y.begin(), s.y.begin() + n1)},
          {Vec(s.x.begin() + n1, s.x.end()), Vec(s.y.begin() + n1, s.y.end())}};
}

ConvolutionMetric::ConvolutionMetric(ConvolutionSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
}

std::string ConvolutionMetric::describe() const {
  std::ostringstream os;
  os << "Convolution(" << spec_.metric1->describe() << ", "
     << spec_.metric2->describe() << "; f1=" << spec_.field1.describe()
     << ", f2=" << spec_.field2.describe() << ")";
  return os.str();
}

void ConvolutionMetric::check_domain(Point x, Point y, double margin) const {
  require_dims(*this, x, y);
  const std::size_t n1 = spec_.n1();
  spec_.metric1->check_domain(x.first(n1), y.first(n1), margin);
  spec_.metric2->check_domain(x.subspan(n1), y.subspan(n1), margin);
  require_nonzero(y.first(n1), margin, "factor-1");
  require_nonzero(y.subspan(n1), margin, "factor-2");
  spec_.field1.check_domain(x.first(n1));
  spec_.field2.check_domain(x.subspan(n1));
}

SampleBox ConvolutionMetric::default_box() const {
  return concat(spec_.metric1->default_box(), spec_.metric2->default_box());
}

namespace {

template <class T>
T factor_squared(const FinslerMetric& m, Point x, std::span<const T> y) {
  return m.squared_value(x, y);
}

}  // namespace

template <class T>
T ConvolutionMetric::eval_squared(Point x, std::span<const T> y) const {
  const std::size_t n1 = spec_.n1();
  const Point x1 = x.first(n1);
  const Point x2 = x.subspan(n1);
  const T F1sq = factor_squared(*spec_.metric1, x1, y.first(n1));
  const T F2sq = factor_squared(*spec_.metric2, x2, y.subspan(n1));
  const double f1 = spec_.field1.value(x1);
  const double f2 = spec_.field2.value(x2);
  const Vec df1 = spec_.field1.gradient(x1);
  const Vec df2 = spec_.field2.gradient(x2);
  const T sq = f2 * f2 * F1sq + f1 * f1 * F2sq +
               2.0 * f1 * f2 * linear_form(Point(df1), y.first(n1)) *
                   linear_form(Point(df2), y.subspan(n1));
  const double v = num::value_of(sq);
  if (!(v > 0.0)) {
    throw NonPositive("convolution F^2 = " + std::to_string(v) + " is not positive", v);
  }
  return sq;
}

template <class T>
T ConvolutionMetric::eval(Point x, std::span<const T> y) const {
  return num::fsqrt(eval_squared(x, y));
}

template double ConvolutionMetric::eval<double>(Point, std::span<const double>) const;
template num::Taylor2 ConvolutionMetric::eval<num::Taylor2>(
    Point, std::span<const num::Taylor2>) const;
template double ConvolutionMetric::eval_squared<double>(Point, std::span<const double>) const;
template num::Taylor2 ConvolutionMetric::eval_squared<num::Taylor2>(
    Point, std::span<const num::Taylor2>) const;

double ConvolutionMetric::squared(Point x, Point y) const {
  const std::size_t n1 = spec_.n1();
  const Point x1 = x.first(n1);
  const Point x2 = x.subspan(n1);
  const double F1sq = spec_.metric1->squared_value(x1, y.first(n1));
  const double F2sq = spec_.metric2->squared_value(x2, y.subspan(n1));
  const double f1 = spec_.field1.value(x1);
  const double f2 = spec_.field2.value(x2);
  return f2 * f2 * F1sq + f1 * f1 * F2sq +
         2.0 * f1 * f2 * dot(spec_.field1.gradient(x1), y.first(n1)) *
             dot(spec_.field2.gradient(x2), y.subspan(n1));
}

std::shared_ptr<const ConvolutionMetric> convolve(ConvolutionSpec spec) {
  return std::make_shared<ConvolutionMetric>(std::move(spec));
}

double cross_term_simplified(const ConvolutionSpec& spec, const TangentSample& s) {
  const auto [a, b] = split(spec, s);
  return 2.0 * spec.field1.value(a.x) * spec.field2.value(b.x) *
         dot(spec.field1.gradient(a.x), a.y) * dot(spec.field2.gradient(b.x), b.y);
}

double cross_term_unsimplified(const ConvolutionSpec& spec,
                               const TangentSample& s) {
  const auto [a, b] = split(spec, s);
  const auto t1 = fundamental_tensor(*spec.metric1, a);
  const auto t2 = fundamental_tensor(*spec.metric2, b);
  const Vec grad1 = num::sym_solve(t1.g, spec.field1.gradient(a.x));
  const Vec grad2 = num::sym_solve(t2.g, spec.field2.gradient(b.x));
  return 2.0 * spec.field1.value(a.x) * spec.field2.value(b.x) * t1.F * t2.F *
         dot(t1.dF, grad1) * dot(t2.dF, grad2);
}

num::SymMatrix BlockTensor::symmetrized() const {
  return num::SymMatrix::symmetrize(assembled);
}

double BlockTensor::quadratic_form(std::span<const double> v) const {
  double s = 0.0;
  for (std::size_t i = 0; i < assembled.rows(); ++i) {
    for (std::size_t j = 0; j < assembled.cols(); ++j) {
      s += v[i] * assembled(i, j) * v[j];
    }
  }
  return s;
}

BlockTensor block_tensor(const ConvolutionSpec& spec, const TangentSample& s) {
  const auto [a, b] = split(spec, s);
  const auto g1 = fundamental_tensor(*spec.metric1, a).g;
  const auto g2 = fundamental_tensor(*spec.metric2, b).g;
  const double f1 = spec.field1.value(a.x);
  const double f2 = spec.field2.value(b.x);
  const Vec df1 = spec.field1.gradient(a.x);
  const Vec df2 = spec.field2.gradient(b.x);

  const std::size_t n1 = spec.n1();
  const std::size_t n2 = spec.n2();
  BlockTensor bt;
  bt.n1 = n1;
  bt.n2 = n2;
  bt.tl = num::Matrix(n1, n1);
  bt.tr = num::Matrix(n1, n2);
  bt.bl = num::Matrix(n2, n1);
  bt.br = num::Matrix(n2, n2);
  bt.assembled = num::Matrix(n1 + n2, n1 + n2);
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n1; ++j) bt.tl(i, j) = f2 * f2 * g1(i, j);
    for (std::size_t j = 0; j < n2; ++j) bt.tr(i, j) = 2.0 * f1 * f2 * df1[i] * df2[j];
  }
  for (std::size_t i = 0; i < n2; ++i) {
    for (std::size_t j = 0; j < n2; ++j) bt.br(i, j) = f1 * f1 * g2(i, j);
  }
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n1; ++j) bt.assembled(i, j) = bt.tl(i, j);
    for (std::size_t j = 0; j < n2; ++j) bt.assembled(i, n1 + j) = bt.tr(i, j);
  }
  for (std::size_t i = 0; i < n2; ++i) {
    for (std::size_t j = 0; j < n2; ++j) bt.assembled(n1 + i, n1 + j) = bt.br(i, j);
  }
  return bt;
}

PositivityCheck check_positivity_condition(const ConvolutionSpec& spec,
                                           const TangentSample& s,
                                           std::span<const double> v) {
  if (v.size() != spec.n()) throw InvalidParameter("positivity: v has wrong length");
  const auto [a, b] = split(spec, s);
  const auto g1 = fundamental_tensor(*spec.metric1, a).g;
  const auto g2 = fundamental_tensor(*spec.metric2, b).g;
  const double f1 = spec.field1.value(a.x);
  const double f2 = spec.field2.value(b.x);
  const auto v1 = v.first(spec.n1());
  const auto v2 = v.subspan(spec.n1());

  PositivityCheck r;
  r.lhs = g1.quadratic_form(v1, v1) / (f1 * f1) + g2.quadratic_form(v2, v2) / (f2 * f2);
  r.rhs = -2.0 / (f1 * f2) * dot(spec.field1.gradient(a.x), v1) *
          dot(spec.field2.gradient(b.x), v2);
  r.condition_holds = r.lhs > r.rhs;
  r.quadratic_form = block_tensor(spec, s).quadratic_form(v);
  return r;
}

const char* to_string(WarpedBranch b) {
  switch (b) {
    case WarpedBranch::ConstantFactor: return "ConstantFactor";
    case WarpedBranch::GradientOrthogonal: return "GradientOrthogonal";
    case WarpedBranch::CrossActive: return "CrossActive";
  }
  return "?";
}

WarpedDiagnosis diagnose_warped(const ConvolutionSpec& spec,
                                std::span<const TangentSample> samples,
                                double zero_tol) {
  if (samples.empty()) throw InsufficientSamples("diagnose_warped: no samples");
  WarpedDiagnosis d;
  for (const auto& s : samples) {
    const auto [a, b] = split(spec, s);
    const Vec df1 = spec.field1.gradient(a.x);
    const Vec df2 = spec.field2.gradient(b.x);
    d.max_grad1 = std::max(d.max_grad1, norm(df1));
    d.max_grad2 = std::max(d.max_grad2, norm(df2));
    const double cross = std::abs(dot(df1, a.y) * dot(df2, b.y));
    if (cross > d.max_cross) {
      d.max_cross = cross;
      if (cross > zero_tol) d.witness = s;
    }
  }
  if (d.max_grad1 <= zero_tol || d.max_grad2 <= zero_tol) {
    d.branch = WarpedBranch::ConstantFactor;
    const int k = d.max_grad1 <= zero_tol ? 1 : 2;
    d.constant_factor = k;
    const auto& field = k == 1 ? spec.field1 : spec.field2;
    const auto& x0 = samples.front().x;
    const Vec xk = k == 1 ? Vec(x0.begin(), x0.begin() + spec.n1())
                          : Vec(x0.begin() + spec.n1(), x0.end());
    d.constant_value = field.value(xk);
    std::ostringstream os;
    os << "f" << k << " has zero gradient on all samples (value "
       << *d.constant_value << ")";
    if (*d.constant_value != 1.0) {
      os << "; reduces to the scaled form with factor " << *d.constant_value;
    } else {
      os << "; reduces to a warped product";
    }
    d.note = os.str();
    d.witness.reset();
  } else if (d.max_cross <= zero_tol) {
    d.branch = WarpedBranch::GradientOrthogonal;
    d.note = "df1(y1) df2(y2) vanishes on all samples with nonzero gradients";
    d.witness.reset();
  } else {
    d.branch = WarpedBranch::CrossActive;
    d.note = "cross term active";
  }
  return d;
}

namespace {

class WarpedMetric final : public BasicMetric<WarpedMetric> {
 public:
  WarpedMetric(ConvolutionSpec spec, int unit_factor)
      : spec_(std::move(spec)), unit_factor_(unit_factor) {}

  std::size_t dim() const override { return spec_.n(); }
  std::string describe() const override {
    return "Warped(" + spec_.metric1->describe() + ", " +
           spec_.metric2->describe() + ")";
  }
  void check_domain(Point x, Point y, double margin) const override {
    ConvolutionMetric(spec_).check_domain(x, y, margin);
  }
  SampleBox default_box() const override {
    return concat(spec_.metric1->default_box(), spec_.metric2->default_box());
  }
  template <class T>
  T eval(Point x, std::span<const T> y) const {
    const std::size_t n1 = spec_.n1();
    const T F1 = spec_.metric1->value(x.first(n1), y.first(n1));
    const T F2 = spec_.metric2->value(x.subspan(n1), y.subspan(n1));
    if (unit_factor_ == 1) {
      const double f2 = spec_.field2.value(x.subspan(n1));
      return num::fsqrt(f2 * f2 * (F1 * F1) + F2 * F2);
    }
    const double f1 = spec_.field1.value(x.first(n1));
    return num::fsqrt(F1 * F1 + f1 * f1 * (F2 * F2));
  }

 private:
  ConvolutionSpec spec_;
  int unit_factor_;
};

bool is_unit_constant(const ScalarField& f) {
  const auto* c = std::get_if<ScalarField::Constant>(&f.family());
  return c != nullptr && c->c == 1.0;
}

}  // namespace

std::optional<MetricPtr> warped_reduction(const ConvolutionSpec& spec) {
  spec.validate();
  if (is_unit_constant(spec.field1)) {
    return std::make_shared<WarpedMetric>(spec, 1);
  }
  if (is_unit_constant(spec.field2)) {
    return std::make_shared<WarpedMetric>(spec, 2);
  }
  return std::nullopt;
}

}  // namespace finsler::conv
