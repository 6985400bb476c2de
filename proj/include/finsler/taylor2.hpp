#pragma once

/// Second-order forward-mode differentiation.
///
/// A Taylor2 carries a value together with its gradient and full Hessian
/// with respect to d active variables. Arithmetic propagates both channels
/// exactly through the second-order chain rule, so the Hessian of a program
/// assembled from these operations is exact up to rounding. A Taylor2 with
/// d = 0 is a plain constant and promotes against any d.

#include <cstddef>
#include <span>
#include <vector>

#include "finsler/linalg.hpp"

namespace finsler::num {

class Taylor2 {
 public:
  Taylor2() = default;
  /// A constant with d active variables (all derivatives zero).
  Taylor2(double value, std::size_t d);

  /// The coordinate function x_index among d variables, evaluated at value.
  static Taylor2 variable(double value, std::size_t index, std::size_t d);

  /// Seeds one independent variable per entry of `at`.
  static std::vector<Taylor2> variables(std::span<const double> at);

  double value() const noexcept { return value_; }
  std::size_t dim() const noexcept { return grad_.size(); }
  double grad(std::size_t i) const { return grad_[i]; }
  std::span<const double> gradient() const noexcept { return grad_; }
  double hess(std::size_t i, std::size_t j) const { return hess_[i * dim() + j]; }
  SymMatrix hessian() const;

  Taylor2& operator+=(const Taylor2& rhs);
  Taylor2& operator-=(const Taylor2& rhs);
  Taylor2& operator*=(const Taylor2& rhs);
  Taylor2& operator/=(const Taylor2& rhs);
  Taylor2& operator+=(double rhs) noexcept;
  Taylor2& operator-=(double rhs) noexcept;
  Taylor2& operator*=(double rhs) noexcept;
  Taylor2& operator/=(double rhs);

  /// phi(this) given phi(v), phi'(v), phi''(v).
  Taylor2 apply(double f0, double f1, double f2) const;

  friend Taylor2 operator*(const Taylor2& a, const Taylor2& b);

 private:
  void promote(std::size_t d);

  double value_ = 0.0;
  std::vector<double> grad_;
  std::vector<double> hess_;  // row-major d x d, kept symmetric
};

Taylor2 operator-(Taylor2 a);
Taylor2 operator+(Taylor2 a, const Taylor2& b);
Taylor2 operator-(Taylor2 a, const Taylor2& b);
Taylor2 operator*(const Taylor2& a, const Taylor2& b);
Taylor2 operator/(const Taylor2& a, const Taylor2& b);
Taylor2 operator+(Taylor2 a, double b);
Taylor2 operator+(double a, Taylor2 b);
Taylor2 operator-(Taylor2 a, double b);
Taylor2 operator-(double a, const Taylor2& b);
Taylor2 operator*(Taylor2 a, double b);
Taylor2 operator*(double a, Taylor2 b);
Taylor2 operator/(Taylor2 a, double b);
Taylor2 operator/(double a, const Taylor2& b);

// Elementary functions. The double overloads share the domain rules of the
// Taylor2 ones so that generic metric code fails identically in both modes:
// sqrt, log, reciprocal and real powers raise DomainError for arguments
// below 1e-300.
inline constexpr double kDomainFloor = 1e-300;

double fsqrt(double v);
double fexp(double v);
double flog(double v);
double fpow(double v, double p);
double ipow(double v, int n);
double recip(double v);
inline double value_of(double v) noexcept { return v; }

Taylor2 fsqrt(const Taylor2& t);
Taylor2 fexp(const Taylor2& t);
Taylor2 flog(const Taylor2& t);
Taylor2 fpow(const Taylor2& t, double p);
Taylor2 ipow(const Taylor2& t, int n);
Taylor2 recip(const Taylor2& t);
inline double value_of(const Taylor2& t) noexcept { return t.value(); }

/// Value, gradient and Hessian of a scalar program at a point.
struct Taylor2Result {
  double value = 0.0;
  std::vector<double> gradient;
  SymMatrix hessian;
};

template <class Program>
Taylor2Result taylor2_eval(Program&& program, std::span<const double> x0) {
  const auto vars = Taylor2::variables(x0);
  Taylor2 out = program(std::span<const Taylor2>(vars));
  Taylor2 full(0.0, x0.size());
  full += out;  // promotes constants to the full variable count
  Taylor2Result r;
  r.value = full.value();
  r.gradient.assign(full.gradient().begin(), full.gradient().end());
  r.hessian = full.hessian();
  return r;
}

}  // namespace finsler::num
