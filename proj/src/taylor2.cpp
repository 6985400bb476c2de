#include "finsler/taylor2.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "finsler/errors.hpp"

namespace finsler::num {
namespace {

[[noreturn]] void domain_fail(const char* op, double v) {
  throw DomainError(std::string(op) + " outside real domain at " +
                    std::to_string(v));
}

}  // namespace

Taylor2::Taylor2(double value, std::size_t d)
    : value_(value), grad_(d, 0.0), hess_(d * d, 0.0) {}

Taylor2 Taylor2::variable(double value, std::size_t index, std::size_t d) {
  Taylor2 t(value, d);
  t.grad_.at(index) = 1.0;
  return t;
}

std::vector<Taylor2> Taylor2::variables(std::span<const double> at) {
  std::vector<Taylor2> out;
  out.reserve(at.size());
  for (std::size_t i = 0; i < at.size(); ++i) {
    out.push_back(variable(at[i], i, at.size()));
  }
  return out;
}

SymMatrix Taylor2::hessian() const {
  SymMatrix h(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    for (std::size_t j = i; j < dim(); ++j) h.set(i, j, hess(i, j));
  }
  return h;
}

void Taylor2::promote(std::size_t d) {
  if (dim() == d || d == 0) return;
  if (dim() != 0) {
    throw InvalidParameter("Taylor2: mixing " + std::to_string(dim()) +
                           " and " + std::to_string(d) + " variables");
  }
  grad_.assign(d, 0.0);
  hess_.assign(d * d, 0.0);
}

Taylor2& Taylor2::operator+=(const Taylor2& rhs) {
  promote(rhs.dim());
  value_ += rhs.value_;
  for (std::size_t i = 0; i < rhs.grad_.size(); ++i) grad_[i] += rhs.grad_[i];
  for (std::size_t i = 0; i < rhs.hess_.size(); ++i) hess_[i] += rhs.hess_[i];
  return *this;
}

Taylor2& Taylor2::operator-=(const Taylor2& rhs) {
  promote(rhs.dim());
  value_ -= rhs.value_;
  for (std::size_t i = 0; i < rhs.grad_.size(); ++i) grad_[i] -= rhs.grad_[i];
  for (std::size_t i = 0; i < rhs.hess_.size(); ++i) hess_[i] -= rhs.hess_[i];
  return *this;
}

Taylor2& Taylor2::operator*=(const Taylor2& rhs) {
  *this = *this * rhs;
  return *this;
}

Taylor2& Taylor2::operator/=(const Taylor2& rhs) {
  *this = *this / rhs;
  return *this;
}

Taylor2& Taylor2::operator+=(double rhs) noexcept {
  value_ += rhs;
  return *this;
}

Taylor2& Taylor2::operator-=(double rhs) noexcept {
  value_ -= rhs;
  return *this;
}

Taylor2& Taylor2::operator*=(double rhs) noexcept {
  value_ *= rhs;
  for (double& g : grad_) g *= rhs;
  for (double& h : hess_) h *= rhs;
  return *this;
}

Taylor2& Taylor2::operator/=(double rhs) {
  return *this *= recip(rhs);
}

Taylor2 Taylor2::apply(double f0, double f1, double f2) const {
  const std::size_t d = dim();
  Taylor2 r(f0, d);
  for (std::size_t i = 0; i < d; ++i) r.grad_[i] = f1 * grad_[i];
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      const double v = f1 * hess_[i * d + j] + f2 * grad_[i] * grad_[j];
      r.hess_[i * d + j] = v;
      r.hess_[j * d + i] = v;
    }
  }
  return r;
}

Taylor2 operator-(Taylor2 a) { return a *= -1.0; }
Taylor2 operator+(Taylor2 a, const Taylor2& b) { return a += b; }
Taylor2 operator-(Taylor2 a, const Taylor2& b) { return a -= b; }

Taylor2 operator*(const Taylor2& a, const Taylor2& b) {
  if (a.dim() == 0) return b * a.value_;
  if (b.dim() == 0) return a * b.value_;
  if (a.dim() != b.dim()) {
    throw InvalidParameter("Taylor2: dimension mismatch in product");
  }
  const std::size_t d = a.dim();
  Taylor2 r(a.value_ * b.value_, d);
  for (std::size_t i = 0; i < d; ++i) {
    r.grad_[i] = a.value_ * b.grad_[i] + b.value_ * a.grad_[i];
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      const double v = a.value_ * b.hess_[i * d + j] +
                       b.value_ * a.hess_[i * d + j] +
                       a.grad_[i] * b.grad_[j] + a.grad_[j] * b.grad_[i];
      r.hess_[i * d + j] = v;
      r.hess_[j * d + i] = v;
    }
  }
  return r;
}

Taylor2 operator/(const Taylor2& a, const Taylor2& b) { return a * recip(b); }
Taylor2 operator+(Taylor2 a, double b) { return a += b; }
Taylor2 operator+(double a, Taylor2 b) { return b += a; }
Taylor2 operator-(Taylor2 a, double b) { return a -= b; }
Taylor2 operator-(double a, const Taylor2& b) { return -b + a; }
Taylor2 operator*(Taylor2 a, double b) { return a *= b; }
Taylor2 operator*(double a, Taylor2 b) { return b *= a; }
Taylor2 operator/(Taylor2 a, double b) { return a /= b; }
Taylor2 operator/(double a, const Taylor2& b) { return recip(b) * a; }

double fsqrt(double v) {
  if (!(v >= kDomainFloor)) domain_fail("sqrt", v);
  return std::sqrt(v);
}

double fexp(double v) { return std::exp(v); }

double flog(double v) {
  if (!(v >= kDomainFloor)) domain_fail("log", v);
  return std::log(v);
}

double fpow(double v, double p) {
  if (!(v >= kDomainFloor)) domain_fail("pow", v);
  return std::pow(v, p);
}

double ipow(double v, int n) {
  if (n < 0) return recip(ipow(v, -n));
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= v;
  return r;
}

double recip(double v) {
  if (!(std::abs(v) >= kDomainFloor)) domain_fail("division", v);
  return 1.0 / v;
}

Taylor2 fsqrt(const Taylor2& t) {
  const double s = fsqrt(t.value());
  return t.apply(s, 0.5 / s, -0.25 / (s * t.value()));
}

Taylor2 fexp(const Taylor2& t) {
  const double e = std::exp(t.value());
  return t.apply(e, e, e);
}

Taylor2 flog(const Taylor2& t) {
  const double v = t.value();
  return t.apply(flog(v), 1.0 / v, -1.0 / (v * v));
}

Taylor2 fpow(const Taylor2& t, double p) {
  const double v = t.value();
  const double f0 = fpow(v, p);
  return t.apply(f0, p * f0 / v, p * (p - 1.0) * f0 / (v * v));
}

Taylor2 ipow(const Taylor2& t, int n) {
  const double v = t.value();
  if (n < 0) return recip(ipow(t, -n));
  if (n == 0) return Taylor2(1.0, t.dim());
  const double f2 = n >= 2 ? n * (n - 1) * ipow(v, n - 2) : 0.0;
  return t.apply(ipow(v, n), n * ipow(v, n - 1), f2);
}

Taylor2 recip(const Taylor2& t) {
  const double inv = recip(t.value());
  return t.apply(inv, -inv * inv, 2.0 * inv * inv * inv);
}

}  // namespace finsler::num
