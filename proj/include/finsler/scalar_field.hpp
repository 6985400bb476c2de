#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>

#include "finsler/metric.hpp"

namespace finsler {

/// A positive closed-form function on one factor, with exact gradient.
class ScalarField {
 public:
  struct Constant {
    double c;
  };
  /// exp(a . x)
  struct ExpLinear {
    Vec a;
  };
  /// c * (x^index)^power
  struct Monomial {
    std::size_t index;
    double power;
    double c;
  };
  /// c + |x|^2
  struct NormSquaredPlus {
    double c;
  };
  using Family = std::variant<Constant, ExpLinear, Monomial, NormSquaredPlus>;

  static ScalarField constant(std::size_t dim, double c);
  static ScalarField exp_linear(Vec a);
  static ScalarField monomial(std::size_t dim, std::size_t index, double power,
                              double c);
  static ScalarField norm_squared_plus(std::size_t dim, double c);

  std::size_t dim() const noexcept { return dim_; }
  const Family& family() const noexcept { return family_; }

  double value(Point x) const;
  Vec gradient(Point x) const;

  /// Throws DomainError where the field is not defined or not positive.
  void check_domain(Point x) const;

  std::optional<double> constant_value() const;
  bool is_constant() const { return constant_value().has_value(); }
  std::string describe() const;

 private:
  ScalarField(std::size_t dim, Family f) : dim_(dim), family_(std::move(f)) {}

  std::size_t dim_;
  Family family_;
};

}  // namespace finsler
