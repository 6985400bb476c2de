#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace finsler {

/// Every numeric threshold used by the library, in one place.
struct Tolerances {
  double fd_step = 1e-4;        // central-difference step for oracles
  double cartan_step = 1e-4;    // step for the third y-derivative
  double domain_margin = 1e-6;  // distance kept from every chart boundary
  double fd_agreement = 1e-5;   // autodiff vs FD, per entry
  double riemannian = 1e-6;     // max |Cartan|
  double minkowski = 1e-6;      // spread of g across base points
  double randers = 1e-6;        // even/odd split residuals
  double euclidean = 1e-6;      // spread of g across all samples
  double euler = 1e-9;          // g(y,y) = F^2, relative
  double homogeneity = 1e-12;   // F(x,cy) = cF(x,y), relative
  double cross_term = 1e-9;     // simplified vs unsimplified cross term
  double ratio = 1e-9;          // alpha1/alpha2 = beta1/beta2
  double zero_gradient = 1e-12; // |df| below this counts as zero

  /// Sets a field by name; false if the name is unknown.
  bool set(std::string_view name, double value);
  std::optional<double> get(std::string_view name) const;
  std::vector<std::pair<std::string, double>> entries() const;

  friend bool operator==(const Tolerances&, const Tolerances&) = default;
};

}  // namespace finsler
