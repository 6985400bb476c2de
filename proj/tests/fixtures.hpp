#pragma once

// Metric fixtures shared by the unit tests and the acceptance suite.

#include <cmath>
#include <string>
#include <vector>

#include "finsler/convolution.hpp"
#include "finsler/sampling.hpp"
#include "finsler/zoo.hpp"

namespace fixtures {

using finsler::MetricPtr;
using finsler::ScalarField;
using finsler::Vec;
namespace zoo = finsler::zoo;
namespace conv = finsler::conv;

struct Named {
  std::string name;
  MetricPtr metric;
};

struct NamedConv {
  std::string name;
  conv::ConvolutionSpec spec;
};

inline finsler::num::SymMatrix spd3() {
  finsler::num::SymMatrix a(3);
  a.set(0, 0, 2.0);
  a.set(1, 1, 1.5);
  a.set(2, 2, 1.0);
  a.set(0, 1, 0.3);
  a.set(0, 2, 0.1);
  a.set(1, 2, -0.2);
  return a;
}

inline finsler::num::SymMatrix spd2() {
  finsler::num::SymMatrix a(2);
  a.set(0, 0, 1.7);
  a.set(1, 1, 0.9);
  a.set(0, 1, -0.4);
  return a;
}

inline std::vector<Named> zoo_metrics() {
  std::vector<Named> out;
  out.push_back({"Euclidean(3)", zoo::build(zoo::Euclidean{3})});
  out.push_back({"ConstRiemann(3)", zoo::build(zoo::ConstRiemann{spd3()})});
  out.push_back({"Klein(3)", zoo::build(zoo::Klein{3})});
  for (double l : {2.0, 3.0, 4.0}) {
    out.push_back({"QuarticMinkowski(" + std::to_string(int(l)) + ")",
                   zoo::build(zoo::QuarticMinkowski{l})});
  }
  out.push_back({"KNormMinkowski(3,2)", zoo::build(zoo::KNormMinkowski{3.0, 2})});
  out.push_back({"KNormMinkowski(2,1)", zoo::build(zoo::KNormMinkowski{2.0, 1})});
  out.push_back({"KNormMinkowski(4,3)", zoo::build(zoo::KNormMinkowski{4.0, 3})});
  out.push_back({"Randers(Euclidean)",
                 zoo::build(zoo::Randers{zoo::Euclidean{2}, {0.3, -0.2}, {{0.1, 0.0}, {0.0, 0.1}}})});
  out.push_back({"Randers(Klein)", zoo::build(zoo::Randers{zoo::Klein{2}, {0.2, 0.1}, {}})});
  for (double l : {2.0, 3.0, 4.0}) {
    for (int k : {1, 2, 3}) {
      out.push_back({"Example11(" + std::to_string(int(l)) + "," + std::to_string(k) + ")",
                     zoo::build(zoo::Example11{l, k})});
    }
  }
  out.push_back({"Example43(5,0.5)", zoo::build(zoo::Example43{5, 0.5})});
  out.push_back({"Example43(4,0)", zoo::build(zoo::Example43{4, 0.0})});
  return out;
}

/// One representative of every zoo family, used for factor pairings.
inline std::vector<Named> zoo_factors() {
  return {
      {"Euclidean(2)", zoo::build(zoo::Euclidean{2})},
      {"ConstRiemann(2)", zoo::build(zoo::ConstRiemann{spd2()})},
      {"Klein(2)", zoo::build(zoo::Klein{2})},
      {"QuarticMinkowski(3)", zoo::build(zoo::QuarticMinkowski{3.0})},
      {"KNormMinkowski(3,2)", zoo::build(zoo::KNormMinkowski{3.0, 2})},
      {"Randers(Euclidean)", zoo::build(zoo::Randers{zoo::Euclidean{2}, {0.3, -0.2}, {}})},
      {"Example11(2,1)", zoo::build(zoo::Example11{2.0, 1})},
      {"Example43(4,0.5)", zoo::build(zoo::Example43{4, 0.5})},
  };
}

/// exp(a.x) with a small alternating coefficient vector of length n.
inline ScalarField soft_exp(std::size_t n, double scale, int phase) {
  Vec a(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = scale * ((i + phase) % 2 ? -1.0 : 1.0) / double(i + 1);
  }
  return ScalarField::exp_linear(a);
}

inline conv::ConvolutionSpec klein_klein_exp() {
  return {zoo::build(zoo::Klein{2}), zoo::build(zoo::Klein{2}),
          ScalarField::exp_linear({0.3, -0.2}), ScalarField::exp_linear({0.1, 0.25})};
}

inline conv::ConvolutionSpec euclid_euclid_exp() {
  return {zoo::build(zoo::Euclidean{2}), zoo::build(zoo::Euclidean{3}),
          ScalarField::exp_linear({0.5, 0.2}), ScalarField::exp_linear({-0.3, 0.1, 0.4})};
}

inline conv::ConvolutionSpec minkowski_const() {
  return {zoo::build(zoo::QuarticMinkowski{3.0}), zoo::build(zoo::KNormMinkowski{3.0, 2}),
          ScalarField::constant(2, 1.5), ScalarField::constant(2, 0.8)};
}

inline conv::ConvolutionSpec minkowski_exp_x1() {
  return {zoo::build(zoo::QuarticMinkowski{3.0}), zoo::build(zoo::KNormMinkowski{3.0, 2}),
          ScalarField::exp_linear({1.0, 0.0}), ScalarField::constant(2, 1.0)};
}

/// F2 is a scaled copy of F1, so alpha1/alpha2 = beta1/beta2 whenever y2 is a
/// positive multiple of y1.
inline conv::ConvolutionSpec proportional_randers() {
  finsler::num::SymMatrix four(2);
  four.set(0, 0, 4.0);
  four.set(1, 1, 4.0);
  return {zoo::build(zoo::Randers{zoo::Euclidean{2}, {0.3, 0.2}, {}}),
          zoo::build(zoo::Randers{zoo::ConstRiemann{four}, {0.6, 0.4}, {}}),
          ScalarField::constant(2, 1.5), ScalarField::constant(2, 0.7)};
}

inline conv::ConvolutionSpec warped_euclid_klein() {
  return {zoo::build(zoo::Euclidean{2}), zoo::build(zoo::Klein{2}),
          ScalarField::constant(2, 1.0), ScalarField::exp_linear({0.4, -0.3})};
}

inline conv::ConvolutionSpec warped_quartic_knorm() {
  return {zoo::build(zoo::QuarticMinkowski{3.0}), zoo::build(zoo::KNormMinkowski{3.0, 2}),
          ScalarField::constant(2, 1.0), ScalarField::norm_squared_plus(2, 1.0)};
}

inline std::vector<NamedConv> convolution_fixtures() {
  return {
      {"Klein x Klein, exp", klein_klein_exp()},
      {"Euclidean x Euclidean, exp", euclid_euclid_exp()},
      {"Quartic x KNorm, constant", minkowski_const()},
      {"Quartic x KNorm, exp(x1)", minkowski_exp_x1()},
      {"Randers x Randers, constant", proportional_randers()},
      {"Euclidean x Klein, warped", warped_euclid_klein()},
      {"Quartic x KNorm, warped", warped_quartic_knorm()},
      {"Klein x Quartic, mixed",
       {zoo::build(zoo::Klein{2}), zoo::build(zoo::QuarticMinkowski{4.0}),
        ScalarField::norm_squared_plus(2, 2.0), ScalarField::exp_linear({0.2, 0.3})}},
  };
}

inline std::vector<finsler::TangentSample> samples(const finsler::FinslerMetric& m,
                                                   std::size_t count, std::uint64_t seed) {
  return finsler::draw_samples(m, m.default_box(), count, seed, 1e-6);
}

}  // namespace fixtures
