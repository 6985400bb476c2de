#include "doctest.h"

#include <cmath>

#include "finsler/classify.hpp"
#include "finsler/errors.hpp"
#include "finsler/sampling.hpp"
#include "finsler/zoo.hpp"
#include "fixtures.hpp"

using namespace finsler;
using classify::Verdict;

namespace {

classify::ClassificationReport run(const FinslerMetric& m, std::uint64_t seed = 61) {
  return classify::classify(m, m.default_box(), {10, 6, seed});
}

SampleGrid grid_for(const FinslerMetric& m, std::uint64_t seed = 62) {
  return draw_grid(m, m.default_box(), 10, m.dim() + 3, seed, 1e-6);
}

}  // namespace

TEST_CASE("verdict strings") {
  for (auto v : {Verdict::Positive, Verdict::Negative, Verdict::Unclassifiable}) {
    CHECK(classify::verdict_from_string(classify::to_string(v)) == v);
  }
  CHECK_FALSE(classify::verdict_from_string("maybe").has_value());
}

TEST_CASE("Riemannian probe") {
  const auto kk = conv::convolve(fixtures::klein_klein_exp());
  CHECK(classify::probe_riemannian(*kk, grid_for(*kk).pairs()).positive());
  const auto q4 = zoo::build(zoo::QuarticMinkowski{4.0});
  const auto r4 = classify::probe_riemannian(*q4, grid_for(*q4).pairs());
  CHECK(r4.verdict == Verdict::Negative);
  CHECK(r4.max_deviation > 1e-3);
  CHECK(r4.witness.has_value());
  const auto q2 = zoo::build(zoo::QuarticMinkowski{2.0});
  CHECK(classify::probe_riemannian(*q2, grid_for(*q2).pairs()).positive());
}

TEST_CASE("Riemannian probe over convolutions of zoo pairs") {
  const std::vector<fixtures::Named> riemannian{
      {"Euclidean", zoo::build(zoo::Euclidean{2})},
      {"ConstRiemann", zoo::build(zoo::ConstRiemann{fixtures::spd2()})},
      {"Klein", zoo::build(zoo::Klein{2})}};
  const std::vector<fixtures::Named> finslerian{
      {"Quartic", zoo::build(zoo::QuarticMinkowski{3.0})},
      {"KNorm", zoo::build(zoo::KNormMinkowski{3.0, 2})},
      {"Randers", zoo::build(zoo::Randers{zoo::Euclidean{2}, {0.3, -0.2}, {}})}};
  for (const auto& [n1, m1] : riemannian) {
    for (const auto& [n2, m2] : riemannian) {
      CAPTURE(n1 + " x " + n2);
      const auto m = conv::convolve({m1, m2, fixtures::soft_exp(2, 0.3, 0), fixtures::soft_exp(2, 0.2, 1)});
      CHECK(classify::probe_riemannian(*m, grid_for(*m).pairs()).positive());
    }
    for (const auto& [n2, m2] : finslerian) {
      CAPTURE(n1 + " x " + n2);
      const auto m = conv::convolve({m1, m2, fixtures::soft_exp(2, 0.3, 0), fixtures::soft_exp(2, 0.2, 1)});
      CHECK(classify::probe_riemannian(*m, grid_for(*m).pairs()).verdict == Verdict::Negative);
    }
  }
}

TEST_CASE("Minkowski probe") {
  const auto c = conv::convolve(fixtures::minkowski_const());
  CHECK(classify::probe_minkowski(*c, grid_for(*c)).positive());
  const auto e = conv::convolve(fixtures::minkowski_exp_x1());
  const auto r = classify::probe_minkowski(*e, grid_for(*e));
  CHECK(r.verdict == Verdict::Negative);
  CHECK(r.max_deviation > 1e-3);
  const auto k = zoo::build(zoo::Klein{2});
  CHECK(classify::probe_minkowski(*k, grid_for(*k)).verdict == Verdict::Negative);
  // Klein at x = 0 vs x = (0.5, 0) differ
  const auto g0 = fundamental_tensor(*k, {{0, 0}, {1, 0}}).g;
  const auto g1 = fundamental_tensor(*k, {{0.5, 0}, {1, 0}}).g;
  CHECK(num::max_abs_diff(g0, g1) > 0.1);
}

TEST_CASE("Randers probe") {
  const auto r = zoo::build(zoo::Randers{zoo::Euclidean{2}, {0.3, 0.4}, {}});
  const auto p = classify::probe_randers(*r, grid_for(*r));
  CHECK(p.positive());
  const auto fit = classify::fit_randers(*r, Vec{0.2, 0.1}, grid_for(*r).ys);
  CHECK(std::abs(fit.b[0] - 0.3) <= 1e-8);
  CHECK(std::abs(fit.b[1] - 0.4) <= 1e-8);
  CHECK(fit.beta_norm == doctest::Approx(0.5).epsilon(1e-8));

  const auto e = zoo::build(zoo::Euclidean{3});
  CHECK(classify::probe_randers(*e, grid_for(*e)).positive());

  const auto q = zoo::build(zoo::QuarticMinkowski{4.0});
  CHECK(classify::probe_randers(*q, grid_for(*q)).verdict == Verdict::Negative);

  // two Randers factors with alpha1/alpha2 != beta1/beta2
  const conv::ConvolutionSpec mixed{zoo::build(zoo::Randers{zoo::Euclidean{2}, {0.5, 0.0}, {}}),
                                    zoo::build(zoo::Randers{zoo::Euclidean{2}, {0.0, 0.5}, {}}),
                                    ScalarField::constant(2, 1.0), ScalarField::constant(2, 1.0)};
  const auto mm = conv::convolve(mixed);
  CHECK(classify::probe_randers(*mm, grid_for(*mm)).verdict == Verdict::Negative);

  const auto ex = zoo::build(zoo::Example11{3.0, 2});
  const auto u = classify::probe_randers(*ex, grid_for(*ex));
  CHECK(u.verdict == Verdict::Unclassifiable);
  CHECK_FALSE(u.note.empty());
}

TEST_CASE("Euclidean probe") {
  const conv::ConvolutionSpec flat{zoo::build(zoo::Euclidean{2}), zoo::build(zoo::Euclidean{2}),
                                   ScalarField::constant(2, 2.0), ScalarField::constant(2, 0.5)};
  const auto f = conv::convolve(flat);
  CHECK(classify::probe_euclidean(*f, grid_for(*f)).positive());
  const conv::ConvolutionSpec bent{zoo::build(zoo::Euclidean{2}), zoo::build(zoo::Euclidean{2}),
                                   ScalarField::exp_linear({1.0, 0.0}), ScalarField::constant(2, 1.0)};
  const auto b = conv::convolve(bent);
  CHECK(classify::probe_euclidean(*b, grid_for(*b)).verdict == Verdict::Negative);
  num::SymMatrix d(2);
  d.set(0, 0, 2.0);
  d.set(1, 1, 3.0);
  const auto cr = zoo::build(zoo::ConstRiemann{d});
  CHECK(classify::probe_euclidean(*cr, grid_for(*cr)).positive());
}

TEST_CASE("ratio residual") {
  CHECK(classify::ratio_residual(2.0, 1.0, 1.0, 0.5) == 0.0);
  CHECK(classify::ratio_residual(1.0, 0.0, 1.0, 0.4) == 1.0);
  CHECK_THROWS_AS(classify::ratio_residual(1.0, 0.0, 1.0, 0.0), DivisionDomain);
}

TEST_CASE("Randers ratio check") {
  const auto spec = fixtures::proportional_randers();
  const auto m = conv::convolve(spec);
  SampleRng rng(63);
  std::vector<TangentSample> parallel;
  for (auto s : fixtures::samples(*m, 300, 64)) {
    const double t = rng.uniform(0.25, 2.0);
    s.y[2] = t * s.y[0];
    s.y[3] = t * s.y[1];
    parallel.push_back(s);
  }
  const auto r = classify::check_randers_ratio(spec, parallel);
  CHECK(r.ratio_holds);
  REQUIRE(r.max_combined_error.has_value());
  CHECK(*r.max_combined_error <= 1e-9);

  // generic samples break the pointwise ratio
  const auto g = classify::check_randers_ratio(spec, fixtures::samples(*m, 300, 65));
  CHECK_FALSE(g.ratio_holds);
  CHECK(g.witness.has_value());

  // alpha1 = |y1|, beta1 = 0.5 y^1, alpha2 = |y2|, beta2 = 0.5 y^3 on y2 = t y1
  const conv::ConvolutionSpec half{zoo::build(zoo::Randers{zoo::Euclidean{2}, {0.5, 0.0}, {}}),
                                   zoo::build(zoo::Randers{zoo::Euclidean{2}, {0.5, 0.0}, {}}),
                                   ScalarField::constant(2, 1.2), ScalarField::constant(2, 0.9)};
  const auto hr = classify::check_randers_ratio(half, parallel);
  CHECK(hr.ratio_holds);
  CHECK(hr.max_combined_error.value_or(1.0) <= 1e-9);

  // beta1 = 0 against beta2 != 0
  const conv::ConvolutionSpec zero{zoo::build(zoo::Euclidean{2}),
                                   zoo::build(zoo::Randers{zoo::Euclidean{2}, {0.5, 0.0}, {}}),
                                   ScalarField::constant(2, 1.0), ScalarField::constant(2, 1.0)};
  const auto z = classify::check_randers_ratio(zero, parallel);
  CHECK_FALSE(z.ratio_holds);
  CHECK(z.max_residual == doctest::Approx(1.0));

  CHECK_THROWS_AS(classify::check_randers_ratio(fixtures::klein_klein_exp(), parallel),
                  InvalidParameter);
}

TEST_CASE("ratio check is scale invariant") {
  const auto spec = fixtures::proportional_randers();
  num::SymMatrix nine(2);
  nine.set(0, 0, 9.0);
  nine.set(1, 1, 9.0);
  // (alpha1, beta1) multiplied by 3
  const conv::ConvolutionSpec scaled{zoo::build(zoo::Randers{zoo::ConstRiemann{nine}, {0.9, 0.6}, {}}),
                                     spec.metric2, spec.field1, spec.field2};
  const auto m = conv::convolve(spec);
  for (std::uint64_t seed : {66, 67}) {
    auto samples = fixtures::samples(*m, 200, seed);
    if (seed == 66) {
      for (auto& s : samples) {
        s.y[2] = 0.7 * s.y[0];
        s.y[3] = 0.7 * s.y[1];
      }
    }
    CHECK(classify::check_randers_ratio(spec, samples).ratio_holds ==
          classify::check_randers_ratio(scaled, samples).ratio_holds);
  }
}

TEST_CASE("classification reports") {
  const auto e4 = zoo::build(zoo::Euclidean{4});
  const auto r = run(*e4);
  CHECK(r.riemannian.positive());
  CHECK(r.minkowskian.positive());
  CHECK(r.randers.positive());
  CHECK(r.euclidean.positive());
  CHECK(r.homogeneity.positive());
  CHECK(r.strong_convexity.positive());
  CHECK(r.sample_count >= classify::kMinClassifySamples);

  const auto k2 = zoo::build(zoo::Klein{2});
  const auto rk = run(*k2);
  CHECK(rk.riemannian.positive());
  CHECK(rk.minkowskian.verdict == Verdict::Negative);
  CHECK(rk.euclidean.verdict == Verdict::Negative);

  const auto ex = zoo::build(zoo::Example11{3.0, 2});
  const auto re = run(*ex);
  CHECK(re.homogeneity.positive());
  CHECK(re.strong_convexity.evaluated > 0);
  CHECK(re.minkowskian.verdict != Verdict::Unclassifiable);
  CHECK(re.randers.verdict == Verdict::Unclassifiable);

  const auto mc = conv::convolve(fixtures::minkowski_const());
  CHECK(run(*mc).minkowskian.positive());
}

TEST_CASE("Euclidean verdict implies the two base verdicts") {
  for (const auto& [name, m] : fixtures::zoo_metrics()) {
    CAPTURE(name);
    const auto r = run(*m);
    if (r.euclidean.positive()) {
      CHECK(r.riemannian.positive());
      CHECK(r.minkowskian.positive());
    }
    CHECK_FALSE(r.classes().empty());
  }
}

TEST_CASE("shrinking tolerances never turns a negative verdict positive") {
  std::vector<MetricPtr> ms{zoo::build(zoo::Klein{2}), zoo::build(zoo::QuarticMinkowski{3.0}),
                            zoo::build(zoo::Example11{3.0, 2}),
                            conv::convolve(fixtures::minkowski_exp_x1())};
  for (const auto& m : ms) {
    CAPTURE(m->describe());
    const auto grid = grid_for(*m);
    const auto pairs = grid.pairs();
    bool was_negative_r = false, was_negative_m = false;
    for (double tol : {1e-2, 1e-4, 1e-6, 1e-8, 1e-10}) {
      const bool r = classify::probe_riemannian(*m, pairs, tol).positive();
      const bool k = classify::probe_minkowski(*m, grid, tol).positive();
      if (was_negative_r) CHECK_FALSE(r);
      if (was_negative_m) CHECK_FALSE(k);
      was_negative_r = was_negative_r || !r;
      was_negative_m = was_negative_m || !k;
    }
  }
}

TEST_CASE("classification is deterministic and needs enough samples") {
  const auto m = conv::convolve(fixtures::klein_klein_exp());
  CHECK(run(*m, 70) == run(*m, 70));
  const auto k = zoo::build(zoo::Klein{2});
  const SampleBox outside{{{2, 3}, {2, 3}}, {{-1, 1}, {-1, 1}}};
  CHECK_THROWS_AS(classify::classify(*k, outside, {10, 6, 1}), InsufficientSamples);
}
