#include "finsler/classify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "finsler/errors.hpp"
#include "finsler/zoo.hpp"

namespace finsler::classify {
namespace {

using num::SymMatrix;

Vec negated(Point y) {
  Vec out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = -y[i];
  return out;
}

/// Entrywise max - min over a set of equally sized matrices.
double spread(const std::vector<SymMatrix>& gs) {
  if (gs.size() < 2) return 0.0;
  const std::size_t n = gs.front().dim();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo;
      for (const auto& g : gs) {
        lo = std::min(lo, g(i, j));
        hi = std::max(hi, g(i, j));
      }
      worst = std::max(worst, hi - lo);
    }
  }
  return worst;
}

Verdict threshold(double deviation, double tol) {
  return deviation < tol ? Verdict::Positive : Verdict::Negative;
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Positive: return "positive";
    case Verdict::Negative: return "negative";
    case Verdict::Unclassifiable: return "unclassifiable";
  }
  return "?";
}

std::optional<Verdict> verdict_from_string(std::string_view s) {
  if (s == "positive") return Verdict::Positive;
  if (s == "negative") return Verdict::Negative;
  if (s == "unclassifiable") return Verdict::Unclassifiable;
  return std::nullopt;
}

ProbeResult probe_riemannian(const FinslerMetric& m,
                             std::span<const TangentSample> samples, double tol,
                             double step) {
  ProbeResult r;
  r.tolerance = tol;
  double max_asym = 0.0;
  for (const auto& s : samples) {
    try {
      const auto a = cartan_tensor(m, s, step);
      ++r.evaluated;
      const double dev = a.max_abs();
      max_asym = std::max(max_asym, a.asymmetry);
      if (dev >= r.max_deviation) {
        r.max_deviation = dev;
        r.witness = s;
      }
    } catch (const DomainError&) {
      ++r.skipped;
    }
  }
  r.stats["max_cartan_asymmetry"] = max_asym;
  if (r.evaluated == 0) {
    r.verdict = Verdict::Unclassifiable;
    r.note = "no sample could be evaluated";
    r.witness.reset();
    return r;
  }
  r.verdict = threshold(r.max_deviation, tol);
  if (r.positive()) r.witness.reset();
  r.note = "max |Cartan tensor| over samples";
  return r;
}

ProbeResult probe_minkowski(const FinslerMetric& m, const SampleGrid& grid,
                            double tol) {
  ProbeResult r;
  r.tolerance = tol;
  std::size_t min_points = std::numeric_limits<std::size_t>::max();
  for (const auto& y : grid.ys) {
    std::vector<SymMatrix> gs;
    std::vector<const Vec*> xs;
    for (const auto& x : grid.xs) {
      try {
        gs.push_back(fundamental_tensor(m, {x, y}).g);
        xs.push_back(&x);
        ++r.evaluated;
      } catch (const DomainError&) {
        ++r.skipped;
      }
    }
    min_points = std::min(min_points, gs.size());
    const double dev = spread(gs);
    if (dev > r.max_deviation || (!r.witness && !xs.empty())) {
      r.max_deviation = std::max(dev, r.max_deviation);
      if (!xs.empty()) r.witness = TangentSample{*xs.back(), y};
    }
  }
  r.stats["min_base_points_per_direction"] =
      grid.ys.empty() ? 0.0 : static_cast<double>(min_points);
  if (grid.ys.empty() || min_points < 2) {
    r.verdict = Verdict::Unclassifiable;
    r.note = "fewer than two base points share a direction";
    r.witness.reset();
    return r;
  }
  r.verdict = threshold(r.max_deviation, tol);
  if (r.positive()) r.witness.reset();
  r.note = "max spread of g across base points at shared directions";
  return r;
}

RandersFit fit_randers(const FinslerMetric& m, Point x, std::span<const Vec> ys,
                       double margin) {
  const std::size_t n = m.dim();
  if (ys.size() < n) throw InsufficientSamples("fit_randers: need >= n directions");
  const Vec xv(x.begin(), x.end());

  std::vector<double> betas;
  std::vector<SymMatrix> as;
  double max_f = 0.0;
  for (const auto& y : ys) {
    m.check_domain(x, y, margin);
    const Vec ny = negated(y);
    try {
      m.check_domain(x, ny, margin);
    } catch (const DomainError& e) {
      throw DomainError(std::string("reflected direction unavailable: ") + e.what());
    }
    const auto vars = num::Taylor2::variables(y);
    std::vector<num::Taylor2> neg;
    neg.reserve(vars.size());
    for (const auto& v : vars) neg.push_back(-v);
    num::Taylor2 fp(0.0, n);
    fp += m.value(x, std::span<const num::Taylor2>(vars));
    num::Taylor2 fm(0.0, n);
    fm += m.value(x, std::span<const num::Taylor2>(neg));
    const num::Taylor2 alpha = 0.5 * (fp + fm);
    const num::Taylor2 alpha2 = alpha * alpha;
    SymMatrix a(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) a.set(i, j, 0.5 * alpha2.hess(i, j));
    }
    as.push_back(std::move(a));
    betas.push_back(0.5 * (fp.value() - fm.value()));
    max_f = std::max({max_f, std::abs(fp.value()), std::abs(fm.value())});
  }

  // Normal equations Y^T Y b = Y^T beta.
  SymMatrix yty(n);
  Vec ytb(n, 0.0);
  for (std::size_t s = 0; s < ys.size(); ++s) {
    for (std::size_t i = 0; i < n; ++i) {
      ytb[i] += ys[s][i] * betas[s];
      for (std::size_t j = i; j < n; ++j) {
        yty.set(i, j, yty(i, j) + ys[s][i] * ys[s][j]);
      }
    }
  }
  RandersFit fit;
  fit.b = num::sym_solve(yty, ytb);
  for (std::size_t s = 0; s < ys.size(); ++s) {
    double pred = 0.0;
    for (std::size_t i = 0; i < n; ++i) pred += fit.b[i] * ys[s][i];
    fit.linear_residual = std::max(fit.linear_residual, std::abs(betas[s] - pred));
  }
  if (max_f > 0.0) fit.linear_residual /= max_f;
  fit.a = as.front();
  const double scale = fit.a.max_abs();
  fit.alpha_spread = spread(as) / (scale > 0.0 ? scale : 1.0);
  const Vec ainv_b = num::sym_solve(fit.a, fit.b);
  double q = 0.0;
  for (std::size_t i = 0; i < n; ++i) q += fit.b[i] * ainv_b[i];
  fit.beta_norm = std::sqrt(std::max(q, 0.0));
  return fit;
}

ProbeResult probe_randers(const FinslerMetric& m, const SampleGrid& grid,
                          double tol) {
  ProbeResult r;
  r.tolerance = tol;
  double max_lin = 0.0;
  double max_spread = 0.0;
  double max_norm = 0.0;
  bool norm_ok = true;
  for (const auto& x : grid.xs) {
    RandersFit fit;
    try {
      fit = fit_randers(m, x, grid.ys);
    } catch (const DomainError& e) {
      const std::string what = e.what();
      if (what.find("reflected direction unavailable") != std::string::npos) {
        r.verdict = Verdict::Unclassifiable;
        r.note = what;
        r.witness.reset();
        r.skipped += grid.ys.size();
        return r;
      }
      r.skipped += grid.ys.size();
      continue;
    } catch (const SingularMatrix&) {
      r.skipped += grid.ys.size();
      continue;
    }
    r.evaluated += grid.ys.size();
    const double dev = std::max(fit.linear_residual, fit.alpha_spread);
    if (dev >= r.max_deviation || (fit.beta_norm >= 1.0 && norm_ok)) {
      r.max_deviation = std::max(dev, r.max_deviation);
      r.witness = TangentSample{x, grid.ys.front()};
    }
    max_lin = std::max(max_lin, fit.linear_residual);
    max_spread = std::max(max_spread, fit.alpha_spread);
    max_norm = std::max(max_norm, fit.beta_norm);
    if (!(fit.beta_norm < 1.0)) norm_ok = false;
  }
  r.stats["max_linear_residual"] = max_lin;
  r.stats["max_alpha_spread"] = max_spread;
  r.stats["max_beta_norm"] = max_norm;
  if (r.evaluated == 0) {
    r.verdict = Verdict::Unclassifiable;
    r.note = "no base point could be evaluated";
    r.witness.reset();
    return r;
  }
  r.verdict = (r.max_deviation < tol && norm_ok) ? Verdict::Positive
                                                 : Verdict::Negative;
  if (r.positive()) r.witness.reset();
  r.note = "even/odd split: linear-fit residual and alpha^2 Hessian spread";
  return r;
}

ProbeResult probe_euclidean(const FinslerMetric& m, const SampleGrid& grid,
                            const Tolerances& tol) {
  const auto pairs = grid.pairs();
  const auto riem = probe_riemannian(m, pairs, tol.riemannian, tol.cartan_step);
  const auto mink = probe_minkowski(m, grid, tol.minkowski);

  ProbeResult r;
  r.tolerance = tol.euclidean;
  std::vector<SymMatrix> gs;
  for (const auto& s : pairs) {
    try {
      gs.push_back(fundamental_tensor(m, s).g);
      ++r.evaluated;
    } catch (const DomainError&) {
      ++r.skipped;
    }
  }
  r.max_deviation = spread(gs);
  r.stats["riemannian_deviation"] = riem.max_deviation;
  r.stats["minkowski_deviation"] = mink.max_deviation;
  if (gs.empty()) {
    r.verdict = Verdict::Unclassifiable;
    r.note = "no sample could be evaluated";
    return r;
  }
  const bool flat = r.max_deviation < tol.euclidean;
  r.verdict = (riem.positive() && mink.positive() && flat) ? Verdict::Positive
                                                           : Verdict::Negative;
  if (!r.positive()) {
    r.witness = riem.witness ? riem.witness : mink.witness;
    if (!r.witness && !pairs.empty()) r.witness = pairs.front();
  }
  r.note = "Riemannian and locally Minkowskian with one constant g";
  return r;
}

double ratio_residual(double alpha1, double beta1, double alpha2, double beta2) {
  const double den = std::abs(alpha1 * beta2) + std::abs(alpha2 * beta1);
  if (!(den > 0.0)) throw DivisionDomain("ratio test: vanishing denominator");
  return std::abs(alpha1 * beta2 - alpha2 * beta1) / den;
}

RatioCheck check_randers_ratio(const conv::ConvolutionSpec& spec,
                               std::span<const TangentSample> samples,
                               double tol) {
  spec.validate();
  if (!spec.field1.is_constant() && !spec.field2.is_constant()) {
    throw InvalidParameter("ratio test requires one constant field");
  }
  const auto metric = conv::convolve(spec);
  RatioCheck r;
  std::vector<std::pair<TangentSample, std::array<double, 4>>> parts;
  for (const auto& s : samples) {
    try {
      const auto [a, b] = conv::split(spec, s);
      const auto p1 = zoo::randers_decompose(*spec.metric1, a);
      const auto p2 = zoo::randers_decompose(*spec.metric2, b);
      const double res = ratio_residual(p1.alpha, p1.beta, p2.alpha, p2.beta);
      ++r.evaluated;
      if (res >= r.max_residual) {
        r.max_residual = res;
        r.witness = s;
      }
      parts.push_back({s, {p1.alpha, p1.beta, p2.alpha, p2.beta}});
    } catch (const DomainError&) {
      ++r.skipped;
    }
  }
  r.ratio_holds = r.evaluated > 0 && r.max_residual < tol;
  if (!r.ratio_holds) return r;
  r.witness.reset();

  double worst = 0.0;
  for (const auto& [s, p] : parts) {
    const auto [a, b] = conv::split(spec, s);
    const double f1 = spec.field1.value(a.x);
    const double f2 = spec.field2.value(b.x);
    const double a1 = f2 * p[0];
    const double b1 = f2 * p[1];
    const double a2 = f1 * p[2];
    const double b2 = f1 * p[3];
    const double alpha = std::sqrt(a1 * a1 + a2 * a2);
    const double sign = (b1 + b2) < 0.0 ? -1.0 : 1.0;
    const double beta = sign * std::sqrt(b1 * b1 + b2 * b2);
    const double f = metric->value(s.x, s.y);
    worst = std::max(worst, std::abs(alpha + beta - f) / f);
  }
  r.max_combined_error = worst;
  return r;
}

std::vector<std::string> ClassificationReport::classes() const {
  std::vector<std::string> out;
  if (riemannian.positive()) out.emplace_back("Riemannian");
  if (minkowskian.positive()) out.emplace_back("LocallyMinkowskian");
  if (randers.positive()) out.emplace_back("Randers");
  if (euclidean.positive()) out.emplace_back("Euclidean");
  if (out.empty()) out.emplace_back("Unclassified");
  return out;
}

ClassificationReport classify(const FinslerMetric& m, const SampleBox& box,
                              const ClassifyOptions& options,
                              const Tolerances& tol) {
  const std::size_t ny = std::max(options.directions, m.dim() + 1);
  const std::size_t nx = std::max<std::size_t>(options.base_points, 10);
  const auto grid = draw_grid(m, box, nx, ny, options.seed, tol.domain_margin);
  const auto pairs = grid.pairs();

  ClassificationReport rep;
  rep.metric = m.describe();
  rep.seed = options.seed;
  rep.tolerances = tol;
  rep.convention =
      "Euclidean means flat: one constant positive-definite g on all samples";

  rep.riemannian = probe_riemannian(m, pairs, tol.riemannian, tol.cartan_step);
  if (rep.riemannian.evaluated < kMinClassifySamples) {
    throw InsufficientSamples("classify: only " +
                              std::to_string(rep.riemannian.evaluated) +
                              " valid samples (need 30)");
  }
  rep.sample_count = rep.riemannian.evaluated;
  rep.minkowskian = probe_minkowski(m, grid, tol.minkowski);
  rep.randers = probe_randers(m, grid, tol.randers);
  rep.euclidean = probe_euclidean(m, grid, tol);
  if (rep.euclidean.positive() &&
      !(rep.riemannian.positive() && rep.minkowskian.positive())) {
    rep.euclidean.verdict = Verdict::Negative;
  }

  constexpr std::array<double, 3> kScales{0.5, 2.0, 10.0};
  ProbeResult& h = rep.homogeneity;
  h.tolerance = tol.homogeneity;
  double tensor_dev = 0.0;
  ProbeResult& c = rep.strong_convexity;
  c.tolerance = 0.0;
  double min_eig = std::numeric_limits<double>::infinity();
  for (const auto& s : pairs) {
    try {
      const auto hr = check_homogeneity(m, s, kScales);
      ++h.evaluated;
      tensor_dev = std::max(tensor_dev, hr.max_tensor_dev);
      if (hr.max_rel_error >= h.max_deviation) {
        h.max_deviation = hr.max_rel_error;
        h.witness = s;
      }
      const auto t = fundamental_tensor(m, s);
      ++c.evaluated;
      if (t.min_eig < min_eig) {
        min_eig = t.min_eig;
        c.witness = s;
      }
    } catch (const DomainError&) {
      ++h.skipped;
      ++c.skipped;
    }
  }
  h.stats["max_tensor_deviation"] = tensor_dev;
  h.verdict = h.evaluated ? threshold(h.max_deviation, tol.homogeneity)
                          : Verdict::Unclassifiable;
  if (h.positive()) h.witness.reset();
  h.note = "max |F(x,cy) - cF(x,y)| / cF(x,y), c in {0.5, 2, 10}";

  c.max_deviation = c.evaluated ? min_eig : 0.0;
  c.stats["min_eigenvalue"] = c.max_deviation;
  c.verdict = !c.evaluated ? Verdict::Unclassifiable
              : min_eig > 0.0 ? Verdict::Positive
                              : Verdict::Negative;
  if (c.positive()) c.witness.reset();
  c.note = "min eigenvalue of g over samples (reported as max_deviation)";
  return rep;
}

}  // namespace finsler::classify
