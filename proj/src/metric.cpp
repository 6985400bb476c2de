#include "finsler/metric.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "finsler/errors.hpp"
#include "finsler/scalar_field.hpp"

namespace finsler {

SampleBox concat(const SampleBox& a, const SampleBox& b) {
  SampleBox out = a;
  out.x.insert(out.x.end(), b.x.begin(), b.x.end());
  out.y.insert(out.y.end(), b.y.begin(), b.y.end());
  return out;
}

bool FinslerMetric::in_domain(Point x, Point y, double margin) const noexcept {
  try {
    check_domain(x, y, margin);
    return true;
  } catch (const Error&) {
    return false;
  }
}

void require_nonzero(Point y, double margin, const char* what) {
  double n2 = 0.0;
  for (double v : y) n2 += v * v;
  if (!(std::sqrt(n2) > margin)) {
    throw DomainError(std::string("slit violation: ") + what +
                      " direction is zero");
  }
}

void require_dims(const FinslerMetric& m, Point x, Point y) {
  if (x.size() != m.dim() || y.size() != m.dim()) {
    throw DomainError("sample dimension mismatch: metric has n=" +
                      std::to_string(m.dim()) + ", got x:" +
                      std::to_string(x.size()) + " y:" +
                      std::to_string(y.size()));
  }
}

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::Autodiff: return "autodiff";
    case Provenance::Block: return "block";
    case Provenance::Symmetrized: return "symmetrized";
  }
  return "?";
}

num::Taylor2 FinslerMetric::squared_value(Point x,
                                          std::span<const num::Taylor2> y) const {
  const num::Taylor2 F = value(x, y);
  return F * F;
}

double FinslerMetric::squared_value(Point x, Point y) const {
  const double F = value(x, y);
  return F * F;
}

FundamentalTensor fundamental_tensor(const FinslerMetric& m,
                                     const TangentSample& s, double margin) {
  m.check_domain(s.x, s.y, margin);
  const auto vars = num::Taylor2::variables(s.y);
  num::Taylor2 F2(0.0, s.y.size());
  F2 += m.squared_value(s.x, std::span<const num::Taylor2>(vars));
  if (!(F2.value() > 0.0)) {
    throw NonPositive("F^2 = " + std::to_string(F2.value()) + " is not positive", F2.value());
  }
  const double F = std::sqrt(F2.value());

  FundamentalTensor t;
  t.at = s;
  t.provenance = Provenance::Autodiff;
  t.F = F;
  t.dF.resize(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) t.dF[i] = F2.grad(i) / (2.0 * F);
  t.g = num::SymMatrix(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = i; j < m.dim(); ++j) t.g.set(i, j, 0.5 * F2.hess(i, j));
  }
  t.min_eig = num::min_eigenvalue(t.g);
  t.strongly_convex = t.min_eig > 0.0;
  return t;
}

double CartanTensor::max_abs() const noexcept {
  double m = 0.0;
  for (double v : entries) m = std::max(m, std::abs(v));
  return m;
}

double CartanTensor::max_contraction_with_y() const {
  double m = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += (*this)(i, j, k) * at.y[i];
      m = std::max(m, std::abs(s));
    }
  }
  return m;
}

CartanTensor cartan_tensor(const FinslerMetric& m, const TangentSample& s,
                           double step, double margin) {
  const auto center = fundamental_tensor(m, s, margin);
  const std::size_t n = m.dim();
  Vec raw(n * n * n, 0.0);
  TangentSample shifted = s;
  for (std::size_t k = 0; k < n; ++k) {
    shifted.y[k] = s.y[k] + step;
    const auto gp = fundamental_tensor(m, shifted, 0.0).g;
    shifted.y[k] = s.y[k] - step;
    const auto gm = fundamental_tensor(m, shifted, 0.0).g;
    shifted.y[k] = s.y[k];
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        raw[(i * n + j) * n + k] =
            0.5 * center.F * (gp(i, j) - gm(i, j)) / (2.0 * step);
      }
    }
  }

  CartanTensor a;
  a.at = s;
  a.n = n;
  a.entries.assign(n * n * n, 0.0);
  auto idx = [n](std::size_t i, std::size_t j, std::size_t k) {
    return (i * n + j) * n + k;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const double sym = (raw[idx(i, j, k)] + raw[idx(i, k, j)] +
                            raw[idx(j, i, k)] + raw[idx(j, k, i)] +
                            raw[idx(k, i, j)] + raw[idx(k, j, i)]) /
                           6.0;
        a.entries[idx(i, j, k)] = sym;
        a.asymmetry = std::max(a.asymmetry, std::abs(raw[idx(i, j, k)] - sym));
      }
    }
  }
  return a;
}

Vec gradient_field(const FinslerMetric& m, const ScalarField& u,
                   const TangentSample& s) {
  if (u.dim() != m.dim()) {
    throw InvalidParameter("gradient_field: field dimension " +
                           std::to_string(u.dim()) + " != metric dimension " +
                           std::to_string(m.dim()));
  }
  const auto t = fundamental_tensor(m, s);
  return num::sym_solve(t.g, u.gradient(s.x));
}

HomogeneityReport check_homogeneity(const FinslerMetric& m,
                                    const TangentSample& s,
                                    std::span<const double> scales,
                                    bool include_tensor) {
  m.check_domain(s.x, s.y, 0.0);
  const double f = m.value(s.x, s.y);
  num::SymMatrix g;
  if (include_tensor) g = fundamental_tensor(m, s, 0.0).g;

  HomogeneityReport r;
  TangentSample scaled = s;
  for (double c : scales) {
    if (!(c > 0.0)) throw InvalidParameter("homogeneity scale must be > 0");
    for (std::size_t i = 0; i < s.y.size(); ++i) scaled.y[i] = c * s.y[i];
    const double fc = m.value(scaled.x, scaled.y);
    const double rel = std::abs(fc - c * f) / (c * std::abs(f));
    if (rel > r.max_rel_error) {
      r.max_rel_error = rel;
      r.worst_scale = c;
    }
    if (include_tensor) {
      const auto gc = fundamental_tensor(m, scaled, 0.0).g;
      r.max_tensor_dev = std::max(r.max_tensor_dev, num::max_abs_diff(g, gc));
    }
  }
  return r;
}

ConvexityReport check_strong_convexity(const FinslerMetric& m,
                                       const TangentSample& s) {
  const auto t = fundamental_tensor(m, s);
  return {t.min_eig > 0.0, t.min_eig};
}

}  // namespace finsler
