#include "finsler/finite_diff.hpp"

namespace finsler::num {
namespace {

std::vector<double> central_gradient(const ScalarProgram& f,
                                     std::span<const double> x0, double h) {
  std::vector<double> x(x0.begin(), x0.end());
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    x[i] = xi + h;
    const double fp = f(x);
    x[i] = xi - h;
    const double fm = f(x);
    x[i] = xi;
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

SymMatrix central_hessian(const ScalarProgram& f, std::span<const double> x0,
                          double h) {
  std::vector<double> x(x0.begin(), x0.end());
  const std::size_t n = x.size();
  SymMatrix hess(n);
  const double f0 = f(x);
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = x[i];
    x[i] = xi + h;
    const double fp = f(x);
    x[i] = xi - h;
    const double fm = f(x);
    x[i] = xi;
    hess.set(i, i, (fp - 2.0 * f0 + fm) / (h * h));
    for (std::size_t j = i + 1; j < n; ++j) {
      const double xj = x[j];
      auto at = [&](double si, double sj) {
        x[i] = xi + si * h;
        x[j] = xj + sj * h;
        const double v = f(x);
        x[i] = xi;
        x[j] = xj;
        return v;
      };
      const double v = (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) /
                       (4.0 * h * h);
      hess.set(i, j, v);
    }
  }
  return hess;
}

}  // namespace

std::vector<double> fd_gradient(const ScalarProgram& f,
                                std::span<const double> x0, double h,
                                bool richardson) {
  auto g = central_gradient(f, x0, h);
  if (!richardson) return g;
  const auto g2 = central_gradient(f, x0, 0.5 * h);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = (4.0 * g2[i] - g[i]) / 3.0;
  return g;
}

SymMatrix fd_hessian(const ScalarProgram& f, std::span<const double> x0,
                     double h, bool richardson) {
  auto hs = central_hessian(f, x0, h);
  if (!richardson) return hs;
  const auto h2 = central_hessian(f, x0, 0.5 * h);
  SymMatrix out(hs.dim());
  for (std::size_t i = 0; i < hs.dim(); ++i) {
    for (std::size_t j = i; j < hs.dim(); ++j) {
      out.set(i, j, (4.0 * h2(i, j) - hs(i, j)) / 3.0);
    }
  }
  return out;
}

}  // namespace finsler::num
