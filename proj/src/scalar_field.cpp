#include "finsler/scalar_field.hpp"

#include <cmath>
#include <sstream>

#include "finsler/errors.hpp"

namespace finsler {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool is_integer(double p) { return std::floor(p) == p; }

}  // namespace

ScalarField ScalarField::constant(std::size_t dim, double c) {
  if (!(c > 0.0)) throw InvalidParameter("Constant field must be > 0");
  return ScalarField(dim, Constant{c});
}

ScalarField ScalarField::exp_linear(Vec a) {
  const std::size_t dim = a.size();
  return ScalarField(dim, ExpLinear{std::move(a)});
}

ScalarField ScalarField::monomial(std::size_t dim, std::size_t index,
                                  double power, double c) {
  if (index >= dim) throw InvalidParameter("Monomial index out of range");
  if (!(c > 0.0)) throw InvalidParameter("Monomial coefficient must be > 0");
  return ScalarField(dim, Monomial{index, power, c});
}

ScalarField ScalarField::norm_squared_plus(std::size_t dim, double c) {
  if (!(c > 0.0)) throw InvalidParameter("NormSquaredPlus offset must be > 0");
  return ScalarField(dim, NormSquaredPlus{c});
}

void ScalarField::check_domain(Point x) const {
  if (x.size() != dim_) throw DomainError("scalar field: dimension mismatch");
  if (const auto* m = std::get_if<Monomial>(&family_)) {
    const double base = x[m->index];
    const bool even_int = is_integer(m->power) &&
                          std::fmod(std::abs(m->power), 2.0) == 0.0;
    if (!(base > 0.0) && !(even_int && base != 0.0)) {
      throw DomainError("monomial field not positive at x^" +
                        std::to_string(m->index) + " = " + std::to_string(base));
    }
  }
}

double ScalarField::value(Point x) const {
  check_domain(x);
  return std::visit(
      Overloaded{
          [](const Constant& f) { return f.c; },
          [&](const ExpLinear& f) {
            double s = 0.0;
            for (std::size_t i = 0; i < f.a.size(); ++i) s += f.a[i] * x[i];
            return std::exp(s);
          },
          [&](const Monomial& f) { return f.c * std::pow(x[f.index], f.power); },
          [&](const NormSquaredPlus& f) {
            double s = f.c;
            for (double v : x) s += v * v;
            return s;
          },
      },
      family_);
}

Vec ScalarField::gradient(Point x) const {
  check_domain(x);
  Vec g(dim_, 0.0);
  std::visit(Overloaded{
                 [](const Constant&) {},
                 [&](const ExpLinear& f) {
                   const double v = value(x);
                   for (std::size_t i = 0; i < dim_; ++i) g[i] = f.a[i] * v;
                 },
                 [&](const Monomial& f) {
                   g[f.index] =
                       f.c * f.power * std::pow(x[f.index], f.power - 1.0);
                 },
                 [&](const NormSquaredPlus&) {
                   for (std::size_t i = 0; i < dim_; ++i) g[i] = 2.0 * x[i];
                 },
             },
             family_);
  return g;
}

std::optional<double> ScalarField::constant_value() const {
  if (const auto* c = std::get_if<Constant>(&family_)) return c->c;
  if (const auto* e = std::get_if<ExpLinear>(&family_)) {
    for (double a : e->a) {
      if (a != 0.0) return std::nullopt;
    }
    return 1.0;
  }
  if (const auto* m = std::get_if<Monomial>(&family_)) {
    if (m->power == 0.0) return m->c;
  }
  return std::nullopt;
}

std::string ScalarField::describe() const {
  std::ostringstream os;
  std::visit(Overloaded{
                 [&](const Constant& f) { os << "Constant(" << f.c << ")"; },
                 [&](const ExpLinear& f) {
                   os << "ExpLinear(";
                   for (std::size_t i = 0; i < f.a.size(); ++i) {
                     os << (i ? "," : "") << f.a[i];
                   }
                   os << ")";
                 },
                 [&](const Monomial& f) {
                   os << "Monomial(" << f.index << "," << f.power << ","
                      << f.c << ")";
                 },
                 [&](const NormSquaredPlus& f) {
                   os << "NormSquaredPlus(" << f.c << ")";
                 },
             },
             family_);
  return os.str();
}

}  // namespace finsler
