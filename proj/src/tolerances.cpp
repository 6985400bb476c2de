#include "finsler/tolerances.hpp"

#include <array>

namespace finsler {
namespace {

using Field = double Tolerances::*;

constexpr std::array<std::pair<std::string_view, Field>, 13> kFields{{
    {"fd_step", &Tolerances::fd_step},
    {"cartan_step", &Tolerances::cartan_step},
    {"domain_margin", &Tolerances::domain_margin},
    {"fd_agreement", &Tolerances::fd_agreement},
    {"riemannian", &Tolerances::riemannian},
    {"minkowski", &Tolerances::minkowski},
    {"randers", &Tolerances::randers},
    {"euclidean", &Tolerances::euclidean},
    {"euler", &Tolerances::euler},
    {"homogeneity", &Tolerances::homogeneity},
    {"cross_term", &Tolerances::cross_term},
    {"ratio", &Tolerances::ratio},
    {"zero_gradient", &Tolerances::zero_gradient},
}};

}  // namespace

bool Tolerances::set(std::string_view name, double value) {
  for (const auto& [key, field] : kFields) {
    if (key == name) {
      this->*field = value;
      return true;
    }
  }
  return false;
}

std::optional<double> Tolerances::get(std::string_view name) const {
  for (const auto& [key, field] : kFields) {
    if (key == name) return this->*field;
  }
  return std::nullopt;
}

std::vector<std::pair<std::string, double>> Tolerances::entries() const {
  std::vector<std::pair<std::string, double>> out;
  out.reserve(kFields.size());
  for (const auto& [key, field] : kFields) out.emplace_back(key, this->*field);
  return out;
}

}  // namespace finsler
