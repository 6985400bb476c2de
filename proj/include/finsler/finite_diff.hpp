#pragma once

// Central-difference oracles. Used by tests and cross-checks only; the
// library's own derivatives come from Taylor2.

#include <functional>
#include <span>
#include <vector>

#include "finsler/linalg.hpp"

namespace finsler::num {

using ScalarProgram = std::function<double(std::span<const double>)>;

/// O(h^2) central gradient. With `richardson`, combines steps h and h/2
/// into an O(h^4) estimate.
std::vector<double> fd_gradient(const ScalarProgram& f,
                                std::span<const double> x0, double h = 1e-4,
                                bool richardson = false);

SymMatrix fd_hessian(const ScalarProgram& f, std::span<const double> x0,
                     double h = 1e-4, bool richardson = false);

}  // namespace finsler::num
