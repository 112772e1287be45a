#pragma once

#include <functional>
#include <vector>

namespace disclosure::quad {

using Integrand = std::function<double(double)>;

constexpr double kAbsTol = 1e-10;

// Adaptive Gauss-Kronrod on [a, b]; falls back to a fixed 256-node
// Gauss-Legendre rule when the error estimate stays above kAbsTol.
double integrate(const Integrand& f, double a, double b);

// Same, but split at every breakpoint strictly inside (a, b).
double integrate(const Integrand& f, double a, double b, std::vector<double> breakpoints);

}  // namespace disclosure::quad
