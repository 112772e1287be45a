#pragma once

#include <functional>

namespace disclosure {

struct RootOptions {
    double x_tol = 1e-10;
    double f_tol = 1e-9;
    int max_iter = 300;
};

struct RootResult {
    double root = 0.0;
    double residual = 0.0;  // |f(root)|
    int iterations = 0;
    double lo = 0.0;  // initial bracket
    double hi = 0.0;
};

// Bracketed root of f on [lo, hi]: Illinois steps with bisection as safeguard.
// Throws SolverError when f(lo) and f(hi) share a sign.
RootResult find_root(const std::function<double(double)>& f, double lo, double hi,
                     const RootOptions& opts = {});

// True when f changes sign on [lo, hi] (a zero at either end counts).
bool brackets_root(const std::function<double(double)>& f, double lo, double hi);

}  // namespace disclosure
