#include "disclosure/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace disclosure::quad {

double integrate(const Integrand& f, double a, double b) {
    if (!(b > a)) return 0.0;
    double err = 0.0;
    double l1 = 0.0;
    double val = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        f, a, b, 15, 1e-11, &err, &l1);
    if (std::isfinite(val) && err <= kAbsTol) return val;
    return boost::math::quadrature::gauss<double, 256>::integrate(f, a, b);
}

double integrate(const Integrand& f, double a, double b, std::vector<double> breakpoints) {
    if (!(b > a)) return 0.0;
    std::vector<double> cuts{a};
    std::sort(breakpoints.begin(), breakpoints.end());
    for (double x : breakpoints)
        if (x > cuts.back() && x < b) cuts.push_back(x);
    cuts.push_back(b);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) total += integrate(f, cuts[i], cuts[i + 1]);
    return total;
}

}  // namespace disclosure::quad
