#include "disclosure/root_finding.hpp"

#include <cmath>
#include <algorithm>
#include <limits>
#include <sstream>

#include "disclosure/errors.hpp"

namespace disclosure {

namespace {

bool same_sign(double a, double b) { return (a > 0 && b > 0) || (a < 0 && b < 0); }

}  // namespace

bool brackets_root(const std::function<double(double)>& f, double lo, double hi) {
    return !same_sign(f(lo), f(hi));
}

RootResult find_root(const std::function<double(double)>& f, double lo, double hi,
                     const RootOptions& opts) {
    RootResult out;
    out.lo = lo;
    out.hi = hi;
    double a = lo, b = hi;
    double fa = f(a), fb = f(b);
    if (!std::isfinite(fa) || !std::isfinite(fb)) {
        std::ostringstream msg;
        msg << "non-finite function value at bracket end: f(" << a << ")=" << fa << ", f(" << b
            << ")=" << fb;
        throw SolverError(msg.str());
    }
    if (fa == 0.0) {
        out.root = a;
        return out;
    }
    if (fb == 0.0) {
        out.root = b;
        return out;
    }
    if (same_sign(fa, fb)) {
        std::ostringstream msg;
        msg.precision(12);
        msg << "no sign change on [" << a << ", " << b << "]: f(lo)=" << fa << ", f(hi)=" << fb;
        throw SolverError(msg.str());
    }

    // fa_w, fb_w are the (possibly halved) Illinois weights; fa, fb the true values
    double fa_w = fa, fb_w = fb;
    int side = 0;
    double best = std::fabs(fa) < std::fabs(fb) ? a : b;
    double fbest = std::min(std::fabs(fa), std::fabs(fb));
    double last_width = b - a;

    for (int it = 1; it <= opts.max_iter; ++it) {
        out.iterations = it;
        double x = (a * fb_w - b * fa_w) / (fb_w - fa_w);
        bool bisect = !(x > a && x < b) || (it % 4 == 0 && (b - a) > 0.5 * last_width);
        if (it % 4 == 0) last_width = b - a;
        if (bisect) x = 0.5 * (a + b);

        double fx = f(x);
        if (std::fabs(fx) < fbest) {
            fbest = std::fabs(fx);
            best = x;
        }
        if (fx == 0.0) break;
        if (same_sign(fx, fb)) {
            b = x;
            fb = fb_w = fx;
            if (side == -1) fa_w *= 0.5;
            side = -1;
        } else {
            a = x;
            fa = fa_w = fx;
            if (side == +1) fb_w *= 0.5;
            side = +1;
        }
        double width = b - a;
        if (width <= opts.x_tol && fbest <= opts.f_tol) break;
        if (width <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::fabs(x)))
            break;
    }
    out.root = best;
    out.residual = fbest;
    return out;
}

}  // namespace disclosure
