#include "disclosure/extensions.hpp"

#include <algorithm>
#include <cmath>

#include "disclosure/errors.hpp"
#include "disclosure/quadrature.hpp"

namespace disclosure {

NoiseModel::NoiseModel(ValueDistribution noise) : noise_(std::move(noise)) {
    if (std::fabs(noise_.mean()) > 1e-9) throw DomainError("noise must have mean zero");
}

NoiseModel NoiseModel::uniform(double half_width) {
    if (!(half_width > 0)) throw DomainError("noise half-width must be positive");
    return NoiseModel(ValueDistribution::uniform(-half_width, half_width));
}

NoiseModel NoiseModel::triangular(double half_width) {
    if (!(half_width > 0)) throw DomainError("noise half-width must be positive");
    return NoiseModel(
        ValueDistribution::piecewise_linear({-half_width, 0.0, half_width}, {0.0, 1.0, 0.0}));
}

NoiseModel noise_with_precision(NoiseFamily family, double tau) {
    if (!(tau > 0)) throw DomainError("precision must be positive");
    // uniform on [-a, a]: variance a^2/3; triangular: a^2/6
    if (family == NoiseFamily::uniform) return NoiseModel::uniform(std::sqrt(3.0 / tau));
    return NoiseModel::triangular(std::sqrt(6.0 / tau));
}

double noisy_nondisclosure_price(const ModelParams& params, const NoiseModel& noise, double s,
                                 double vhat) {
    const auto& g = params.dist;
    const double lo = g.lo(), hi = g.hi(), p = params.p, q = params.q;
    if (!std::isfinite(s) || s < lo + noise.lo() || s > hi + noise.hi())
        throw DomainError("signal outside the reachable range");
    if (vhat < lo || vhat > hi) throw DomainError("threshold outside the value support");

    // veracious part: v with s - v in the noise support
    double a = std::max(lo, s - noise.hi()), b = std::min(hi, s - noise.lo());
    double a1 = 0, b1 = 0, a1_le = 0, b1_le = 0;
    if (b > a) {
        std::vector<double> cuts = g.kinks();
        for (double k : noise.dist().kinks()) cuts.push_back(s - k);
        cuts.push_back(vhat);
        auto lik = [&](double v) { return noise.pdf(s - v) * g.pdf(v); };
        auto mom = [&](double v) { return v * lik(v); };
        a1 = quad::integrate(mom, a, b, cuts);
        b1 = quad::integrate(lik, a, b, cuts);
        double c = std::min(b, vhat);
        if (c > a) {
            a1_le = quad::integrate(mom, a, c, cuts);
            b1_le = quad::integrate(lik, a, c, cuts);
        }
    }
    auto m = silent_mass(params, vhat);
    double gs = g.pdf(s);
    double num = q * ((1.0 - p) * a1 + p * a1_le) + (1.0 - q) * gs * m.num;
    double den = q * ((1.0 - p) * b1 + p * b1_le) + (1.0 - q) * gs * m.den;
    if (!(den > 0)) throw DomainError("zero posterior mass at this signal");
    return num / den;
}

PriceCurve noisy_price_curve(const ModelParams& params, const NoiseModel& noise, double vhat,
                             int grid_size, bool interior_only) {
    if (grid_size < 3) throw DomainError("noisy_price_curve: grid size must be >= 3");
    double lo = params.dist.lo() + noise.lo(), hi = params.dist.hi() + noise.hi();
    if (interior_only) {
        lo = params.dist.lo() + noise.hi();
        hi = params.dist.hi() + noise.lo();
        if (!(hi > lo)) {
            PriceCurve empty;
            empty.vhat = vhat;
            return empty;
        }
    }
    const double width = noise.hi() - noise.lo();
    std::vector<double> xs;
    for (int i = 0; i < grid_size; ++i) xs.push_back(lo + (hi - lo) * i / double(grid_size - 1));
    // dense window around vhat, where any decline sits
    double wlo = std::max(lo, vhat - 1.5 * width), whi = std::min(hi, vhat + 1.5 * width);
    int dense = std::max(grid_size / 2, 64);
    for (int i = 0; i < dense; ++i) xs.push_back(wlo + (whi - wlo) * i / double(dense - 1));
    if (vhat > lo && vhat < hi) xs.push_back(vhat);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end(), [](double x, double y) { return std::fabs(x - y) < 1e-12; }),
             xs.end());
    xs.erase(std::remove_if(xs.begin(), xs.end(), [&](double x) { return x < lo || x > hi; }), xs.end());

    PriceCurve c;
    c.vhat = vhat;
    for (double s : xs) {
        double price;
        try {
            price = noisy_nondisclosure_price(params, noise, s, vhat);
        } catch (const DomainError&) {
            continue;  // unreachable signal (zero posterior mass)
        }
        c.grid.push_back({s, price, s > vhat ? Branch::gt : Branch::le});
    }
    if (vhat >= params.dist.lo() + noise.lo() && vhat <= params.dist.hi() + noise.hi())
        c.left_limit_at_vhat = c.right_limit_at_vhat =
            noisy_nondisclosure_price(params, noise, vhat, vhat);
    return c;
}

std::vector<DecreasingInterval> detect_nonmonotonicity(const PriceCurve& curve) {
    if (curve.grid.size() < 256)
        throw DomainError("detect_nonmonotonicity needs at least 256 curve points");
    std::vector<DecreasingInterval> out;
    const auto& g = curve.grid;
    bool open = false;
    for (std::size_t k = 0; k + 1 < g.size(); ++k) {
        bool dec = g[k + 1].price < g[k].price - 1e-9;
        if (dec && !open) {
            out.push_back({g[k].s, g[k + 1].s, 0.0});
            open = true;
        } else if (dec) {
            out.back().s_hi = g[k + 1].s;
        } else {
            open = false;
        }
        if (dec) {
            auto& iv = out.back();
            // drop accumulates over the interval
            iv.drop += g[k].price - g[k + 1].price;
        }
    }
    return out;
}

TauHatResult find_tau_hat(const ModelParams& params, NoiseFamily family, double vhat,
                          double tau0, double tau_max, int grid_size) {
    TauHatResult r;
    r.tau_max = tau_max;
    auto nonmonotone = [&](double tau) {
        auto curve =
            noisy_price_curve(params, noise_with_precision(family, tau), vhat, grid_size, true);
        if (curve.grid.size() < 256) return false;
        return !detect_nonmonotonicity(curve).empty();
    };
    double prev = 0.0;
    for (double tau = tau0; tau <= tau_max * (1 + 1e-12); tau *= 2.0) {
        r.scanned.push_back(tau);
        if (nonmonotone(tau)) {
            r.found = true;
            r.tau_upper = tau;
            r.tau_lower = prev;
            break;
        }
        prev = tau;
    }
    if (!r.found) return r;
    if (r.tau_lower <= 0.0) {
        r.tau_hat = r.tau_upper;
        return r;
    }
    // bisection in log tau between the monotone and non-monotone grid neighbours
    double a = r.tau_lower, b = r.tau_upper;
    for (int i = 0; i < 30 && b / a > 1.0 + 1e-6; ++i) {
        double m = std::sqrt(a * b);
        if (nonmonotone(m))
            b = m;
        else
            a = m;
    }
    r.tau_hat = b;
    return r;
}

bool mlrp_monotonicity_check(const NoiseModel& noise, int grid_size) {
    const double a = noise.lo(), b = noise.hi(), w = b - a;
    const int nv = 12;
    std::vector<double> vs;
    for (int i = 0; i < nv; ++i) vs.push_back(w * i / double(nv - 1));
    for (int i1 = 0; i1 < nv; ++i1)
        for (int i2 = 0; i2 < i1; ++i2) {
            double v1 = vs[i1], v2 = vs[i2];
            double last = -std::numeric_limits<double>::infinity();
            for (int k = 0; k < grid_size; ++k) {
                double s = a + (b + w - a) * (k + 0.5) / grid_size;
                double f1 = noise.pdf(s - v1), f2 = noise.pdf(s - v2);
                if (!(f1 > 0 && f2 > 0)) continue;
                double lr = std::log(f1) - std::log(f2);
                if (lr < last - 1e-9) return false;
                last = lr;
            }
        }
    return true;
}

}  // namespace disclosure
