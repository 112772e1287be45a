#include "disclosure/pricing.hpp"

#include <algorithm>
#include <cmath>

#include "disclosure/errors.hpp"
#include "disclosure/quadrature.hpp"

namespace disclosure {

namespace {

void check_in_support(const ModelParams& params, double x, const char* what) {
    if (!std::isfinite(x) || x < params.dist.lo() || x > params.dist.hi())
        throw DomainError(std::string(what) + " outside the value support");
}

double clamp_support(const ModelParams& params, double x) {
    return std::clamp(x, params.dist.lo(), params.dist.hi());
}

}  // namespace

const char* to_string(Branch b) { return b == Branch::le ? "le" : "gt"; }

double disclosure_price(double v) { return v; }

SilentMass silent_mass(const ModelParams& params, double vbar) {
    const double p = params.p;
    vbar = clamp_support(params, vbar);
    return {(1.0 - p) * params.dist.mean() + p * params.dist.partial_moment(vbar),
            1.0 - p + p * params.dist.cdf(vbar)};
}

double benchmark_price(const ModelParams& params, double vhat) {
    check_in_support(params, vhat, "threshold");
    auto m = silent_mass(params, vhat);
    return m.num / m.den;
}

double auxiliary_price(const ModelParams& params, double s, double vbar, double theta) {
    auto m = silent_mass(params, vbar);
    double a = params.q * (1.0 - params.p * theta);
    double b = 1.0 - params.q;
    return (a * s + b * m.num) / (a + b * m.den);
}

double nondisclosure_price_branch(const ModelParams& params, double s, double vhat, Branch br) {
    check_in_support(params, s, "signal");
    check_in_support(params, vhat, "threshold");
    return auxiliary_price(params, s, vhat, br == Branch::gt ? 1.0 : 0.0);
}

double nondisclosure_price(const ModelParams& params, double s, double vhat) {
    return nondisclosure_price_branch(params, s, vhat, s > vhat ? Branch::gt : Branch::le);
}

double nondisclosure_price_tiebreak(const ModelParams& params, double s, double vhat,
                                    double silent_prob) {
    if (!(silent_prob >= 0.0 && silent_prob <= 1.0))
        throw DomainError("tiebreak probability must lie in [0, 1]");
    if (s != vhat) return nondisclosure_price(params, s, vhat);
    return auxiliary_price(params, s, vhat, 1.0 - silent_prob);
}

double integrated_nondisclosure_price(const ModelParams& params, double vhat) {
    check_in_support(params, vhat, "threshold");
    const double p = params.p, q = params.q;
    const auto& d = params.dist;
    auto m = silent_mass(params, vhat);
    double G = d.cdf(vhat), M = d.partial_moment(vhat);
    double g_le = q + (1.0 - q) * m.den;
    double g_gt = q * (1.0 - p) + (1.0 - q) * m.den;
    double lower = (q * M + (1.0 - q) * m.num * G) / g_le;
    double upper = (q * (1.0 - p) * (d.mean() - M) + (1.0 - q) * m.num * (1.0 - G)) / g_gt;
    return lower + upper;
}

double integrated_nondisclosure_price_quadrature(const ModelParams& params, double vhat) {
    auto f = [&](double x) { return nondisclosure_price(params, x, vhat) * params.dist.pdf(x); };
    std::vector<double> cuts = params.dist.kinks();
    cuts.push_back(vhat);
    return quad::integrate(f, params.dist.lo(), params.dist.hi(), cuts);
}

double expected_nondisclosure_price(const ModelParams& params, double v, double vhat) {
    check_in_support(params, v, "value");
    double own = params.q > 0.0 ? nondisclosure_price(params, v, vhat) : 0.0;
    double noise = params.q < 1.0 ? integrated_nondisclosure_price(params, vhat) : 0.0;
    return params.q * own + (1.0 - params.q) * noise;
}

PriceCurve price_curve(const ModelParams& params, double vhat, int grid_size) {
    if (grid_size < 3) throw DomainError("price_curve: grid size must be >= 3");
    check_in_support(params, vhat, "threshold");
    const double lo = params.dist.lo(), hi = params.dist.hi();
    std::vector<double> xs;
    xs.reserve(static_cast<std::size_t>(grid_size) + 2);
    for (int i = 0; i < grid_size; ++i)
        xs.push_back(lo + (hi - lo) * i / static_cast<double>(grid_size - 1));
    xs.back() = hi;
    xs.push_back(vhat);
    if (vhat + 5e-7 <= hi) xs.push_back(vhat + 5e-7);
    if (vhat - 5e-7 >= lo) xs.push_back(vhat - 5e-7);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    PriceCurve c;
    c.vhat = vhat;
    for (double s : xs) {
        Branch b = s > vhat ? Branch::gt : Branch::le;
        c.grid.push_back({s, nondisclosure_price_branch(params, s, vhat, b), b});
    }
    c.left_limit_at_vhat = nondisclosure_price_branch(params, vhat, vhat, Branch::le);
    c.right_limit_at_vhat = nondisclosure_price_branch(params, vhat, vhat, Branch::gt);
    return c;
}

double naive_price(const ModelParams& params, double s, double vhat) {
    check_in_support(params, s, "signal");
    // Pr(U|silence) mu + Pr(I|silence) E[v | v <= vhat] is the benchmark price
    return params.q * s + (1.0 - params.q) * benchmark_price(params, vhat);
}

double pi_weight(const ModelParams& params, double vhat) {
    check_in_support(params, vhat, "threshold");
    double G = params.dist.cdf(vhat);
    return params.q / (params.q + (1.0 - params.q) * G);
}

}  // namespace disclosure
