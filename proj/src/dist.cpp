#include "disclosure/dist.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/special_functions/beta.hpp>

#include "disclosure/errors.hpp"
#include "disclosure/quadrature.hpp"

namespace disclosure {

namespace {

double norm_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }
double norm_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw DomainError(std::string(what) + ": non-finite argument");
}

void require_support(double lo, double hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
        throw DomainError("support must satisfy v_min < v_max");
}

}  // namespace

std::string to_string(DistKind kind) {
    switch (kind) {
        case DistKind::uniform: return "uniform";
        case DistKind::truncated_normal: return "truncated-normal";
        case DistKind::beta: return "beta";
        case DistKind::piecewise_linear: return "piecewise-linear";
    }
    return "unknown";
}

ValueDistribution ValueDistribution::uniform(double lo, double hi) {
    require_support(lo, hi);
    ValueDistribution d;
    d.kind_ = DistKind::uniform;
    d.lo_ = lo;
    d.hi_ = hi;
    d.finish();
    return d;
}

ValueDistribution ValueDistribution::truncated_normal(double mean, double sd, double lo, double hi) {
    require_support(lo, hi);
    if (!std::isfinite(mean) || !(sd > 0) || !std::isfinite(sd))
        throw DomainError("truncated normal needs finite mean and sd > 0");
    ValueDistribution d;
    d.kind_ = DistKind::truncated_normal;
    d.params_ = {mean, sd};
    d.lo_ = lo;
    d.hi_ = hi;
    d.z_lo_ = (lo - mean) / sd;
    d.z_hi_ = (hi - mean) / sd;
    d.mass_ = norm_cdf(d.z_hi_) - norm_cdf(d.z_lo_);
    if (!(d.mass_ > 0)) throw DomainError("truncated normal has no mass on the support");
    d.finish();
    return d;
}

ValueDistribution ValueDistribution::beta(double alpha, double beta, double lo, double hi) {
    require_support(lo, hi);
    if (!(alpha > 0) || !(beta > 0) || !std::isfinite(alpha) || !std::isfinite(beta))
        throw DomainError("beta needs alpha, beta > 0");
    ValueDistribution d;
    d.kind_ = DistKind::beta;
    d.params_ = {alpha, beta};
    d.lo_ = lo;
    d.hi_ = hi;
    d.log_beta_fn_ = std::lgamma(alpha) + std::lgamma(beta) - std::lgamma(alpha + beta);
    d.finish();
    return d;
}

ValueDistribution ValueDistribution::piecewise_linear(std::vector<double> knots,
                                                      std::vector<double> density) {
    if (knots.size() < 2 || knots.size() != density.size())
        throw DomainError("piecewise-linear density needs matching knots and values (>= 2)");
    for (std::size_t i = 0; i < knots.size(); ++i) {
        require_finite(knots[i], "piecewise-linear knot");
        if (!(density[i] >= 0) || !std::isfinite(density[i]))
            throw DomainError("piecewise-linear density values must be finite and >= 0");
        if (i > 0 && !(knots[i] > knots[i - 1]))
            throw DomainError("piecewise-linear knots must be strictly increasing");
    }
    double area = 0.0;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i)
        area += 0.5 * (density[i] + density[i + 1]) * (knots[i + 1] - knots[i]);
    if (!(area > 0)) throw DomainError("piecewise-linear density has zero mass");
    for (double& y : density) y /= area;

    ValueDistribution d;
    d.kind_ = DistKind::piecewise_linear;
    d.lo_ = knots.front();
    d.hi_ = knots.back();
    d.params_ = density;
    d.knots_ = std::move(knots);
    d.dens_ = std::move(density);
    d.cum_cdf_.assign(d.knots_.size(), 0.0);
    d.cum_mom_.assign(d.knots_.size(), 0.0);
    for (std::size_t i = 0; i + 1 < d.knots_.size(); ++i) {
        double x0 = d.knots_[i], x1 = d.knots_[i + 1];
        double y0 = d.dens_[i], y1 = d.dens_[i + 1];
        double w = x1 - x0;
        d.cum_cdf_[i + 1] = d.cum_cdf_[i] + 0.5 * (y0 + y1) * w;
        // integral of v * (y0 + m (v - x0)) over the segment
        double m = (y1 - y0) / w;
        double seg = y0 * (x1 * x1 - x0 * x0) / 2.0 +
                     m * ((x1 * x1 * x1 - x0 * x0 * x0) / 3.0 - x0 * (x1 * x1 - x0 * x0) / 2.0);
        d.cum_mom_[i + 1] = d.cum_mom_[i] + seg;
    }
    d.finish();
    return d;
}

ValueDistribution ValueDistribution::from_spec(std::string_view kind,
                                               const std::vector<double>& params, double lo,
                                               double hi) {
    auto need = [&](std::size_t n) {
        if (params.size() != n)
            throw DomainError(std::string(kind) + " expects " + std::to_string(n) + " parameters");
    };
    if (kind == "uniform") {
        need(0);
        return uniform(lo, hi);
    }
    if (kind == "truncated-normal") {
        need(2);
        return truncated_normal(params[0], params[1], lo, hi);
    }
    if (kind == "beta") {
        need(2);
        return beta(params[0], params[1], lo, hi);
    }
    if (kind == "piecewise-linear") {
        if (params.size() < 2) throw DomainError("piecewise-linear expects >= 2 density values");
        require_support(lo, hi);
        std::vector<double> knots(params.size());
        for (std::size_t i = 0; i < knots.size(); ++i)
            knots[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(knots.size() - 1);
        knots.back() = hi;
        return piecewise_linear(std::move(knots), params);
    }
    throw DomainError("unknown distribution kind '" + std::string(kind) + "'");
}

void ValueDistribution::finish() {
    mean_ = raw_partial(hi_);
    log_concave_ = check_log_concavity(512).log_concave;
}

double ValueDistribution::pdf(double v) const {
    require_finite(v, "pdf");
    if (v < lo_ || v > hi_) return 0.0;
    switch (kind_) {
        case DistKind::uniform: return 1.0 / (hi_ - lo_);
        case DistKind::truncated_normal: {
            double s = params_[1];
            return norm_pdf((v - params_[0]) / s) / (s * mass_);
        }
        case DistKind::beta: {
            double w = hi_ - lo_;
            double x = (v - lo_) / w;
            double a = params_[0], b = params_[1];
            return std::pow(x, a - 1.0) * std::pow(1.0 - x, b - 1.0) * std::exp(-log_beta_fn_) / w;
        }
        case DistKind::piecewise_linear: {
            auto it = std::upper_bound(knots_.begin(), knots_.end(), v);
            std::size_t i = it == knots_.begin() ? 0 : static_cast<std::size_t>(it - knots_.begin()) - 1;
            if (i + 1 >= knots_.size()) return dens_.back();
            double t = (v - knots_[i]) / (knots_[i + 1] - knots_[i]);
            return dens_[i] + t * (dens_[i + 1] - dens_[i]);
        }
    }
    return 0.0;
}

double ValueDistribution::raw_cdf(double v) const {
    switch (kind_) {
        case DistKind::uniform: return (v - lo_) / (hi_ - lo_);
        case DistKind::truncated_normal:
            return (norm_cdf((v - params_[0]) / params_[1]) - norm_cdf(z_lo_)) / mass_;
        case DistKind::beta:
            return boost::math::ibeta(params_[0], params_[1], (v - lo_) / (hi_ - lo_));
        case DistKind::piecewise_linear: {
            auto it = std::upper_bound(knots_.begin(), knots_.end(), v);
            std::size_t i = static_cast<std::size_t>(it - knots_.begin()) - 1;
            if (i + 1 >= knots_.size()) return 1.0;
            double d = v - knots_[i];
            double m = (dens_[i + 1] - dens_[i]) / (knots_[i + 1] - knots_[i]);
            return cum_cdf_[i] + dens_[i] * d + 0.5 * m * d * d;
        }
    }
    return 0.0;
}

double ValueDistribution::cdf(double v) const {
    require_finite(v, "cdf");
    if (v <= lo_) return 0.0;
    if (v >= hi_) return 1.0;
    return std::clamp(raw_cdf(v), 0.0, 1.0);
}

double ValueDistribution::raw_partial(double t) const {
    if (t <= lo_) return 0.0;
    t = std::min(t, hi_);
    switch (kind_) {
        case DistKind::uniform: return (t * t - lo_ * lo_) / (2.0 * (hi_ - lo_));
        case DistKind::truncated_normal: {
            double m = params_[0], s = params_[1];
            double zt = (t - m) / s;
            return (m * (norm_cdf(zt) - norm_cdf(z_lo_)) - s * (norm_pdf(zt) - norm_pdf(z_lo_))) / mass_;
        }
        case DistKind::beta: {
            double a = params_[0], b = params_[1];
            double x = (t - lo_) / (hi_ - lo_);
            return lo_ * boost::math::ibeta(a, b, x) +
                   (hi_ - lo_) * a / (a + b) * boost::math::ibeta(a + 1.0, b, x);
        }
        case DistKind::piecewise_linear: {
            auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
            std::size_t i = static_cast<std::size_t>(it - knots_.begin()) - 1;
            if (i + 1 >= knots_.size()) return cum_mom_.back();
            double x0 = knots_[i], y0 = dens_[i];
            double m = (dens_[i + 1] - y0) / (knots_[i + 1] - x0);
            return cum_mom_[i] + y0 * (t * t - x0 * x0) / 2.0 +
                   m * ((t * t * t - x0 * x0 * x0) / 3.0 - x0 * (t * t - x0 * x0) / 2.0);
        }
    }
    return 0.0;
}

double ValueDistribution::partial_moment(double t) const {
    require_finite(t, "partial_moment");
    return raw_partial(t);
}

double ValueDistribution::truncated_mean_below(double t) const {
    require_finite(t, "truncated_mean_below");
    if (t < lo_ || t > hi_) throw DomainError("truncated_mean_below: t outside support");
    double g = cdf(t);
    if (g < 1e-12) {
        if (t == lo_) throw DomainError("truncated_mean_below: G(t) = 0");
        return t;
    }
    return std::clamp(raw_partial(t) / g, lo_, t);
}

double ValueDistribution::variance() const {
    switch (kind_) {
        case DistKind::uniform: return (hi_ - lo_) * (hi_ - lo_) / 12.0;
        case DistKind::truncated_normal: {
            double s = params_[1];
            double pa = norm_pdf(z_lo_), pb = norm_pdf(z_hi_);
            double r = (pa - pb) / mass_;
            return s * s * (1.0 + (z_lo_ * pa - z_hi_ * pb) / mass_ - r * r);
        }
        case DistKind::beta: {
            double a = params_[0], b = params_[1], w = hi_ - lo_;
            return w * w * a * b / ((a + b) * (a + b) * (a + b + 1.0));
        }
        case DistKind::piecewise_linear:
            return quad::integrate([this](double v) { return (v - mean_) * (v - mean_) * pdf(v); },
                                   lo_, hi_, kinks());
    }
    return 0.0;
}

double ValueDistribution::quantile(double u) const {
    require_finite(u, "quantile");
    if (u <= 0.0) return lo_;
    if (u >= 1.0) return hi_;
    switch (kind_) {
        case DistKind::uniform: return lo_ + u * (hi_ - lo_);
        case DistKind::beta:
            return lo_ + (hi_ - lo_) * boost::math::ibeta_inv(params_[0], params_[1], u);
        case DistKind::piecewise_linear: {
            auto it = std::upper_bound(cum_cdf_.begin(), cum_cdf_.end(), u);
            std::size_t i = std::min(static_cast<std::size_t>(it - cum_cdf_.begin()) - 1,
                                     knots_.size() - 2);
            double r = u - cum_cdf_[i];
            double y0 = dens_[i];
            double m = (dens_[i + 1] - y0) / (knots_[i + 1] - knots_[i]);
            double d = std::fabs(m) < 1e-14 ? r / y0 : (-y0 + std::sqrt(std::max(0.0, y0 * y0 + 2.0 * m * r))) / m;
            return std::clamp(knots_[i] + d, knots_[i], knots_[i + 1]);
        }
        case DistKind::truncated_normal: break;
    }
    // monotone bisection on the CDF
    double a = lo_, b = hi_;
    for (int i = 0; i < 200 && b - a > 1e-15 * std::max(1.0, std::fabs(b)); ++i) {
        double m = 0.5 * (a + b);
        if (raw_cdf(m) < u)
            a = m;
        else
            b = m;
    }
    return 0.5 * (a + b);
}

std::vector<double> ValueDistribution::sample(std::mt19937_64& rng, std::size_t n) const {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> out(n);
    for (auto& v : out) v = quantile(unif(rng));
    return out;
}

std::vector<double> ValueDistribution::sample(std::uint64_t seed, std::size_t n) const {
    std::mt19937_64 rng(seed);
    return sample(rng, n);
}

LogConcavityReport ValueDistribution::check_log_concavity(int grid_size) const {
    if (grid_size < 16) throw DomainError("check_log_concavity: grid size must be >= 16");
    LogConcavityReport rep;
    rep.grid_size = grid_size;
    double h = (hi_ - lo_) / grid_size;
    std::vector<double> lg(static_cast<std::size_t>(grid_size));
    std::vector<bool> pos(lg.size());
    for (int i = 0; i < grid_size; ++i) {
        double g = pdf(lo_ + (i + 0.5) * h);
        pos[i] = g > 0;
        lg[i] = pos[i] ? std::log(g) : 0.0;
    }
    for (std::size_t i = 1; i + 1 < lg.size(); ++i) {
        if (!pos[i - 1] || !pos[i] || !pos[i + 1]) continue;
        double d2 = lg[i - 1] - 2.0 * lg[i] + lg[i + 1];
        rep.max_violation = std::max(rep.max_violation, d2);
    }
    rep.log_concave = rep.max_violation <= 1e-8;
    return rep;
}

std::vector<double> ValueDistribution::kinks() const {
    if (kind_ != DistKind::piecewise_linear) return {};
    return std::vector<double>(knots_.begin() + 1, knots_.end() - 1);
}

}  // namespace disclosure
