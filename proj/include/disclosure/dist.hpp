#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace disclosure {

enum class DistKind { uniform, truncated_normal, beta, piecewise_linear };

std::string to_string(DistKind kind);

struct LogConcavityReport {
    bool log_concave = true;
    double max_violation = 0.0;  // largest positive second difference of log g
    int grid_size = 0;
};

// Firm-value prior G on a bounded support. Immutable once built.
class ValueDistribution {
public:
    static ValueDistribution uniform(double lo, double hi);
    // parent normal N(mean, sd^2) truncated to [lo, hi]
    static ValueDistribution truncated_normal(double mean, double sd, double lo, double hi);
    // Beta(alpha, beta) rescaled to [lo, hi]
    static ValueDistribution beta(double alpha, double beta, double lo = 0.0, double hi = 1.0);
    // density values at the knots, linear in between; normalized to integrate to 1
    static ValueDistribution piecewise_linear(std::vector<double> knots, std::vector<double> density);
    // config entry point; piecewise-linear takes densities at equally spaced knots on [lo, hi]
    static ValueDistribution from_spec(std::string_view kind, const std::vector<double>& params,
                                       double lo, double hi);

    DistKind kind() const { return kind_; }
    const std::vector<double>& parameters() const { return params_; }
    double lo() const { return lo_; }
    double hi() const { return hi_; }

    double pdf(double v) const;
    double cdf(double v) const;
    double mean() const { return mean_; }
    double variance() const;
    // M(t) = integral of v g(v) over [lo, t]
    double partial_moment(double t) const;
    // E[v | v <= t]
    double truncated_mean_below(double t) const;
    double quantile(double u) const;

    std::vector<double> sample(std::uint64_t seed, std::size_t n) const;
    std::vector<double> sample(std::mt19937_64& rng, std::size_t n) const;

    LogConcavityReport check_log_concavity(int grid_size = 512) const;
    // warning flag set at construction: solvers carry no uniqueness guarantee when false
    bool log_concave() const { return log_concave_; }

    // interior points where g is not smooth (useful as quadrature breakpoints)
    std::vector<double> kinks() const;

private:
    ValueDistribution() = default;
    void finish();
    double raw_cdf(double v) const;
    double raw_partial(double t) const;

    DistKind kind_ = DistKind::uniform;
    std::vector<double> params_;
    double lo_ = 0.0;
    double hi_ = 1.0;
    double mean_ = 0.5;
    bool log_concave_ = true;

    // truncated normal
    double z_lo_ = 0.0, z_hi_ = 0.0, mass_ = 1.0;
    // beta
    double log_beta_fn_ = 0.0;
    // piecewise linear
    std::vector<double> knots_, dens_, cum_cdf_, cum_mom_;
};

}  // namespace disclosure
