#pragma once

#include <vector>

#include "disclosure/pricing.hpp"

namespace disclosure {

// Additive noise for the noisy-veracious state: s = v + eps.
class NoiseModel {
public:
    explicit NoiseModel(ValueDistribution noise);
    static NoiseModel uniform(double half_width);
    static NoiseModel triangular(double half_width);

    const ValueDistribution& dist() const { return noise_; }
    double precision() const { return 1.0 / noise_.variance(); }
    double lo() const { return noise_.lo(); }
    double hi() const { return noise_.hi(); }
    double pdf(double e) const { return noise_.pdf(e); }
    bool log_concave() const { return noise_.log_concave(); }

private:
    ValueDistribution noise_;
};

enum class NoiseFamily { uniform, triangular };
NoiseModel noise_with_precision(NoiseFamily family, double tau);

// E[v | silence, s] when a veracious signal is v + eps and a non-veracious one is x ~ G
double noisy_nondisclosure_price(const ModelParams& params, const NoiseModel& noise, double s,
                                 double vhat);

// sampled over the reachable signal range, refined near vhat; interior_only keeps signals whose
// noise window lies inside the value support (no boundary updating)
PriceCurve noisy_price_curve(const ModelParams& params, const NoiseModel& noise, double vhat,
                             int grid_size = 512, bool interior_only = false);

struct DecreasingInterval {
    double s_lo = 0.0;
    double s_hi = 0.0;
    double drop = 0.0;  // price(s_lo) - price(s_hi)
};

std::vector<DecreasingInterval> detect_nonmonotonicity(const PriceCurve& curve);

struct TauHatResult {
    bool found = false;
    double tau_hat = 0.0;    // refined first non-monotone precision
    double tau_lower = 0.0;  // last monotone grid precision
    double tau_upper = 0.0;  // first non-monotone grid precision
    double tau_max = 0.0;
    std::vector<double> scanned;
};

// scans the interior signal range only, so support-boundary declines do not count
TauHatResult find_tau_hat(const ModelParams& params, NoiseFamily family, double vhat,
                          double tau0 = 1.0, double tau_max = 1e6, int grid_size = 512);

// likelihood ratio f(s - v1) / f(s - v2), v1 > v2, nondecreasing in s wherever both are positive
bool mlrp_monotonicity_check(const NoiseModel& noise, int grid_size = 400);

}  // namespace disclosure
