#include <doctest.h>

#include <cmath>

#include "disclosure/extensions.hpp"
#include "disclosure/equilibrium.hpp"

using namespace disclosure;

namespace {
ModelParams uni(double p, double q) { return make_params(p, q, ValueDistribution::uniform(0.0, 1.0)); }
}  // namespace

TEST_SUITE("extensions") {

TEST_CASE("noise precision") {
    CHECK(NoiseModel::uniform(0.1).precision() == doctest::Approx(3.0 / 0.01));
    CHECK(NoiseModel::triangular(0.1).precision() == doctest::Approx(6.0 / 0.01));
    CHECK(noise_with_precision(NoiseFamily::uniform, 300.0).hi() == doctest::Approx(0.1));
}

TEST_CASE("log-concave noise satisfies MLRP") {
    CHECK(mlrp_monotonicity_check(NoiseModel::uniform(0.1)));
    CHECK(mlrp_monotonicity_check(NoiseModel::triangular(0.1)));
    NoiseModel arcsine(ValueDistribution::beta(0.5, 0.5, -0.1, 0.1));
    CHECK_FALSE(arcsine.log_concave());
    CHECK_FALSE(mlrp_monotonicity_check(arcsine));
}

TEST_CASE("tiny noise recovers the noiseless price") {
    auto m = uni(0.6, 0.15);
    auto noise = NoiseModel::uniform(1e-6);
    for (double s : {0.2, 0.35, 0.6, 0.8})
        CHECK(noisy_nondisclosure_price(m, noise, s, 0.41) ==
              doctest::Approx(nondisclosure_price(m, s, 0.41)).epsilon(1e-7));
}

TEST_CASE("fully veracious noisy signals give a monotone price") {
    for (auto noise : {NoiseModel::uniform(0.085), NoiseModel::triangular(0.1)}) {
        auto c = noisy_price_curve(uni(0.6, 1.0), noise, 0.41, 512);
        CHECK(detect_nonmonotonicity(c).empty());
    }
}

TEST_CASE("precise noise below the benchmark never bends the price") {
    auto m = uni(0.6, 0.3);
    auto r = find_tau_hat(m, NoiseFamily::uniform, 0.3, 1.0, 1e5, 256);
    CHECK_FALSE(r.found);
}

TEST_CASE("precise noise above the benchmark bends the price") {
    auto m = uni(0.5, 0.3);
    auto r = find_tau_hat(m, NoiseFamily::uniform, 0.7, 1.0, 1e5, 256);
    REQUIRE(r.found);
    CHECK(r.tau_hat >= r.tau_lower);
    CHECK(r.tau_hat <= r.tau_upper);
    auto c = noisy_price_curve(m, noise_with_precision(NoiseFamily::uniform, r.tau_upper * 4), 0.7, 512, true);
    CHECK_FALSE(detect_nonmonotonicity(c).empty());
}

}
