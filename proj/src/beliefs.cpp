#include "disclosure/beliefs.hpp"

#include <cmath>

#include "disclosure/errors.hpp"

namespace disclosure {

namespace {

void check_in_support(const ModelParams& params, double x, const char* what) {
    if (!std::isfinite(x) || x < params.dist.lo() || x > params.dist.hi())
        throw DomainError(std::string(what) + " outside the value support");
}

}  // namespace

void ModelParams::validate() const {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("p must lie in (0, 1)");
    if (!(q >= 0.0 && q <= 1.0)) throw DomainError("q must lie in [0, 1]");
}

ModelParams ModelParams::with_q(double q_new) const {
    ModelParams out = *this;
    out.q = q_new;
    out.validate();
    return out;
}

ModelParams ModelParams::with_p(double p_new) const {
    ModelParams out = *this;
    out.p = p_new;
    out.validate();
    return out;
}

ModelParams make_params(double p, double q, ValueDistribution dist) {
    ModelParams out{p, q, std::move(dist)};
    out.validate();
    return out;
}

double gamma(const ModelParams& params, double s, double vhat) {
    check_in_support(params, s, "signal");
    check_in_support(params, vhat, "threshold");
    return gamma_of(params.p, params.q, params.dist.cdf(vhat), s > vhat);
}

JointBeliefs joint_posterior(const ModelParams& params, double s, double vhat) {
    check_in_support(params, s, "signal");
    check_in_support(params, vhat, "threshold");
    return joint_posterior_of(params.p, params.q, params.dist.cdf(vhat), s > vhat);
}

double informed_given_silence(const ModelParams& params, double vhat) {
    check_in_support(params, vhat, "threshold");
    return informed_given_silence(params.p, params.dist.cdf(vhat));
}

}  // namespace disclosure
