#pragma once

#include "disclosure/dist.hpp"

namespace disclosure {

struct ModelParams {
    double p = 0.5;  // probability the manager is informed
    double q = 0.5;  // prior probability the signal is veracious
    ValueDistribution dist = ValueDistribution::uniform(0.0, 1.0);

    // throws DomainError unless 0 < p < 1 and 0 <= q <= 1
    void validate() const;
    ModelParams with_q(double q_new) const;
    ModelParams with_p(double p_new) const;
};

ModelParams make_params(double p, double q, ValueDistribution dist);

// Pr(kappa, phi | s, no disclosure) for a conjectured threshold vhat.
template <class T>
struct JointBeliefsT {
    T pr_IV{};
    T pr_IN{};
    T pr_UV{};
    T pr_UN{};
    T gamma{};
};
using JointBeliefs = JointBeliefsT<double>;

template <class T>
struct MarginalsT {
    T pr_informed{};
    T pr_veracious{};
};
using Marginals = MarginalsT<double>;

// Core formulas; G is G(vhat), above is the indicator s > vhat.
template <class T>
T gamma_of(const T& p, const T& q, const T& G, bool above) {
    T one(1);
    T ind = above ? one : T(0);
    return q * (one - ind * p) + (one - q) * (one - p + p * G);
}

template <class T>
JointBeliefsT<T> joint_posterior_of(const T& p, const T& q, const T& G, bool above) {
    T one(1);
    JointBeliefsT<T> b;
    b.gamma = gamma_of(p, q, G, above);
    b.pr_IV = above ? T(0) : q * p / b.gamma;
    b.pr_IN = (one - q) * p * G / b.gamma;
    b.pr_UV = q * (one - p) / b.gamma;
    b.pr_UN = (one - q) * (one - p) / b.gamma;
    return b;
}

template <class T>
MarginalsT<T> marginals(const JointBeliefsT<T>& b) {
    return {b.pr_IV + b.pr_IN, b.pr_IV + b.pr_UV};
}

// Pr(I | no disclosure) when the signal is ignored.
template <class T>
T informed_given_silence(const T& p, const T& G) {
    T one(1);
    return p * G / (one - p + p * G);
}

double gamma(const ModelParams& params, double s, double vhat);
JointBeliefs joint_posterior(const ModelParams& params, double s, double vhat);
double informed_given_silence(const ModelParams& params, double vhat);

}  // namespace disclosure
