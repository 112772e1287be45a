#pragma once

#include <vector>

#include "disclosure/beliefs.hpp"

namespace disclosure {

enum class Branch { le, gt };

const char* to_string(Branch b);

struct PricePoint {
    double s = 0.0;
    double price = 0.0;
    Branch branch = Branch::le;
};

struct PriceCurve {
    double vhat = 0.0;
    std::vector<PricePoint> grid;  // strictly increasing in s
    double left_limit_at_vhat = 0.0;
    double right_limit_at_vhat = 0.0;
};

double disclosure_price(double v);

// Silent-manager moments for a silent set {v <= vbar}: N = (1-p)mu + p M(vbar), D = 1-p+pG(vbar)
struct SilentMass {
    double num = 0.0;
    double den = 1.0;
};
SilentMass silent_mass(const ModelParams& params, double vbar);

double benchmark_price(const ModelParams& params, double vhat);

// H(s, vbar, theta): price at signal s when the informed manager stays silent for v <= vbar and
// a veracious signal s is withheld with probability 1 - theta.
double auxiliary_price(const ModelParams& params, double s, double vbar, double theta);

double nondisclosure_price(const ModelParams& params, double s, double vhat);
// one branch of the nondisclosure price, whatever the side of s
double nondisclosure_price_branch(const ModelParams& params, double s, double vhat, Branch b);
// at s == vhat the indifferent type stays silent with probability silent_prob (explorer only)
double nondisclosure_price_tiebreak(const ModelParams& params, double s, double vhat,
                                    double silent_prob);

// E[P(s, no disclosure) | v] for a manager who stays silent at date 2
double expected_nondisclosure_price(const ModelParams& params, double v, double vhat);
// integral of P(x, no disclosure) g(x) over the support
double integrated_nondisclosure_price(const ModelParams& params, double vhat);
// the same integral by quadrature split at vhat
double integrated_nondisclosure_price_quadrature(const ModelParams& params, double vhat);

PriceCurve price_curve(const ModelParams& params, double vhat, int grid_size);

// investors that freeze beliefs at Pr(phi) Pr(kappa | silence)
double naive_price(const ModelParams& params, double s, double vhat);

// Pr(V | I, s <= vhat, silence)
double pi_weight(const ModelParams& params, double vhat);

}  // namespace disclosure
