#include "disclosure/equilibrium.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>

#include "disclosure/errors.hpp"
#include "disclosure/quadrature.hpp"
#include "disclosure/root_finding.hpp"

namespace disclosure {

std::string to_string(EquilibriumKind kind) {
    switch (kind) {
        case EquilibriumKind::benchmark: return "benchmark";
        case EquilibriumKind::early: return "early";
        case EquilibriumKind::late: return "late";
        case EquilibriumKind::dynamic: return "dynamic";
        case EquilibriumKind::frequent: return "frequent";
    }
    return "unknown";
}

std::string to_string(LateRegime r) {
    switch (r) {
        case LateRegime::theta0: return "theta0";
        case LateRegime::theta1: return "theta1";
        case LateRegime::mixed: return "mixed";
    }
    return "unknown";
}

namespace {

void note_prior(const ModelParams& params, EquilibriumResult& r) {
    if (!params.dist.log_concave())
        r.regime_notes.push_back("prior not log-concave: uniqueness not guaranteed");
}

EquilibriumResult from_root(EquilibriumKind kind, const RootResult& rr) {
    EquilibriumResult r;
    r.kind = kind;
    r.threshold = rr.root;
    r.residual = rr.residual;
    r.iterations = rr.iterations;
    r.bracket_lo = rr.lo;
    r.bracket_hi = rr.hi;
    return r;
}

}  // namespace

double benchmark_indifference(const ModelParams& params, double v) {
    return v - benchmark_price(params, v);
}

double early_indifference(const ModelParams& params, double v) {
    return v - expected_nondisclosure_price(params, v, v);
}

double frequent_indifference(const ModelParams& params, double delta, double v) {
    double w = delta + delta * delta + delta * delta * delta;
    return benchmark_indifference(params, v) + w * early_indifference(params, v);
}

EquilibriumResult solve_benchmark(const ModelParams& params) {
    params.validate();
    auto f = [&](double v) { return benchmark_indifference(params, v); };
    auto r = from_root(EquilibriumKind::benchmark,
                       find_root(f, params.dist.lo(), params.dist.mean()));
    note_prior(params, r);
    return r;
}

EquilibriumResult solve_early(const ModelParams& params) {
    params.validate();
    const double lo = params.dist.lo(), hi = params.dist.hi(), mu = params.dist.mean();
    double vb = solve_benchmark(params).threshold;
    auto f = [&](double v) { return early_indifference(params, v); };
    double a = std::min(vb + 1e-12, mu);
    std::vector<std::string> notes;
    RootResult rr;
    if (f(a) > 0.0 && f(vb) <= 0.0) {
        // v^E within 1e-12 of v^B (q near 0)
        rr = find_root(f, vb, a);
    } else if (brackets_root(f, a, mu)) {
        rr = find_root(f, a, mu);
    } else if (brackets_root(f, a, hi)) {
        notes.push_back("early bracket widened to v_max");
        rr = find_root(f, a, hi);
    } else if (f(hi) < 0) {
        notes.push_back("never disclose early: v^E = v_max");
        rr.root = hi;
        rr.residual = std::fabs(f(hi));
        rr.lo = a;
        rr.hi = hi;
    } else {
        std::ostringstream msg;
        msg << "solve_early: no sign change on [" << lo << ", " << hi << "]";
        throw SolverError(msg.str());
    }
    auto r = from_root(EquilibriumKind::early, rr);
    r.regime_notes = notes;
    note_prior(params, r);
    return r;
}

EquilibriumResult solve_frequent(const ModelParams& params, double delta) {
    params.validate();
    if (!(delta >= 0.0 && delta <= 1.0)) throw DomainError("delta must lie in [0, 1]");
    auto f = [&](double v) { return frequent_indifference(params, delta, v); };
    auto r = from_root(EquilibriumKind::frequent,
                       find_root(f, params.dist.lo(), params.dist.mean()));
    note_prior(params, r);
    return r;
}

namespace {

// price fixed point P = H(s, min(P + c, v_trunc), theta)
RootResult late_price_fixed_point(const ModelParams& params, double s, double c_late,
                                  double v_trunc, double theta) {
    auto f = [&](double P) {
        return P - auxiliary_price(params, s, std::min(P + c_late, v_trunc), theta);
    };
    // tight tolerance keeps the integrand of the dynamic indifference smooth for quadrature
    return find_root(f, params.dist.lo(), params.dist.hi(), {1e-14, 1e-14, 300});
}

}  // namespace

double late_branch_threshold(const ModelParams& params, double s, int theta) {
    return late_price_fixed_point(params, s, 0.0, params.dist.hi(), theta).root;
}

LatePoint solve_late(const ModelParams& params, double s, double v_benchmark) {
    if (!std::isfinite(s) || s < params.dist.lo() || s > params.dist.hi())
        throw DomainError("solve_late: signal outside support");
    LatePoint pt;
    pt.s = s;
    if (s == v_benchmark) {
        pt.v_late = pt.price = v_benchmark;
        pt.regime = LateRegime::theta0;
        return pt;
    }
    int theta = s > v_benchmark ? 1 : 0;
    RootResult rr;
    try {
        rr = late_price_fixed_point(params, s, 0.0, params.dist.hi(), theta);
    } catch (const SolverError& e) {
        std::ostringstream msg;
        msg << "solve_late at s=" << s << ": " << e.what();
        throw SolverError(msg.str());
    }
#ifndef NDEBUG
    // both-branch consistency: the veracious type at v = s withholds iff theta = 0
    if (theta == 0)
        assert(s <= rr.root + 1e-9);
    else
        assert(s > rr.root - 1e-9);
#endif
    pt.v_late = pt.price = rr.root;
    pt.regime = theta ? LateRegime::theta1 : LateRegime::theta0;
    pt.residual = rr.residual;
    pt.iterations = rr.iterations;
    return pt;
}

LatePoint solve_late(const ModelParams& params, double s) {
    params.validate();
    return solve_late(params, s, solve_benchmark(params).threshold);
}

ThresholdFunction solve_late_curve(const ModelParams& params, int grid_size) {
    params.validate();
    if (grid_size < 32) throw DomainError("solve_late_curve: grid size must be >= 32");
    const double lo = params.dist.lo(), hi = params.dist.hi();
    double vb = solve_benchmark(params).threshold;
    std::vector<double> xs;
    for (int i = 0; i < grid_size; ++i) xs.push_back(lo + (hi - lo) * i / double(grid_size - 1));
    xs.back() = hi;
    xs.push_back(vb);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    ThresholdFunction tf;
    tf.kink_at = vb;
    for (double s : xs) tf.grid.push_back(solve_late(params, s, vb));
    return tf;
}

LatePoint late_threshold_with_cost(const ModelParams& params, double s, double c_late,
                                   double v_trunc) {
    LatePoint pt;
    pt.s = s;
    auto finish = [&](const RootResult& rr, LateRegime reg) {
        pt.price = rr.root;
        pt.v_late = rr.root + c_late;
        pt.residual = rr.residual;
        pt.iterations += rr.iterations;
        pt.regime = reg;
        return pt;
    };
    if (s > v_trunc) return finish(late_price_fixed_point(params, s, c_late, v_trunc, 1.0), LateRegime::theta1);
    auto r0 = late_price_fixed_point(params, s, c_late, v_trunc, 0.0);
    // prefer silence of the veracious type whenever that is self-consistent
    if (s <= r0.root + c_late) return finish(r0, LateRegime::theta0);
    pt.iterations = r0.iterations;
    auto r1 = late_price_fixed_point(params, s, c_late, v_trunc, 1.0);
    if (s > r1.root + c_late) return finish(r1, LateRegime::theta1);
    pt.iterations += r1.iterations;
    pt.price = s - c_late;
    pt.v_late = s;
    pt.regime = LateRegime::mixed;
    return pt;
}

namespace {

// signal where s - c = P_theta(s); P_theta has slope < 1 so the gap is increasing
std::optional<double> theta_switch(const ModelParams& params, double c_late, double v_trunc,
                                   double theta, double hi) {
    auto f = [&](double s) {
        return s - c_late - late_price_fixed_point(params, s, c_late, v_trunc, theta).root;
    };
    const double lo = params.dist.lo();
    if (!(hi > lo) || !brackets_root(f, lo, hi)) return std::nullopt;
    return find_root(f, lo, hi).root;
}

struct LateIntegrand {
    const ModelParams& params;
    double c_late;
    double v_trunc;
    double floor;  // v^E - c_late
    double operator()(double x) const {
        return std::max(floor, late_threshold_with_cost(params, x, c_late, v_trunc).price) *
               params.dist.pdf(x);
    }
};

}  // namespace

double dynamic_indifference(const ModelParams& params, const DynamicCosts& costs, double v_early,
                            bool forced_early) {
    const double q = params.q;
    if (forced_early) return v_early - costs.c_early - expected_nondisclosure_price(params, v_early, v_early);
    const double lo = params.dist.lo(), hi = params.dist.hi();
    const double c = costs.c_late;
    double floor = v_early - c;
    double wait_v = std::max(floor, late_threshold_with_cost(params, v_early, c, v_early).price);

    std::vector<double> cuts = params.dist.kinks();
    cuts.push_back(v_early);
    double cap = std::min(v_early, hi);
    if (auto s0 = theta_switch(params, c, v_early, 0.0, cap)) cuts.push_back(*s0);
    if (auto s1 = theta_switch(params, c, v_early, 1.0, cap)) cuts.push_back(*s1);
    // where the continuation price crosses the late-disclosure payoff
    auto cross = [&](double x) {
        return late_threshold_with_cost(params, x, c, v_early).price - floor;
    };
    std::sort(cuts.begin(), cuts.end());
    std::vector<double> pieces{lo};
    for (double x : cuts)
        if (x > pieces.back() && x < hi) pieces.push_back(x);
    pieces.push_back(hi);
    std::vector<double> kinks;
    for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
        double a = pieces[i] + 1e-13, b = pieces[i + 1] - 1e-13;
        if (b > a && brackets_root(cross, a, b)) kinks.push_back(find_root(cross, a, b).root);
    }
    cuts.insert(cuts.end(), kinks.begin(), kinks.end());
    double integral = quad::integrate(LateIntegrand{params, c, v_early, floor}, lo, hi, cuts);
    return (v_early - costs.c_early) - (q * wait_v + (1.0 - q) * integral);
}

EquilibriumResult solve_dynamic(const ModelParams& params, const DynamicCosts& costs,
                                const DynamicOptions& opts) {
    params.validate();
    if (costs.c_early < 0 || costs.c_late < 0) throw DomainError("costs must be nonnegative");
    const double lo = params.dist.lo(), hi = params.dist.hi();
    EquilibriumResult r;
    r.kind = EquilibriumKind::dynamic;
    note_prior(params, r);

    double v_early = hi;
    if (!opts.forced_early && costs.c_early >= costs.c_late) {
        r.regime_notes.push_back("no early disclosure (c_early >= c_late)");
        r.bracket_lo = lo;
        r.bracket_hi = hi;
    } else {
        auto f = [&](double v) {
            try {
                return dynamic_indifference(params, costs, v, opts.forced_early);
            } catch (const SolverError& e) {
                std::ostringstream msg;
                msg << "dynamic inner solve failed at v^E=" << v << ": " << e.what();
                throw SolverError(msg.str());
            }
        };
        if (brackets_root(f, lo, hi)) {
            auto rr = find_root(f, lo, hi);
            v_early = rr.root;
            r.residual = rr.residual;
            r.iterations = rr.iterations;
        } else {
            r.regime_notes.push_back("never disclose early: v^E = v_max (prohibitive early cost)");
        }
        r.bracket_lo = lo;
        r.bracket_hi = hi;
    }
    r.threshold = v_early;

    if (!opts.forced_early) {
        ThresholdFunction tf;
        tf.kink_at = solve_benchmark(params).threshold;
        int n = std::max(opts.late_grid, 2);
        bool late_region = false;
        for (int i = 0; i < n; ++i) {
            double s = lo + (hi - lo) * i / double(n - 1);
            LatePoint pt;
            try {
                pt = late_threshold_with_cost(params, s, costs.c_late, v_early);
            } catch (const SolverError& e) {
                std::ostringstream msg;
                msg << "late solve failed at (v^E=" << v_early << ", s=" << s << "): " << e.what();
                throw SolverError(msg.str());
            }
            if (pt.v_late < v_early) late_region = true;
            r.residual = std::max(r.residual, pt.residual);
            tf.grid.push_back(pt);
        }
        if (late_region) r.regime_notes.push_back("late disclosure region nonempty (v^L(s) < v^E)");
        if (v_early >= hi && !late_region)
            r.regime_notes.push_back("never disclose late on the sampled signals");
        r.late = std::move(tf);
    }
    return r;
}

int count_sign_changes(const std::function<double(double)>& f, double lo, double hi, int n) {
    int changes = 0;
    int last = 0;
    for (int i = 0; i < n; ++i) {
        double v = f(lo + (hi - lo) * i / double(n - 1));
        int sg = v > 0 ? 1 : (v < 0 ? -1 : 0);
        if (sg == 0) continue;
        if (last != 0 && sg != last) ++changes;
        last = sg;
    }
    return changes;
}

ThresholdCheck check_threshold_function(const ThresholdFunction& tf) {
    ThresholdCheck c;
    const auto& g = tf.grid;
    double sum_below = 0, sum_above = 0;
    int n_below = 0, n_above = 0;
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
        double ds = g[i + 1].s - g[i].s;
        if (ds <= 1e-9) continue;
        double slope = (g[i + 1].v_late - g[i].v_late) / ds;
        if (!(g[i + 1].v_late > g[i].v_late)) c.increasing = false;
        if (!(slope > 0.0 && slope < 1.0)) c.slopes_in_unit_interval = false;
        if (g[i + 1].s <= tf.kink_at) {
            sum_below += slope;
            ++n_below;
        } else if (g[i].s >= tf.kink_at) {
            sum_above += slope;
            ++n_above;
        }
    }
    c.slope_below = n_below ? sum_below / n_below : 0.0;
    c.slope_above = n_above ? sum_above / n_above : 0.0;
    c.kink_ordering = n_below && n_above && c.slope_below > c.slope_above;
    for (const auto& pt : g) {
        if (pt.s < tf.kink_at && !(pt.v_late > pt.s)) c.crossing_at_kink = false;
        if (pt.s > tf.kink_at && !(pt.v_late < pt.s)) c.crossing_at_kink = false;
        if (pt.s == tf.kink_at && std::fabs(pt.v_late - pt.s) > 1e-9) c.crossing_at_kink = false;
    }
    return c;
}

double disclosure_drop_signal(const ModelParams& params, double v) {
    return (v - (1.0 - params.q) * params.dist.mean()) / params.q;
}

namespace {

int sign_on(const std::function<double(double)>& f, double a, double b, int n) {
    int sg = 0;
    for (int i = 1; i < n; ++i) {
        double v = f(a + (b - a) * i / double(n));
        int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
        if (s == 0) continue;
        if (sg == 0)
            sg = s;
        else if (s != sg)
            return 0;
    }
    return sg;
}

}  // namespace

PricePathReport price_path_analysis(const ModelParams& params, PathMode mode, double delta,
                                    int grid) {
    params.validate();
    PricePathReport rep;
    rep.mode = mode;
    const double lo = params.dist.lo(), hi = params.dist.hi(), mu = params.dist.mean();
    const double q = params.q;
    if (mode == PathMode::late) {
        double vb = solve_benchmark(params).threshold;
        rep.min_gap = std::numeric_limits<double>::infinity();
        for (int i = 0; i < grid; ++i) {
            double s = lo + (hi - lo) * i / double(grid - 1);
            double p3 = q * s + (1.0 - q) * mu;
            double p4 = solve_late(params, s, vb).price;
            if (p3 - p4 < rep.min_gap) {
                rep.min_gap = p3 - p4;
                rep.min_gap_at = s;
            }
        }
        return rep;
    }

    double vt = solve_frequent(params, delta).threshold;
    rep.v_tilde = vt;
    rep.p2_silence = benchmark_price(params, vt);
    auto diff = [&](double s) { return rep.p2_silence - nondisclosure_price(params, s, vt); };
    if (brackets_root(diff, lo, vt)) {
        rep.s_dagger = find_root(diff, lo, vt).root;
        rep.s_dagger_found = rep.s_dagger > lo && rep.s_dagger < vt;
    }
    // w(s) with pi = q / (q + (1-q) G)
    {
        double G = params.dist.cdf(vt), D = 1.0 - params.p + params.p * G;
        double pi = pi_weight(params, vt), m = params.dist.truncated_mean_below(vt);
        auto w = [&](double s) {
            return (1.0 - params.p) / D * (mu - s) + params.p * G / D * pi * (m - s);
        };
        rep.proof_w_at_lo = w(lo);
        rep.proof_w_at_v_tilde = w(vt);
        rep.proof_w_has_root = !(rep.proof_w_at_lo > 0 && rep.proof_w_at_v_tilde > 0) &&
                               !(rep.proof_w_at_lo < 0 && rep.proof_w_at_v_tilde < 0);
    }
    double sd = rep.s_dagger_found ? rep.s_dagger : lo;
    const double edges[5] = {lo, sd, vt, mu, hi};
    int per = std::max(grid / 4, 8);
    for (int k = 0; k < 4; ++k) {
        IntervalSign is{edges[k], edges[k + 1], 0};
        if (edges[k + 1] > edges[k]) is.sign = sign_on(diff, edges[k], edges[k + 1], per);
        rep.signs.push_back(is);
        if (k) rep.sign_pattern += ",";
        rep.sign_pattern += is.sign > 0 ? "+" : (is.sign < 0 ? "-" : "0");
    }
    return rep;
}

}  // namespace disclosure
