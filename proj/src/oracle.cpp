#include "disclosure/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "disclosure/errors.hpp"

namespace disclosure {

namespace {

constexpr double kTieTol = 1e-12;

using Row = std::vector<std::uint8_t>;

}  // namespace

std::string to_string(OracleMode m) {
    switch (m) {
        case OracleMode::benchmark: return "benchmark";
        case OracleMode::early: return "early";
        case OracleMode::late: return "late";
        case OracleMode::dynamic: return "dynamic";
        case OracleMode::frequent: return "frequent";
    }
    return "unknown";
}

std::string to_string(OracleStart s) {
    switch (s) {
        case OracleStart::benchmark_threshold: return "benchmark-threshold";
        case OracleStart::none: return "none";
        case OracleStart::all: return "all";
    }
    return "unknown";
}

DiscreteGame DiscreteGame::make(const ModelParams& params, OracleMode mode, int n,
                                DynamicCosts costs) {
    params.validate();
    if (n < 500) throw DomainError("discrete game needs N >= 500");
    DiscreteGame g;
    g.params = params;
    g.mode = mode;
    g.costs = costs;
    const double lo = params.dist.lo(), hi = params.dist.hi();
    g.step = (hi - lo) / n;
    g.values.resize(static_cast<std::size_t>(n));
    g.weights.resize(static_cast<std::size_t>(n));
    double prev = 0.0;
    for (int i = 0; i < n; ++i) {
        g.values[i] = lo + (i + 0.5) * g.step;
        double edge = i + 1 == n ? hi : lo + (i + 1) * g.step;
        double c = params.dist.cdf(edge);
        g.weights[i] = c - prev;
        prev = c;
    }
    return g;
}

SignalPrices enumerate_prices(const DiscreteGame& game, const DisclosureState& st) {
    const int n = game.size();
    const double p = game.params.p, q = game.params.q;
    const auto& v = game.values;
    const auto& w = game.weights;
    auto informed_silent_mass = [p](bool silent) { return (1.0 - p) + (silent ? p : 0.0); };

    SignalPrices out;
    out.price.resize(n);
    out.own_silent.resize(n);

    // date-2 silence: uninformed always, informed unless they disclosed early
    double num2 = 0.0, den2 = 0.0;
    for (int i = 0; i < n; ++i) {
        double m = w[i] * informed_silent_mass(!st.early[i]);
        num2 += m * v[i];
        den2 += m;
    }
    out.date2_silence = num2 / den2;

    for (int j = 0; j < n; ++j) {
        // phi = N: signal x_j independent of v
        double num_n = 0.0, den_n = 0.0;
        if (game.has_late_stage()) {
            const Row& late = st.late[j];
            for (int i = 0; i < n; ++i) {
                double m = w[j] * w[i] * informed_silent_mass(!st.early[i] && !late[i]);
                num_n += m * v[i];
                den_n += m;
            }
        } else {
            num_n = w[j] * num2;
            den_n = w[j] * den2;
        }
        // phi = V: signal equals the value, only type j
        bool silent_j = !st.early[j] && !(game.has_late_stage() && st.late[j][j]);
        double mv = w[j] * informed_silent_mass(silent_j);
        double mv_own = w[j] * informed_silent_mass(true);
        out.price[j] = (q * mv * v[j] + (1.0 - q) * num_n) / (q * mv + (1.0 - q) * den_n);
        out.own_silent[j] =
            (q * mv_own * v[j] + (1.0 - q) * num_n) / (q * mv_own + (1.0 - q) * den_n);
    }
    return out;
}

namespace {

double discount_weight(double d) { return d + d * d + d * d * d; }

double noise_expectation(const DiscreteGame& g, const SignalPrices& sp) {
    double e = 0.0;
    for (int k = 0; k < g.size(); ++k) e += g.weights[k] * sp.price[k];
    return e;
}

// payoffs of a date-2 decision for type i: {disclose, stay silent}
struct EarlyPayoffs {
    std::vector<double> disclose;
    std::vector<double> silent;
};

EarlyPayoffs early_payoffs(const DiscreteGame& g, const SignalPrices& sp) {
    const int n = g.size();
    const double q = g.params.q;
    EarlyPayoffs out;
    out.disclose.resize(n);
    out.silent.resize(n);
    double en = noise_expectation(g, sp);
    for (int i = 0; i < n; ++i) {
        double v = g.values[i];
        switch (g.mode) {
            case OracleMode::benchmark:
                out.disclose[i] = v;
                out.silent[i] = sp.date2_silence;
                break;
            case OracleMode::early:
                out.disclose[i] = v;
                out.silent[i] = q * sp.own_silent[i] + (1.0 - q) * en;
                break;
            case OracleMode::frequent: {
                double wt = discount_weight(g.costs.delta);
                out.disclose[i] = (1.0 + wt) * v;
                out.silent[i] = sp.date2_silence + wt * (q * sp.own_silent[i] + (1.0 - q) * en);
                break;
            }
            case OracleMode::dynamic: {
                double late_pay = v - g.costs.c_late;
                double acc = 0.0;
                for (int k = 0; k < n; ++k) acc += g.weights[k] * std::max(late_pay, sp.price[k]);
                out.disclose[i] = v - g.costs.c_early;
                out.silent[i] = q * std::max(late_pay, sp.own_silent[i]) + (1.0 - q) * acc;
                break;
            }
            case OracleMode::late: break;
        }
    }
    return out;
}

double late_price_for(const SignalPrices& sp, int j, int i) {
    return i == j ? sp.own_silent[j] : sp.price[j];
}

int update_late(const DiscreteGame& g, DisclosureState& st, const SignalPrices& sp) {
    const int n = g.size();
    int changed = 0;
    for (int j = 0; j < n; ++j) {
        Row& row = st.late[j];
        for (int i = 0; i < n; ++i) {
            std::uint8_t d = (g.values[i] - g.costs.c_late) > late_price_for(sp, j, i) + kTieTol;
            if (d != row[i]) {
                row[i] = d;
                ++changed;
            }
        }
    }
    return changed;
}

int update_early(const DiscreteGame& g, DisclosureState& st, const SignalPrices& sp) {
    auto pay = early_payoffs(g, sp);
    int changed = 0;
    for (int i = 0; i < g.size(); ++i) {
        std::uint8_t d = pay.disclose[i] > pay.silent[i] + kTieTol;
        if (d != st.early[i]) {
            st.early[i] = d;
            ++changed;
        }
    }
    return changed;
}

DisclosureState initial_state(const DiscreteGame& g, OracleStart start) {
    const int n = g.size();
    double vb = solve_benchmark(g.params).threshold;
    auto pick = [&](int i) -> std::uint8_t {
        switch (start) {
            case OracleStart::benchmark_threshold: return g.values[i] > vb;
            case OracleStart::none: return 0;
            case OracleStart::all: return 1;
        }
        return 0;
    };
    DisclosureState st;
    st.early.assign(n, 0);
    if (g.has_early_stage())
        for (int i = 0; i < n; ++i) st.early[i] = pick(i);
    if (g.has_late_stage()) {
        Row row(n);
        for (int i = 0; i < n; ++i) row[i] = pick(i);
        st.late.assign(n, row);
    }
    return st;
}

// first index of an upper set of disclosers among `eligible`, or -1 if not an upper set
int upper_set_start(const Row& disclose, const std::vector<int>& eligible) {
    int first = -1;
    for (std::size_t k = 0; k < eligible.size(); ++k) {
        bool d = disclose[eligible[k]];
        if (d && first < 0) first = static_cast<int>(k);
        if (!d && first >= 0) return -2;
    }
    return first < 0 ? static_cast<int>(eligible.size()) : first;
}

void extract(const DiscreteGame& g, OracleEquilibrium& eq) {
    const int n = g.size();
    const double lo = g.params.dist.lo();
    const auto& st = eq.disclosure_set;
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    eq.is_threshold_shaped = true;
    int k = upper_set_start(st.early, all);
    if (k == -2) {
        eq.is_threshold_shaped = false;
        k = static_cast<int>(std::count(st.early.begin(), st.early.end(), 0));
    }
    eq.extracted_threshold = lo + k * g.step;
    if (!g.has_late_stage()) return;
    std::vector<int> waiting;
    for (int i = 0; i < n; ++i)
        if (!st.early[i]) waiting.push_back(i);
    eq.late_thresholds.resize(n);
    for (int j = 0; j < n; ++j) {
        int kj = upper_set_start(st.late[j], waiting);
        if (kj == -2) {
            eq.is_threshold_shaped = false;
            kj = 0;
            for (int i : waiting) kj += !st.late[j][i];
        }
        int bins = kj < static_cast<int>(waiting.size()) ? waiting[kj] : (waiting.empty() ? 0 : waiting.back() + 1);
        eq.late_thresholds[j] = lo + bins * g.step;
    }
}

int solve_late_stage(const DiscreteGame& g, DisclosureState& st, int max_iter) {
    for (int it = 1; it <= max_iter; ++it) {
        auto sp = enumerate_prices(g, st);
        if (update_late(g, st, sp) == 0) return it;
    }
    throw OracleError("late-stage best responses did not converge");
}

}  // namespace

OracleEquilibrium oracle_solve(const DiscreteGame& game, OracleStart start, int max_iter) {
    OracleEquilibrium eq;
    eq.mode = game.mode;
    eq.start = start;
    eq.disclosure_set = initial_state(game, start);
    auto& st = eq.disclosure_set;
    bool done = false;
    for (int it = 1; it <= max_iter && !done; ++it) {
        eq.iterations = it;
        switch (game.mode) {
            case OracleMode::late:
                solve_late_stage(game, st, max_iter);
                done = true;
                break;
            case OracleMode::dynamic: {
                // late stage first given the early set, then early given continuation values
                solve_late_stage(game, st, max_iter);
                auto sp = enumerate_prices(game, st);
                done = update_early(game, st, sp) == 0;
                break;
            }
            default: {
                auto sp = enumerate_prices(game, st);
                done = update_early(game, st, sp) == 0;
                break;
            }
        }
    }
    if (!done) {
        std::ostringstream msg;
        msg << "oracle (" << to_string(game.mode) << ", start " << to_string(start)
            << ") did not converge in " << max_iter << " rounds";
        throw OracleError(msg.str());
    }
    extract(game, eq);
    return eq;
}

OracleAudit oracle_solve_all_starts(const DiscreteGame& game, int max_iter) {
    OracleAudit audit;
    for (auto s : {OracleStart::benchmark_threshold, OracleStart::none, OracleStart::all})
        audit.runs.push_back(oracle_solve(game, s, max_iter));
    audit.all_threshold_shaped = true;
    const auto& ref = audit.runs.front();
    for (const auto& r : audit.runs) {
        if (!r.is_threshold_shaped) {
            audit.all_threshold_shaped = false;
            throw OracleError("oracle fixed point is not threshold-shaped (start " +
                              to_string(r.start) + ")");
        }
        audit.max_spread =
            std::max(audit.max_spread, std::fabs(r.extracted_threshold - ref.extracted_threshold));
        for (std::size_t j = 0; j < r.late_thresholds.size(); ++j)
            audit.max_spread = std::max(
                audit.max_spread, std::fabs(r.late_thresholds[j] - ref.late_thresholds[j]));
    }
    audit.starts_agree = audit.max_spread <= game.step + 1e-12;
    return audit;
}

DisclosureState state_from_thresholds(const DiscreteGame& game, double early_threshold,
                                      const std::function<double(double)>& late_fn) {
    const int n = game.size();
    DisclosureState st;
    st.early.assign(n, 0);
    if (game.has_early_stage())
        for (int i = 0; i < n; ++i) st.early[i] = game.values[i] > early_threshold;
    if (game.has_late_stage()) {
        st.late.assign(n, Row(n, 0));
        for (int j = 0; j < n; ++j) {
            double t = late_fn(game.values[j]);
            for (int i = 0; i < n; ++i) st.late[j][i] = game.values[i] > t;
        }
    }
    return st;
}

double max_deviation_gain(const DiscreteGame& game, const DisclosureState& st) {
    auto sp = enumerate_prices(game, st);
    double gain = 0.0;
    const int n = game.size();
    if (game.has_early_stage()) {
        auto pay = early_payoffs(game, sp);
        for (int i = 0; i < n; ++i) {
            double chosen = st.early[i] ? pay.disclose[i] : pay.silent[i];
            gain = std::max(gain, std::max(pay.disclose[i], pay.silent[i]) - chosen);
        }
    }
    if (game.has_late_stage()) {
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                if (st.early[i]) continue;
                double d = game.values[i] - game.costs.c_late;
                double s = late_price_for(sp, j, i);
                double chosen = st.late[j][i] ? d : s;
                gain = std::max(gain, std::max(d, s) - chosen);
            }
    }
    return gain;
}

McEstimate monte_carlo_price(const ModelParams& params, double vhat, std::size_t draws,
                             std::uint64_t seed, int bins) {
    params.validate();
    if (draws < 10000) throw DomainError("monte_carlo_price needs at least 1e4 draws");
    if (bins < 1) throw DomainError("monte_carlo_price needs at least one bin");
    const auto& d = params.dist;
    const double lo = d.lo(), hi = d.hi();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    struct Acc {
        std::size_t n = 0;
        double sv = 0, sp = 0, sd = 0, sd2 = 0;
    };
    std::vector<Acc> acc(static_cast<std::size_t>(bins));
    double sum = 0.0, sum2 = 0.0;
    std::size_t silent = 0;
    for (std::size_t k = 0; k < draws; ++k) {
        double v = d.quantile(unif(rng));
        bool informed = unif(rng) < params.p;
        bool veracious = unif(rng) < params.q;
        double x = d.quantile(unif(rng));
        double s = veracious ? v : x;
        double price;
        if (informed && v > vhat) {
            price = v;
        } else {
            price = nondisclosure_price(params, s, vhat);
            ++silent;
            int b = std::clamp(static_cast<int>((s - lo) / (hi - lo) * bins), 0, bins - 1);
            auto& a = acc[b];
            double diff = v - price;
            ++a.n;
            a.sv += v;
            a.sp += price;
            a.sd += diff;
            a.sd2 += diff * diff;
        }
        sum += price;
        sum2 += price * price;
    }
    McEstimate est;
    est.draws = draws;
    est.silent_draws = silent;
    double n = static_cast<double>(draws);
    est.mean_price = sum / n;
    est.stderr_price = std::sqrt(std::max(0.0, sum2 / n - est.mean_price * est.mean_price) / (n - 1));
    for (int b = 0; b < bins; ++b) {
        McBin out;
        out.lo = lo + (hi - lo) * b / bins;
        out.hi = lo + (hi - lo) * (b + 1) / bins;
        const auto& a = acc[b];
        out.count = a.n;
        out.empty = a.n < 2;
        if (!out.empty) {
            double m = static_cast<double>(a.n);
            out.mean_value = a.sv / m;
            out.mean_price = a.sp / m;
            out.mean_diff = a.sd / m;
            out.stderr_diff = std::sqrt(std::max(0.0, a.sd2 / m - out.mean_diff * out.mean_diff) / (m - 1));
        }
        est.bins.push_back(out);
    }
    return est;
}

}  // namespace disclosure
