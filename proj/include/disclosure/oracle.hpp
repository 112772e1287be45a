#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "disclosure/equilibrium.hpp"

namespace disclosure {

enum class OracleMode { benchmark, early, late, dynamic, frequent };
std::string to_string(OracleMode m);

// Discretized game: N equal bins on the support, values at bin midpoints, weights G-mass of
// each bin. Signals live on the same grid; a veracious signal equals the value's grid point.
struct DiscreteGame {
    ModelParams params;
    OracleMode mode = OracleMode::early;
    DynamicCosts costs;  // c_late in late/dynamic, c_early in dynamic, delta in frequent
    std::vector<double> values;
    std::vector<double> weights;
    double step = 0.0;

    static DiscreteGame make(const ModelParams& params, OracleMode mode, int n,
                             DynamicCosts costs = {});
    int size() const { return static_cast<int>(values.size()); }
    bool has_late_stage() const { return mode == OracleMode::late || mode == OracleMode::dynamic; }
    bool has_early_stage() const { return mode != OracleMode::late; }
};

// early[i]: type i discloses at date 2; late[j][i]: type i discloses at date 4 after signal j
struct DisclosureState {
    std::vector<std::uint8_t> early;
    std::vector<std::vector<std::uint8_t>> late;
};

enum class OracleStart { benchmark_threshold, none, all };
std::string to_string(OracleStart s);

struct OracleEquilibrium {
    OracleMode mode = OracleMode::early;
    OracleStart start = OracleStart::benchmark_threshold;
    DisclosureState disclosure_set;
    double extracted_threshold = 0.0;      // upper edge of the last silent bin at date 2
    std::vector<double> late_thresholds;   // per signal grid point (late modes)
    bool is_threshold_shaped = false;
    int iterations = 0;
};

struct SignalPrices {
    std::vector<double> price;       // P_j at each signal grid point
    std::vector<double> own_silent;  // P_j with the veracious atom at s_j treated as silent
    double date2_silence = 0.0;      // benchmark-style price after date-2 silence
};

// exact posterior means by enumeration over (kappa, phi, v, x)
SignalPrices enumerate_prices(const DiscreteGame& game, const DisclosureState& state);

OracleEquilibrium oracle_solve(const DiscreteGame& game, OracleStart start, int max_iter = 500);

struct OracleAudit {
    std::vector<OracleEquilibrium> runs;  // one per start
    bool all_threshold_shaped = false;
    bool starts_agree = false;  // within one grid step
    double max_spread = 0.0;
};
// runs all three initializations; throws OracleError on a non-threshold fixed point
OracleAudit oracle_solve_all_starts(const DiscreteGame& game, int max_iter = 500);

// state induced by analytic thresholds (late_fn may be empty for early-type modes)
DisclosureState state_from_thresholds(const DiscreteGame& game, double early_threshold,
                                      const std::function<double(double)>& late_fn);
// largest one-shot gain of any type from deviating from the given state
double max_deviation_gain(const DiscreteGame& game, const DisclosureState& state);

struct McBin {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t count = 0;
    double mean_value = 0.0;
    double mean_price = 0.0;
    double mean_diff = 0.0;  // mean of v - P(s, silence)
    double stderr_diff = 0.0;
    bool empty = true;
};

struct McEstimate {
    double mean_price = 0.0;
    double stderr_price = 0.0;
    std::size_t draws = 0;
    std::size_t silent_draws = 0;
    std::vector<McBin> bins;  // silent draws by signal bin
};

// simulate (v, kappa, phi, x) under the threshold-vhat rule and price with the model formulas
McEstimate monte_carlo_price(const ModelParams& params, double vhat, std::size_t draws,
                             std::uint64_t seed, int bins = 10);

}  // namespace disclosure
