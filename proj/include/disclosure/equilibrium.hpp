#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "disclosure/pricing.hpp"

namespace disclosure {

enum class EquilibriumKind { benchmark, early, late, dynamic, frequent };
std::string to_string(EquilibriumKind kind);

// late-stage response to a veracious signal: withheld (theta0), disclosed (theta1), or the
// manager at v = s is exactly indifferent (mixed)
enum class LateRegime { theta0, theta1, mixed };
std::string to_string(LateRegime r);

struct LatePoint {
    double s = 0.0;
    double v_late = 0.0;
    double price = 0.0;  // nondisclosure price at s
    LateRegime regime = LateRegime::theta0;
    double residual = 0.0;
    int iterations = 0;
};

struct ThresholdFunction {
    std::vector<LatePoint> grid;
    double kink_at = 0.0;
};

struct DynamicCosts {
    double c_early = 0.0;
    double c_late = 0.0;
    double delta = 0.0;  // frequent-adjustment solver only
};

struct EquilibriumResult {
    EquilibriumKind kind = EquilibriumKind::benchmark;
    double threshold = 0.0;  // v^B, v^E or frequent v^E; dynamic: early threshold
    std::optional<ThresholdFunction> late;
    double residual = 0.0;
    int iterations = 0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    std::vector<std::string> regime_notes;
};

// indifference functions (root = equilibrium threshold)
double benchmark_indifference(const ModelParams& params, double v);
double early_indifference(const ModelParams& params, double v);
double frequent_indifference(const ModelParams& params, double delta, double v);

EquilibriumResult solve_benchmark(const ModelParams& params);
EquilibriumResult solve_early(const ModelParams& params);
EquilibriumResult solve_frequent(const ModelParams& params, double delta);

// v^L(s) without rescheduling costs; theta chosen by comparing s with v^B
LatePoint solve_late(const ModelParams& params, double s);
LatePoint solve_late(const ModelParams& params, double s, double v_benchmark);
ThresholdFunction solve_late_curve(const ModelParams& params, int grid_size);

// fixed point v = H(s, v, theta) (no cost, no truncation): the auxiliary-game thresholds
double late_branch_threshold(const ModelParams& params, double s, int theta);

// late threshold with a late-disclosure cost; silence set truncated at v_trunc
// (types above v_trunc have already disclosed)
LatePoint late_threshold_with_cost(const ModelParams& params, double s, double c_late,
                                   double v_trunc);

struct DynamicOptions {
    bool forced_early = false;  // late disclosure disabled
    int late_grid = 201;
};

double dynamic_indifference(const ModelParams& params, const DynamicCosts& costs, double v_early,
                            bool forced_early = false);
EquilibriumResult solve_dynamic(const ModelParams& params, const DynamicCosts& costs,
                                const DynamicOptions& opts = {});

// sign changes of f on an n-point grid over [lo, hi]
int count_sign_changes(const std::function<double(double)>& f, double lo, double hi, int n = 2000);

struct ThresholdCheck {
    bool increasing = true;
    bool slopes_in_unit_interval = true;
    bool kink_ordering = true;  // slope below kink > slope above kink
    bool crossing_at_kink = true;
    double slope_below = 0.0;  // mean finite-difference slope
    double slope_above = 0.0;
};
ThresholdCheck check_threshold_function(const ThresholdFunction& tf);

enum class PathMode { early, late };

struct IntervalSign {
    double lo = 0.0;
    double hi = 0.0;
    int sign = 0;  // +1, -1, or 0 when mixed
};

struct PricePathReport {
    PathMode mode = PathMode::late;
    // late mode
    double min_gap = 0.0;  // min over s of P3(s) - P4(s, silence)
    double min_gap_at = 0.0;
    // early (frequent adjustment) mode
    double v_tilde = 0.0;
    double p2_silence = 0.0;
    double s_dagger = 0.0;  // root of P2 - P3 on (v_min, v_tilde)
    bool s_dagger_found = false;
    bool proof_w_has_root = false;  // w(s) built from the pi weight
    double proof_w_at_lo = 0.0;
    double proof_w_at_v_tilde = 0.0;
    std::vector<IntervalSign> signs;  // P2 - P3 over the four intervals
    std::string sign_pattern;
};

PricePathReport price_path_analysis(const ModelParams& params, PathMode mode, double delta = 0.5,
                                    int grid = 2000);

// signals above which a late discloser with value v sees the price fall on disclosure
double disclosure_drop_signal(const ModelParams& params, double v);

}  // namespace disclosure
