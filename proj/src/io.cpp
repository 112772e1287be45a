#include "disclosure/io.hpp"

#include <cstdio>

namespace disclosure::io {

std::string num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

json to_json(const ModelParams& params) {
    return {{"p", params.p},
            {"q", params.q},
            {"dist", to_string(params.dist.kind())},
            {"dist_params", params.dist.parameters()},
            {"support", {params.dist.lo(), params.dist.hi()}},
            {"log_concave", params.dist.log_concave()}};
}

json to_json(const JointBeliefs& b) {
    return {{"pr_IV", b.pr_IV}, {"pr_IN", b.pr_IN}, {"pr_UV", b.pr_UV},
            {"pr_UN", b.pr_UN}, {"gamma", b.gamma}};
}

json to_json(const ThresholdFunction& tf) {
    json pts = json::array();
    for (const auto& pt : tf.grid)
        pts.push_back({{"s", pt.s}, {"v_late", pt.v_late}, {"regime", to_string(pt.regime)}});
    return {{"kink_at", tf.kink_at}, {"grid", pts}};
}

json to_json(const EquilibriumResult& r) {
    json j = {{"kind", to_string(r.kind)},
              {"threshold", r.threshold},
              {"residual", r.residual},
              {"iterations", r.iterations},
              {"bracket", {r.bracket_lo, r.bracket_hi}},
              {"regime_notes", r.regime_notes}};
    if (r.late) j["late_thresholds"] = to_json(*r.late);
    return j;
}

json to_json(const OracleEquilibrium& eq, const DiscreteGame& game) {
    json j = {{"mode", to_string(eq.mode)},
              {"start", to_string(eq.start)},
              {"grid", game.size()},
              {"step", game.step},
              {"extracted_threshold", eq.extracted_threshold},
              {"is_threshold_shaped", eq.is_threshold_shaped},
              {"iterations", eq.iterations}};
    if (!eq.late_thresholds.empty()) j["late_thresholds"] = eq.late_thresholds;
    return j;
}

json to_json(const PricePathReport& rep) {
    json j = {{"mode", rep.mode == PathMode::late ? "late" : "early"}};
    if (rep.mode == PathMode::late) {
        j["min_gap"] = rep.min_gap;
        j["min_gap_at"] = rep.min_gap_at;
        return j;
    }
    json signs = json::array();
    for (const auto& s : rep.signs) signs.push_back({{"lo", s.lo}, {"hi", s.hi}, {"sign", s.sign}});
    j["v_tilde"] = rep.v_tilde;
    j["p2_silence"] = rep.p2_silence;
    j["s_dagger"] = rep.s_dagger;
    j["s_dagger_found"] = rep.s_dagger_found;
    j["proof_w_has_root"] = rep.proof_w_has_root;
    j["proof_w_at_lo"] = rep.proof_w_at_lo;
    j["proof_w_at_v_tilde"] = rep.proof_w_at_v_tilde;
    j["signs"] = signs;
    j["sign_pattern"] = rep.sign_pattern;
    return j;
}

json to_json(const McEstimate& est) {
    json bins = json::array();
    for (const auto& b : est.bins)
        bins.push_back({{"lo", b.lo},
                        {"hi", b.hi},
                        {"count", b.count},
                        {"empty", b.empty},
                        {"mean_value", b.mean_value},
                        {"mean_price", b.mean_price},
                        {"mean_diff", b.mean_diff},
                        {"stderr_diff", b.stderr_diff}});
    return {{"mean_price", est.mean_price},
            {"stderr", est.stderr_price},
            {"draws", est.draws},
            {"silent_draws", est.silent_draws},
            {"bins", bins}};
}

void write_price_curve_csv(std::ostream& out, const PriceCurve& curve) {
    out << "s,price,branch\n";
    for (const auto& pt : curve.grid) {
        out << num(pt.s) << ',' << num(pt.price) << ',' << to_string(pt.branch) << '\n';
        if (pt.s == curve.vhat)
            out << num(pt.s) << ',' << num(curve.right_limit_at_vhat) << ",gt\n";
    }
}

void write_noisy_curve_csv(std::ostream& out, const PriceCurve& curve, double tau, double q) {
    out << "s,price,branch,tau,q\n";
    for (const auto& pt : curve.grid)
        out << num(pt.s) << ',' << num(pt.price) << ',' << to_string(pt.branch) << ',' << num(tau)
            << ',' << num(q) << '\n';
}

void write_threshold_csv(std::ostream& out, const ThresholdFunction& tf) {
    out << "s,v_late,regime\n";
    for (const auto& pt : tf.grid)
        out << num(pt.s) << ',' << num(pt.v_late) << ',' << to_string(pt.regime) << '\n';
}

}  // namespace disclosure::io
