#include "disclosure/reproduce.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/rational.hpp>

#include "disclosure/equilibrium.hpp"
#include "disclosure/errors.hpp"
#include "disclosure/extensions.hpp"
#include "disclosure/io.hpp"

namespace disclosure {

namespace {

using io::num;

ModelParams uniform_model(double p, double q) {
    return make_params(p, q, ValueDistribution::uniform(0.0, 1.0));
}

void claim(FigureBundle& b, std::string text, bool pass, std::string detail = {}) {
    b.claims.push_back({std::move(text), pass, std::move(detail)});
}

bool strictly_increasing(const std::vector<double>& xs) {
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (!(xs[i] > xs[i - 1])) return false;
    return true;
}

FigureBundle fig2() {
    FigureBundle b{"fig2", {}, {}};
    auto m = uniform_model(0.6, 0.4);
    const double vhat = 0.4;
    double pr_i = informed_given_silence(m, vhat);
    double base[4] = {m.q * pr_i, (1 - m.q) * pr_i, m.q * (1 - pr_i), (1 - m.q) * (1 - pr_i)};
    std::ostringstream csv;
    csv << "s,branch,pr_IV,pr_IN,pr_UV,pr_UN,base_IV,base_IN,base_UV,base_UN\n";
    auto row = [&](double s, Branch br) {
        auto jb = joint_posterior_of(m.p, m.q, m.dist.cdf(vhat), br == Branch::gt);
        csv << num(s) << ',' << to_string(br) << ',' << num(jb.pr_IV) << ',' << num(jb.pr_IN) << ','
            << num(jb.pr_UV) << ',' << num(jb.pr_UN);
        for (double x : base) csv << ',' << num(x);
        csv << '\n';
    };
    for (int i = 0; i <= 100; ++i) {
        double s = i / 100.0;
        row(s, s > vhat ? Branch::gt : Branch::le);
        if (s == vhat) row(s, Branch::gt);
    }
    b.files["fig2_beliefs.csv"] = csv.str();

    using Q = boost::rational<long long>;
    Q pi = informed_given_silence(Q(3, 5), Q(2, 5));
    claim(b, "Pr(U|silence) = 0.625 exactly", Q(1) - pi == Q(5, 8),
          std::to_string((Q(1) - pi).numerator()) + "/" + std::to_string((Q(1) - pi).denominator()));
    claim(b, "Pr(I|silence) = 0.375 exactly", pi == Q(3, 8));
    auto lo = joint_posterior(m, vhat - 0.01, vhat), hi = joint_posterior(m, vhat + 0.01, vhat);
    claim(b, "Pr(V,I|s<=vhat) above the product baseline", lo.pr_IV > base[0]);
    claim(b, "Pr(V,I|s) drops to 0 above vhat", hi.pr_IV == 0.0 && lo.pr_IV > 0.0);
    claim(b, "Pr(N,I|s) jumps up across vhat", hi.pr_IN > lo.pr_IN);
    claim(b, "Pr(V,U|s) jumps up across vhat", hi.pr_UV > lo.pr_UV);
    claim(b, "Pr(N,U|s) jumps up across vhat", hi.pr_UN > lo.pr_UN);
    return b;
}

FigureBundle fig3() {
    FigureBundle b{"fig3", {}, {}};
    auto m = uniform_model(0.5, 0.3);
    double vb = solve_benchmark(m).threshold;
    const char* names[3] = {"a", "b", "c"};
    double vhats[3] = {0.2, vb, 0.7};
    PriceCurve curves[3];
    for (int k = 0; k < 3; ++k) {
        curves[k] = price_curve(m, vhats[k], 201);
        std::ostringstream csv;
        io::write_price_curve_csv(csv, curves[k]);
        b.files[std::string("fig3_panel_") + names[k] + ".csv"] = csv.str();
    }
    auto jump = [](const PriceCurve& c) { return c.right_limit_at_vhat - c.left_limit_at_vhat; };
    claim(b, "panel a (vhat=0.2 < v^B): steep increase at vhat", jump(curves[0]) > 0,
          "right-left=" + num(jump(curves[0])));
    claim(b, "panel b (vhat=v^B): continuous at vhat", std::fabs(jump(curves[1])) <= 1e-9,
          "v^B=" + num(vb));
    claim(b, "panel c (vhat=0.7 > v^B): steep decline at vhat (non-monotone)", jump(curves[2]) < 0,
          "right-left=" + num(jump(curves[2])));
    return b;
}

FigureBundle fig4() {
    FigureBundle b{"fig4", {}, {}};
    auto m = uniform_model(0.9, 0.75);
    double ve = solve_early(m).threshold;
    std::ostringstream csv;
    csv << "v,disclosure_price,expected_price,branch\n";
    for (int i = 0; i <= 200; ++i) {
        double v = i / 200.0;
        csv << num(v) << ',' << num(v) << ',' << num(expected_nondisclosure_price(m, v, ve)) << ','
            << (v > ve ? "gt" : "le") << '\n';
        if (i < 200 && v < ve && (i + 1) / 200.0 > ve) {
            csv << num(ve) << ',' << num(ve) << ','
                << num(expected_nondisclosure_price(m, ve, ve)) << ",le\n";
            double right = m.q * nondisclosure_price_branch(m, ve, ve, Branch::gt) +
                           (1 - m.q) * integrated_nondisclosure_price(m, ve);
            csv << num(ve) << ',' << num(ve) << ',' << num(right) << ",gt\n";
        }
    }
    b.files["fig4_expected_price.csv"] = csv.str();
    auto gap = [&](double v) { return v - expected_nondisclosure_price(m, v, ve); };
    int crossings = count_sign_changes(gap, 0.0, 1.0, 2001);
    claim(b, "expected price crosses the 45-degree line once", crossings == 1,
          "crossings=" + std::to_string(crossings) + ", v^E=" + num(ve));
    double left = expected_nondisclosure_price(m, ve, ve);
    double right = m.q * nondisclosure_price_branch(m, ve, ve, Branch::gt) +
                   (1 - m.q) * integrated_nondisclosure_price(m, ve);
    claim(b, "downward jump of the expected price at v^E", left > right,
          "left=" + num(left) + ", right=" + num(right));
    double vb = solve_benchmark(m).threshold;
    claim(b, "v^E lies in (v^B, mu)", ve > vb && ve < m.dist.mean(), "v^B=" + num(vb));
    return b;
}

FigureBundle fig5() {
    FigureBundle b{"fig5", {}, {}};
    auto m = uniform_model(0.5, 0.5);
    double vb = solve_benchmark(m).threshold;
    std::ostringstream csv;
    csv << "q,v_early,v_benchmark\n";
    std::vector<double> ves;
    for (int i = 1; i <= 19; ++i) {
        double q = i / 20.0;
        double ve = solve_early(m.with_q(q)).threshold;
        ves.push_back(ve);
        csv << num(q) << ',' << num(ve) << ',' << num(vb) << '\n';
    }
    b.files["fig5_early_vs_q.csv"] = csv.str();
    claim(b, "v^E increasing in q", strictly_increasing(ves));
    claim(b, "v^E above v^B for every q", std::all_of(ves.begin(), ves.end(), [&](double v) { return v > vb; }));
    return b;
}

FigureBundle fig6() {
    FigureBundle b{"fig6", {}, {}};
    auto m = uniform_model(0.5, 0.5);
    double vb = solve_benchmark(m).threshold;
    std::ostringstream csv;
    csv << "q,s,v_late\n";
    double ss[3] = {0.20, vb, 0.65};
    std::vector<double> cols[3];
    for (int i = 1; i <= 19; ++i) {
        double q = i / 20.0;
        auto mq = m.with_q(q);
        for (int k = 0; k < 3; ++k) {
            double v = solve_late(mq, ss[k], vb).v_late;
            cols[k].push_back(v);
            csv << num(q) << ',' << num(ss[k]) << ',' << num(v) << '\n';
        }
    }
    b.files["fig6_late_vs_q.csv"] = csv.str();
    auto rev = cols[0];
    std::reverse(rev.begin(), rev.end());
    claim(b, "v^L(0.20) decreasing in q", strictly_increasing(rev));
    double spread = *std::max_element(cols[1].begin(), cols[1].end()) -
                    *std::min_element(cols[1].begin(), cols[1].end());
    claim(b, "v^L(v^B) = v^B independent of q", spread <= 1e-9 && std::fabs(cols[1][0] - vb) <= 1e-9,
          "v^B=" + num(vb));
    claim(b, "v^L(0.65) increasing in q", strictly_increasing(cols[2]));
    return b;
}

FigureBundle fig7() {
    FigureBundle b{"fig7", {}, {}};
    auto m = uniform_model(0.9, 0.6);
    auto tf = solve_late_curve(m, 201);
    std::ostringstream csv;
    io::write_threshold_csv(csv, tf);
    b.files["fig7_late_threshold.csv"] = csv.str();
    auto c = check_threshold_function(tf);
    claim(b, "v^L(s) increasing in s", c.increasing);
    claim(b, "v^L(s) crosses the 45-degree line at s=v^B", c.crossing_at_kink, "v^B=" + num(tf.kink_at));
    claim(b, "1 > slope below v^B > slope above v^B > 0",
          c.slopes_in_unit_interval && c.kink_ordering,
          "below=" + num(c.slope_below) + ", above=" + num(c.slope_above));
    return b;
}

FigureBundle fig8() {
    FigureBundle b{"fig8", {}, {}};
    auto noise = NoiseModel::uniform(0.085);
    const double vhat = 0.41;
    auto ma = uniform_model(0.6, 0.15);
    auto mb = uniform_model(0.6, 1.0);
    auto ca = noisy_price_curve(ma, noise, vhat, 512);
    auto cb = noisy_price_curve(mb, noise, vhat, 512);
    std::ostringstream a, bb;
    io::write_noisy_curve_csv(a, ca, noise.precision(), ma.q);
    io::write_noisy_curve_csv(bb, cb, noise.precision(), mb.q);
    b.files["fig8_panel_a.csv"] = a.str();
    b.files["fig8_panel_b.csv"] = bb.str();

    auto ia = detect_nonmonotonicity(ca);
    std::string where;
    bool near = false;
    for (const auto& iv : ia) {
        where += "[" + num(iv.s_lo) + "," + num(iv.s_hi) + "] ";
        if (iv.s_lo <= vhat + 0.085 && iv.s_hi >= vhat - 0.085) near = true;
    }
    claim(b, "panel a (q=0.15): price declines near s=vhat", near,
          ia.empty() ? "no decreasing interval" : "decreasing intervals: " + where);
    claim(b, "panel b (q=1): price monotone in s", detect_nonmonotonicity(cb).empty());
    double vb = solve_benchmark(ma).threshold;
    claim(b, "vhat = 0.41 > v^B", vhat > vb, "v^B=" + num(vb));
    return b;
}

}  // namespace

nlohmann::json FigureBundle::summary() const {
    nlohmann::json cl = nlohmann::json::array();
    bool all = true;
    for (const auto& c : claims) {
        cl.push_back({{"claim", c.claim}, {"pass", c.pass}, {"detail", c.detail}});
        all = all && c.pass;
    }
    nlohmann::json files_j = nlohmann::json::array();
    for (const auto& [name, _] : files) files_j.push_back(name);
    return {{"figure", id}, {"claims", cl}, {"all_pass", all}, {"files", files_j}};
}

const std::vector<std::string>& figure_ids() {
    static const std::vector<std::string> ids = {"fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8"};
    return ids;
}

FigureBundle reproduce_figure(const std::string& id) {
    if (id == "fig2") return fig2();
    if (id == "fig3") return fig3();
    if (id == "fig4") return fig4();
    if (id == "fig5") return fig5();
    if (id == "fig6") return fig6();
    if (id == "fig7") return fig7();
    if (id == "fig8") return fig8();
    throw ConfigError("unknown figure id '" + id + "'");
}

}  // namespace disclosure
