// Acceptance checks: one PASS/FAIL line per criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <boost/rational.hpp>
#include <CLI11.hpp>

#include "disclosure/equilibrium.hpp"
#include "disclosure/extensions.hpp"
#include "disclosure/oracle.hpp"

using namespace disclosure;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

ModelParams uni(double p, double q) { return make_params(p, q, ValueDistribution::uniform(0.0, 1.0)); }

const std::vector<double> kLatticeP = {0.3, 0.5, 0.7, 0.9};
const std::vector<double> kLatticeQ = {0.15, 0.4, 0.6, 0.75};

struct Report {
    bool pass = true;
    std::ostringstream detail;
    void check(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [fail: " << what << "]";
        }
    }
};

Report criterion1() {
    Report r;
    for (auto [p, target] : {std::pair{0.5, 0.414214}, std::pair{0.6, 0.387426}}) {
        auto t0 = Clock::now();
        double vb = solve_benchmark(uni(p, 0.5)).threshold;
        double dt = seconds_since(t0);
        r.detail << " p=" << p << " v^B=" << vb << " (" << dt * 1e3 << " ms)";
        r.check(std::fabs(vb - target) <= 1e-6, "v^B tolerance");
        r.check(dt < 0.010, "runtime");
    }
    return r;
}

Report criterion2() {
    Report r;
    using Q = boost::rational<long long>;
    Q pi = informed_given_silence(Q(3, 5), Q(2, 5));
    r.detail << " Pr(I|silence)=" << pi.numerator() << "/" << pi.denominator();
    r.check(Q(1) - pi == Q(5, 8), "Pr(U|silence) = 5/8");
    r.check(pi == Q(3, 8), "Pr(I|silence) = 3/8");
    auto m = uni(0.6, 0.4);
    const double vhat = 0.4;
    auto lo = joint_posterior(m, vhat - 0.01, vhat);
    auto hi = joint_posterior(m, vhat + 0.01, vhat);
    r.check(hi.pr_IV < lo.pr_IV, "Pr(V,I) falls");
    r.check(hi.pr_IN > lo.pr_IN, "Pr(N,I) rises");
    r.check(hi.pr_UV > lo.pr_UV, "Pr(V,U) rises");
    r.check(hi.pr_UN > lo.pr_UN, "Pr(N,U) rises");
    r.detail << " jumps IV " << hi.pr_IV - lo.pr_IV << " IN " << hi.pr_IN - lo.pr_IN << " UV "
             << hi.pr_UV - lo.pr_UV << " UN " << hi.pr_UN - lo.pr_UN;
    return r;
}

Report criterion3() {
    Report r;
    auto t0 = Clock::now();
    int cases = 0;
    double max_eq_gap = 0.0;
    for (double p : kLatticeP)
        for (double q : kLatticeQ) {
            auto m = uni(p, q);
            double vb = solve_benchmark(m).threshold;
            for (int k = -1; k <= 1; ++k) {
                double vhat = vb + 0.1 * k;
                auto c = price_curve(m, vhat, 201);
                double jump = c.right_limit_at_vhat - c.left_limit_at_vhat;
                if (k < 0) r.check(jump > 0.0, "right limit above left below v^B");
                if (k > 0) r.check(jump < 0.0, "right limit below left above v^B");
                if (k == 0) {
                    max_eq_gap = std::max(max_eq_gap, std::fabs(jump));
                    r.check(std::fabs(jump) <= 1e-9, "limits equal at v^B");
                }
                for (const auto& pt : c.grid) r.check(pt.price >= 0.0 && pt.price <= 1.0, "price in support");
                for (double s : {0.1, 0.5, 0.9}) {
                    const double h = 1e-5;
                    double sl = (nondisclosure_price_branch(m, s + h, vhat, Branch::le) -
                                 nondisclosure_price_branch(m, s - h, vhat, Branch::le)) / (2 * h);
                    double sg = (nondisclosure_price_branch(m, s + h, vhat, Branch::gt) -
                                 nondisclosure_price_branch(m, s - h, vhat, Branch::gt)) / (2 * h);
                    r.check(1.0 > sl && sl > sg && sg > 0.0, "branch slopes ordered");
                }
                ++cases;
            }
        }
    double dt = seconds_since(t0);
    r.check(dt < 5.0, "runtime");
    r.detail << " cases=" << cases << " max |jump| at v^B=" << max_eq_gap << " (" << dt << " s)";
    return r;
}

Report criterion4() {
    Report r;
    for (double p : kLatticeP)
        for (double q : kLatticeQ) {
            auto m = uni(p, q);
            double vb = solve_benchmark(m).threshold, ve = solve_early(m).threshold;
            r.check(vb < ve && ve < m.dist.mean(), "v^E in (v^B, mu)");
        }
    double prev = -1.0;
    std::ostringstream seq;
    for (int i = 1; i <= 9; ++i) {
        double ve = solve_early(uni(0.5, i / 10.0)).threshold;
        seq << (i > 1 ? "," : "") << ve;
        r.check(ve > prev, "v^E(q) increasing");
        prev = ve;
    }
    auto small = uni(0.5, 1e-6);
    double lim = std::fabs(solve_early(small).threshold - solve_benchmark(small).threshold);
    r.check(lim <= 1e-4, "q -> 0 limit");

    auto m = uni(0.9, 0.75);
    double ve = solve_early(m).threshold;
    auto c = price_curve(m, ve, 2001);
    r.check(c.right_limit_at_vhat < c.left_limit_at_vhat, "downward jump at v^E");
    int jumps = 0;
    for (std::size_t i = 1; i < c.grid.size(); ++i) {
        const auto& a = c.grid[i - 1];
        const auto& b = c.grid[i];
        if (a.branch != b.branch) continue;
        if (std::fabs(b.price - a.price) > 1.0001 * (b.s - a.s) + 1e-12) ++jumps;
    }
    r.check(jumps == 0, "no other jumps");
    r.detail << " v^E(q=.1..0.9)=" << seq.str() << " |v^E-v^B|(q=1e-6)=" << lim
             << " jump at v^E=" << c.right_limit_at_vhat - c.left_limit_at_vhat;
    return r;
}

Report criterion5() {
    Report r;
    double worst = 0.0;
    for (double q : {0.1, 0.5, 0.9}) {
        auto m = uni(0.5, q);
        double vb = solve_benchmark(m).threshold;
        worst = std::max(worst, std::fabs(solve_late(m, vb).v_late - vb));
    }
    r.check(worst <= 1e-9, "v^L(v^B) = v^B");

    for (double p : {0.5, 0.9}) {
        auto m = uni(p, 0.6);
        double vb = solve_benchmark(m).threshold;
        for (int i = 1; i < 40; ++i) {
            double s = i / 40.0;
            if (std::fabs(s - vb) < 1e-6) continue;
            double vl = solve_late(m, s, vb).v_late;
            r.check(s < vb ? vl > s : vl < s, "v^L(s) vs s");
            double lo_q = solve_late(m.with_q(0.3), s, vb).v_late;
            double hi_q = solve_late(m.with_q(0.7), s, vb).v_late;
            r.check(s < vb ? hi_q < lo_q : hi_q > lo_q, "q-monotonicity switch");
        }
        const double h = 1e-5;
        double below = (solve_late(m, vb - 0.05 + h, vb).v_late - solve_late(m, vb - 0.05 - h, vb).v_late) / (2 * h);
        double above = (solve_late(m, vb + 0.05 + h, vb).v_late - solve_late(m, vb + 0.05 - h, vb).v_late) / (2 * h);
        r.check(1.0 > below && below > above && above > 0.0, "kink slope ordering");
        r.detail << " p=" << p << " slopes " << below << " > " << above;
    }
    r.detail << " max|v^L(v^B)-v^B|=" << worst;
    return r;
}

Report criterion6() {
    Report r;
    auto t0 = Clock::now();
    const int N = 4000;
    auto audit_of = [&](const DiscreteGame& g, const std::string& name) {
        auto audit = oracle_solve_all_starts(g);
        r.check(audit.all_threshold_shaped, name + " threshold-shaped");
        r.check(audit.starts_agree, name + " starts agree");
        return audit;
    };
    auto scalar = [&](const std::string& name, const ModelParams& m, OracleMode mode, DynamicCosts costs,
                      double analytic) {
        auto g = DiscreteGame::make(m, mode, N, costs);
        auto audit = audit_of(g, name);
        double gap = 0.0;
        for (const auto& run : audit.runs) gap = std::max(gap, std::fabs(run.extracted_threshold - analytic));
        r.check(gap <= 2 * g.step, name + " within 2 steps");
        r.detail << " " << name << " gap=" << gap / g.step << "steps";
        return std::pair{g, audit};
    };

    auto mb = uni(0.5, 0.5);
    scalar("v^B", mb, OracleMode::benchmark, {}, solve_benchmark(mb).threshold);
    auto me = uni(0.9, 0.75);
    scalar("v^E", me, OracleMode::early, {}, solve_early(me).threshold);
    scalar("freq", mb, OracleMode::frequent, {0, 0, 0.5}, solve_frequent(mb, 0.5).threshold);

    auto ml = uni(0.5, 0.3);
    {
        auto g = DiscreteGame::make(ml, OracleMode::late, N);
        auto audit = audit_of(g, "v^L");
        double vb = solve_benchmark(ml).threshold, gap = 0.0;
        for (int k = 0; k < 16; ++k) {
            int j = (2 * k + 1) * N / 32;
            for (const auto& run : audit.runs)
                gap = std::max(gap, std::fabs(solve_late(ml, g.values[j], vb).v_late - run.late_thresholds[j]));
        }
        r.check(gap <= 2 * g.step, "v^L within 2 steps");
        r.detail << " v^L gap=" << gap / g.step << "steps";
    }
    {
        DynamicCosts costs{0.01, 0.05, 0.0};
        auto dyn = solve_dynamic(mb, costs);
        auto [g, audit] = scalar("dyn v^E", mb, OracleMode::dynamic, costs, dyn.threshold);
        double gap = 0.0;
        for (int k = 0; k < 16; ++k) {
            int j = (2 * k + 1) * N / 32;
            double an = std::min(late_threshold_with_cost(mb, g.values[j], costs.c_late, dyn.threshold).v_late,
                                 dyn.threshold);
            for (const auto& run : audit.runs) gap = std::max(gap, std::fabs(an - run.late_thresholds[j]));
        }
        r.check(gap <= 2 * g.step, "dynamic v^L within 2 steps");
        r.detail << " dyn v^L gap=" << gap / g.step << "steps";
    }
    double dt = seconds_since(t0);
    r.check(dt < 300.0, "runtime");
    r.detail << " (" << dt << " s)";
    return r;
}

Report criterion7() {
    Report r;
    auto m = uni(0.5, 0.5);
    auto none = solve_dynamic(m, {0.05, 0.01, 0.0});
    bool silent_early = none.threshold >= m.dist.hi();
    r.check(silent_early, "no early disclosure when c_early > c_late");
    std::vector<double> early, late;
    for (double ce : {0.005, 0.01, 0.02}) early.push_back(solve_dynamic(m, {ce, 0.05, 0.0}).threshold);
    const double s = 0.3;
    for (double cl : {0.03, 0.05, 0.07}) {
        auto d = solve_dynamic(m, {0.01, cl, 0.0});
        late.push_back(std::min(late_threshold_with_cost(m, s, cl, d.threshold).v_late, d.threshold));
    }
    r.check(early[0] < early[1] && early[1] < early[2], "v^E increasing in c_early");
    r.check(late[0] < late[1] && late[1] < late[2], "v^L increasing in c_late");
    r.detail << " v^E(c_E=.005,.01,.02)=" << early[0] << "," << early[1] << "," << early[2]
             << " v^L(s=0.3; c_L=.03,.05,.07)=" << late[0] << "," << late[1] << "," << late[2];
    return r;
}

Report criterion8() {
    Report r;
    auto m = uni(0.5, 0.5);
    double vb = solve_benchmark(m).threshold, ve = solve_early(m).threshold;
    double v0 = solve_frequent(m, 0.0).threshold;
    r.check(std::fabs(v0 - vb) <= 1e-9, "delta=0 gives v^B");
    double prev = vb;
    std::ostringstream seq;
    for (double d : {0.1, 0.5, 0.9}) {
        double v = solve_frequent(m, d).threshold;
        seq << " " << v;
        r.check(v > prev, "increasing in delta");
        r.check(v < ve, "below v^E");
        prev = v;
    }
    auto rep = price_path_analysis(m, PathMode::early, 0.5);
    r.check(rep.sign_pattern == "+,-,+,-", "sign pattern (+,-,+,-)");
    r.check(rep.s_dagger_found && rep.s_dagger > m.dist.lo() && rep.s_dagger < rep.v_tilde,
            "crossing signal in (v_min, v~E)");
    auto late = price_path_analysis(m, PathMode::late);
    r.check(late.min_gap > 0.0, "late P4 < P3");
    r.detail << " v~E(.1,.5,.9)=" << seq.str() << " v^E=" << ve << " pattern=" << rep.sign_pattern
             << " crossing=" << rep.s_dagger << " v~E(.5)=" << rep.v_tilde << " late min gap=" << late.min_gap;
    return r;
}

Report criterion9() {
    Report r;
    auto t0 = Clock::now();
    auto m = uni(0.6, 0.15);
    const double vhat = 0.41, a = 0.085;
    auto noise = NoiseModel::uniform(a);
    auto curve = noisy_price_curve(m, noise, vhat, 2048);
    auto drops = detect_nonmonotonicity(curve);
    bool near = false;
    std::ostringstream iv;
    for (const auto& d : drops) {
        iv << " [" << d.s_lo << "," << d.s_hi << "]";
        if (d.s_hi >= vhat - a && d.s_lo <= vhat + a) near = true;
    }
    r.check(near, "decreasing interval near s=0.41");
    auto full = noisy_price_curve(m.with_q(1.0), noise, vhat, 2048);
    r.check(detect_nonmonotonicity(full).empty(), "q=1 monotone");
    double vb = solve_benchmark(m).threshold;
    auto th = find_tau_hat(m, NoiseFamily::uniform, vhat);
    r.check(vhat > vb && th.found && std::isfinite(th.tau_hat), "finite tau-hat witness");
    double dt = seconds_since(t0);
    r.check(dt < 30.0, "runtime");
    r.detail << " drops:" << (drops.empty() ? std::string(" none") : iv.str()) << " tau=" << noise.precision()
             << " tau_hat=" << th.tau_hat << " (" << dt << " s)";
    return r;
}

Report criterion10() {
    Report r;
    auto m = uni(0.6, 0.4);
    auto est = monte_carlo_price(m, 0.4, 1000000, 20240601, 10);
    double z = (est.mean_price - m.dist.mean()) / est.stderr_price;
    r.check(std::fabs(z) <= 3.0, "unconditional mean");
    double worst = 0.0;
    int used = 0;
    for (const auto& b : est.bins) {
        if (b.empty) continue;
        ++used;
        double zb = b.mean_diff / b.stderr_diff;
        worst = std::max(worst, std::fabs(zb));
    }
    r.check(used == 10, "ten nonempty bins");
    r.check(worst <= 3.0, "bins within 3 stderr");
    r.detail << " z(mean)=" << z << " max bin |z|=" << worst;
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance checks"};
    int only = 0;
    app.add_option("--criterion", only, "run a single criterion (1-10)");
    CLI11_PARSE(app, argc, argv);

    const std::map<int, std::function<Report()>> criteria = {
        {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4}, {5, criterion5},
        {6, criterion6}, {7, criterion7}, {8, criterion8}, {9, criterion9}, {10, criterion10},
    };
    bool all = true;
    for (const auto& [id, fn] : criteria) {
        if (only && id != only) continue;
        Report rep;
        try {
            rep = fn();
        } catch (const std::exception& e) {
            rep.pass = false;
            rep.detail << " [exception: " << e.what() << "]";
        }
        std::printf("criterion %d: %s%s\n", id, rep.pass ? "PASS" : "FAIL", rep.detail.str().c_str());
        std::fflush(stdout);
        all = all && rep.pass;
    }
    return all ? 0 : 1;
}
