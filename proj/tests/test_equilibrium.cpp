#include <doctest.h>

#include <cmath>

#include "disclosure/equilibrium.hpp"

using namespace disclosure;

namespace {
ModelParams uni(double p, double q) { return make_params(p, q, ValueDistribution::uniform(0.0, 1.0)); }
}  // namespace

TEST_SUITE("equilibrium") {

TEST_CASE("benchmark threshold closed form for uniform values") {
    // v = (1-p)/2 + p v^2/2 over (1 - p + p v)  =>  p v^2 + 2(1-p) v - (1-p) = 0
    for (double p : {0.3, 0.5, 0.6, 0.9}) {
        double exact = (-(1 - p) + std::sqrt((1 - p) * (1 - p) + p * (1 - p))) / p;
        auto r = solve_benchmark(uni(p, 0.5));
        CHECK(r.threshold == doctest::Approx(exact).epsilon(1e-10));
        CHECK(r.residual < 1e-9);
    }
    CHECK(solve_benchmark(uni(0.5, 0.5)).threshold == doctest::Approx(std::sqrt(2.0) - 1).epsilon(1e-10));
}

TEST_CASE("early threshold lies between benchmark and mean") {
    for (double p : {0.3, 0.5, 0.7, 0.9})
        for (double q : {0.15, 0.4, 0.6, 0.75}) {
            auto m = uni(p, q);
            double vb = solve_benchmark(m).threshold;
            double ve = solve_early(m).threshold;
            CHECK(ve > vb);
            CHECK(ve < 0.5);
        }
    CHECK(solve_early(uni(0.9, 0.75)).threshold == doctest::Approx(0.32014963536).epsilon(1e-8));
}

TEST_CASE("early threshold approaches benchmark as q vanishes") {
    auto m = uni(0.5, 1e-6);
    CHECK(std::fabs(solve_early(m).threshold - solve_benchmark(m).threshold) < 1e-4);
}

TEST_CASE("late threshold fixed point at the benchmark signal") {
    for (double q : {0.1, 0.5, 0.9}) {
        auto m = uni(0.5, q);
        double vb = solve_benchmark(m).threshold;
        CHECK(std::fabs(solve_late(m, vb).v_late - vb) < 1e-9);
    }
}

TEST_CASE("late threshold function shape") {
    auto m = uni(0.9, 0.6);
    auto tf = solve_late_curve(m, 201);
    auto chk = check_threshold_function(tf);
    CHECK(chk.increasing);
    CHECK(chk.slopes_in_unit_interval);
    CHECK(chk.kink_ordering);
    CHECK(chk.crossing_at_kink);
    double vb = solve_benchmark(m).threshold;
    for (const auto& pt : tf.grid) {
        if (pt.s < vb - 1e-6) CHECK(pt.v_late > pt.s);
        if (pt.s > vb + 1e-6) CHECK(pt.v_late < pt.s);
        CHECK(pt.residual < 1e-7);
    }
}

TEST_CASE("late threshold moves with q in opposite directions across the benchmark") {
    auto lo = uni(0.5, 0.3), hi = uni(0.5, 0.7);
    CHECK(solve_late(hi, 0.2).v_late < solve_late(lo, 0.2).v_late);
    CHECK(solve_late(hi, 0.65).v_late > solve_late(lo, 0.65).v_late);
}

TEST_CASE("frequent adjustment threshold") {
    auto m = uni(0.5, 0.5);
    double vb = solve_benchmark(m).threshold;
    double ve = solve_early(m).threshold;
    CHECK(std::fabs(solve_frequent(m, 0.0).threshold - vb) < 1e-9);
    double prev = vb;
    for (double d : {0.1, 0.5, 0.9}) {
        double v = solve_frequent(m, d).threshold;
        CHECK(v > prev);
        CHECK(v < ve);
        prev = v;
    }
    CHECK(solve_frequent(uni(0.5, 0.3), 0.5).threshold == doctest::Approx(0.416805741).epsilon(1e-8));
}

TEST_CASE("dynamic game with rescheduling costs") {
    auto m = uni(0.5, 0.5);
    auto r = solve_dynamic(m, {0.01, 0.05, 0.0});
    CHECK(r.threshold == doctest::Approx(0.48373614).epsilon(1e-6));
    REQUIRE(r.late);
    bool late_region = false;
    for (const auto& pt : r.late->grid) late_region |= pt.v_late < r.threshold;
    CHECK(late_region);

    auto none = solve_dynamic(m, {0.05, 0.01, 0.0});
    CHECK(none.threshold == doctest::Approx(m.dist.hi()));
    bool noted = false;
    for (const auto& n : none.regime_notes) noted |= n.find("no early disclosure") != std::string::npos;
    CHECK(noted);

    double e1 = solve_dynamic(m, {0.005, 0.05, 0.0}).threshold;
    double e2 = solve_dynamic(m, {0.01, 0.05, 0.0}).threshold;
    double e3 = solve_dynamic(m, {0.02, 0.05, 0.0}).threshold;
    CHECK(e1 < e2);
    CHECK(e2 < e3);
}

TEST_CASE("forced early reduces to the early game less its cost") {
    auto m = uni(0.5, 0.5);
    for (double v : {0.3, 0.45})
        CHECK(dynamic_indifference(m, {0.0, 1.0, 0.0}, v, true) ==
              doctest::Approx(early_indifference(m, v)).epsilon(1e-9));
}

TEST_CASE("price path after late disclosure") {
    auto m = uni(0.5, 0.5);
    auto rep = price_path_analysis(m, PathMode::late);
    CHECK(rep.min_gap > 0.0);
    auto early = price_path_analysis(m, PathMode::early, 0.5);
    CHECK(early.signs.size() == 4);
    CHECK(early.s_dagger_found);
    CHECK(early.s_dagger > 0.0);
    CHECK(early.s_dagger < early.v_tilde + 1e-3);
}

}
