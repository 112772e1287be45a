#include <doctest.h>

#include <cmath>
#include <numeric>

#include "disclosure/errors.hpp"
#include "disclosure/oracle.hpp"

using namespace disclosure;

namespace {
ModelParams uni(double p, double q) { return make_params(p, q, ValueDistribution::uniform(0.0, 1.0)); }
}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("grid weights sum to one") {
    auto g = DiscreteGame::make(make_params(0.5, 0.5, ValueDistribution::beta(2.0, 3.0)), OracleMode::early, 600);
    CHECK(std::accumulate(g.weights.begin(), g.weights.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(DiscreteGame::make(uni(0.5, 0.5), OracleMode::early, 100), DomainError);
}

TEST_CASE("benchmark limit of the early game") {
    auto m = uni(0.5, 1e-6);
    auto game = DiscreteGame::make(m, OracleMode::early, 1000);
    auto eq = oracle_solve(game, OracleStart::benchmark_threshold);
    CHECK(eq.is_threshold_shaped);
    CHECK(std::fabs(eq.extracted_threshold - solve_benchmark(m).threshold) <= 2 * game.step);
}

TEST_CASE("early oracle agrees with the analytic solver from every start") {
    auto m = uni(0.9, 0.75);
    auto game = DiscreteGame::make(m, OracleMode::early, 1000);
    auto audit = oracle_solve_all_starts(game);
    CHECK(audit.all_threshold_shaped);
    CHECK(audit.starts_agree);
    double ve = solve_early(m).threshold;
    for (const auto& run : audit.runs) {
        CHECK(std::fabs(run.extracted_threshold - ve) <= 2 * game.step);
        CHECK(run.extracted_threshold > solve_benchmark(m).threshold);
        CHECK(run.extracted_threshold < 0.5);
    }
}

TEST_CASE("late oracle matches the threshold function") {
    auto m = uni(0.5, 0.3);
    auto game = DiscreteGame::make(m, OracleMode::late, 800);
    auto eq = oracle_solve(game, OracleStart::benchmark_threshold);
    CHECK(eq.is_threshold_shaped);
    double vb = solve_benchmark(m).threshold;
    double gap = 0.0;
    for (int j = 0; j < game.size(); j += 40)
        gap = std::max(gap, std::fabs(solve_late(m, game.values[j], vb).v_late - eq.late_thresholds[j]));
    CHECK(gap <= 2 * game.step);
}

TEST_CASE("enumerated prices match the closed form") {
    auto m = uni(0.6, 0.4);
    auto game = DiscreteGame::make(m, OracleMode::early, 2000);
    auto st = state_from_thresholds(game, 0.4, {});
    auto pr = enumerate_prices(game, st);
    for (int j : {100, 700, 1500}) {
        double s = game.values[j];
        CHECK(pr.price[j] == doctest::Approx(nondisclosure_price(m, s, 0.4)).epsilon(2e-3));
    }
}

TEST_CASE("analytic equilibrium admits no profitable grid deviation") {
    auto m = uni(0.5, 0.5);
    auto game = DiscreteGame::make(m, OracleMode::early, 1000);
    auto st = state_from_thresholds(game, solve_early(m).threshold, {});
    CHECK(max_deviation_gain(game, st) <= game.step);
}

TEST_CASE("Monte Carlo rejects tiny samples") {
    CHECK_THROWS_AS(monte_carlo_price(uni(0.5, 0.5), 0.4, 100, 1), DomainError);
}

}
