#include "disclosure/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "disclosure/config.hpp"
#include "disclosure/equilibrium.hpp"
#include "disclosure/errors.hpp"
#include "disclosure/io.hpp"
#include "disclosure/oracle.hpp"
#include "disclosure/reproduce.hpp"

namespace disclosure::cli {

namespace {

using io::json;
using io::num;

struct Flags {
    std::string model;
    std::string mode;
    std::optional<double> signal, vhat, delta, cost_early, cost_late;
    std::optional<int> grid;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string format;
};

bool debug_enabled() {
    const char* lvl = std::getenv("DISCLOSURE_LOG_LEVEL");
    return lvl && (std::string(lvl) == "debug" || std::string(lvl) == "trace");
}

void add_common(CLI::App* sub, Flags& f) {
    sub->add_option("--model", f.model, "config file (TOML subset)");
    sub->add_option("--mode", f.mode, "solver or curve mode");
    sub->add_option("--signal", f.signal, "external signal s");
    sub->add_option("--vhat", f.vhat, "conjectured threshold");
    sub->add_option("--delta", f.delta, "discount factor");
    sub->add_option("--cost-early", f.cost_early, "early rescheduling cost");
    sub->add_option("--cost-late", f.cost_late, "late rescheduling cost");
    sub->add_option("--grid", f.grid, "grid size");
    sub->add_option("--seed", f.seed, "random seed");
    sub->add_option("--out", f.out, "output path (default stdout)");
    sub->add_option("--format", f.format, "csv or json");
}

RunConfig resolve(const Flags& f) {
    RunConfig cfg = f.model.empty() ? parse_config("") : load_config(f.model);
    if (!f.mode.empty()) cfg.mode = f.mode;
    if (f.signal) cfg.signal = *f.signal;
    if (f.vhat) cfg.vhat = *f.vhat;
    if (f.delta) cfg.delta = *f.delta;
    if (f.cost_early) cfg.cost_early = *f.cost_early;
    if (f.cost_late) cfg.cost_late = *f.cost_late;
    if (f.grid) {
        cfg.grid = *f.grid;
        cfg.oracle_grid = *f.grid;
    }
    if (f.seed) cfg.seed = *f.seed;
    if (!f.out.empty()) cfg.out_path = f.out;
    if (!f.format.empty()) cfg.format = f.format;
    cfg.validate();
    return cfg;
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
    if (cfg.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(cfg.out_path, std::ios::binary);
    if (!f) throw ConfigError("cannot write '" + cfg.out_path + "'");
    f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    auto params = cfg.params();
    EquilibriumResult r;
    const std::string& mode = cfg.mode.empty() ? std::string("benchmark") : cfg.mode;
    double tol = 1e-9;
    if (mode == "benchmark") {
        r = solve_benchmark(params);
    } else if (mode == "early") {
        r = solve_early(params);
    } else if (mode == "frequent") {
        r = solve_frequent(params, cfg.delta);
    } else if (mode == "late") {
        if (cfg.signal) {
            auto pt = solve_late(params, *cfg.signal);
            r.kind = EquilibriumKind::late;
            r.threshold = pt.v_late;
            r.residual = pt.residual;
            r.iterations = pt.iterations;
            r.bracket_lo = params.dist.lo();
            r.bracket_hi = params.dist.hi();
            r.regime_notes.push_back("regime " + to_string(pt.regime));
        } else {
            r.kind = EquilibriumKind::late;
            r.late = solve_late_curve(params, std::max(cfg.grid, 32));
            r.threshold = r.late->kink_at;
            for (const auto& pt : r.late->grid) r.residual = std::max(r.residual, pt.residual);
            r.bracket_lo = params.dist.lo();
            r.bracket_hi = params.dist.hi();
            tol = 1e-7;
        }
    } else if (mode == "dynamic") {
        r = solve_dynamic(params, {cfg.cost_early, cfg.cost_late, cfg.delta}, {false, cfg.grid});
        tol = 1e-7;
    } else {
        throw ConfigError("unknown solve mode '" + mode + "'");
    }
    if (cfg.format == "csv") {
        if (!r.late) throw ConfigError("csv output needs a threshold function (late curve or dynamic)");
        std::ostringstream s;
        io::write_threshold_csv(s, *r.late);
        emit(cfg, s.str(), out);
    } else {
        json j = io::to_json(r);
        j["params"] = io::to_json(params);
        emit(cfg, dump(j), out);
    }
    if (r.residual > tol) {
        err << "residual " << r.residual << " exceeds tolerance " << tol << "\n";
        return 2;
    }
    return 0;
}

double require_vhat(const RunConfig& cfg, const ModelParams& params) {
    if (cfg.vhat) return *cfg.vhat;
    return solve_benchmark(params).threshold;
}

int cmd_curve(const RunConfig& cfg, bool as_json, std::ostream& out) {
    auto params = cfg.params();
    const std::string& mode = cfg.mode.empty() ? std::string("price") : cfg.mode;
    std::ostringstream s;
    if (mode == "price") {
        auto c = price_curve(params, require_vhat(cfg, params), cfg.grid);
        if (as_json) {
            json pts = json::array();
            for (const auto& pt : c.grid)
                pts.push_back({{"s", pt.s}, {"price", pt.price}, {"branch", to_string(pt.branch)}});
            s << dump({{"vhat", c.vhat},
                       {"left_limit_at_vhat", c.left_limit_at_vhat},
                       {"right_limit_at_vhat", c.right_limit_at_vhat},
                       {"grid", pts}});
        } else {
            io::write_price_curve_csv(s, c);
        }
    } else if (mode == "beliefs") {
        double vhat = require_vhat(cfg, params);
        double pr_i = informed_given_silence(params, vhat);
        const double q = params.q;
        s << "s,branch,pr_IV,pr_IN,pr_UV,pr_UN,base_IV,base_IN,base_UV,base_UN\n";
        auto row = [&](double x, bool above) {
            auto b = joint_posterior_of(params.p, q, params.dist.cdf(vhat), above);
            s << num(x) << ',' << (above ? "gt" : "le") << ',' << num(b.pr_IV) << ','
              << num(b.pr_IN) << ',' << num(b.pr_UV) << ',' << num(b.pr_UN) << ','
              << num(q * pr_i) << ',' << num((1 - q) * pr_i) << ',' << num(q * (1 - pr_i)) << ','
              << num((1 - q) * (1 - pr_i)) << '\n';
        };
        const double lo = params.dist.lo(), hi = params.dist.hi();
        bool done_vhat = false;
        for (int i = 0; i < cfg.grid; ++i) {
            double x = lo + (hi - lo) * i / double(cfg.grid - 1);
            if (!done_vhat && x > vhat) {
                row(vhat, false);
                row(vhat, true);
                done_vhat = true;
            }
            if (x == vhat) continue;
            row(x, x > vhat);
        }
    } else if (mode == "expected") {
        double vhat = cfg.vhat ? *cfg.vhat : solve_early(params).threshold;
        s << "v,disclosure_price,expected_price,branch\n";
        const double lo = params.dist.lo(), hi = params.dist.hi();
        for (int i = 0; i < cfg.grid; ++i) {
            double v = lo + (hi - lo) * i / double(cfg.grid - 1);
            s << num(v) << ',' << num(v) << ',' << num(expected_nondisclosure_price(params, v, vhat))
              << ',' << (v > vhat ? "gt" : "le") << '\n';
        }
    } else if (mode == "late") {
        io::write_threshold_csv(s, solve_late_curve(params, std::max(cfg.grid, 32)));
    } else if (mode == "early-q") {
        double vb = solve_benchmark(params).threshold;
        s << "q,v_early,v_benchmark\n";
        for (int i = 1; i < cfg.grid - 1; ++i) {
            double q = i / double(cfg.grid - 1);
            s << num(q) << ',' << num(solve_early(params.with_q(q)).threshold) << ',' << num(vb) << '\n';
        }
    } else if (mode == "late-q") {
        double vb = solve_benchmark(params).threshold;
        std::vector<double> signals = cfg.signal ? std::vector<double>{*cfg.signal}
                                                 : std::vector<double>{0.20, vb, 0.65};
        s << "q,s,v_late\n";
        for (int i = 1; i < cfg.grid - 1; ++i) {
            double q = i / double(cfg.grid - 1);
            for (double sig : signals)
                s << num(q) << ',' << num(sig) << ',' << num(solve_late(params.with_q(q), sig, vb).v_late) << '\n';
        }
    } else if (mode == "noisy") {
        auto noise = cfg.noise_model();
        auto c = noisy_price_curve(params, noise, require_vhat(cfg, params), std::max(cfg.grid, 256));
        io::write_noisy_curve_csv(s, c, noise.precision(), params.q);
    } else {
        throw ConfigError("unknown curve mode '" + mode + "'");
    }
    emit(cfg, s.str(), out);
    return 0;
}

int cmd_reproduce(const std::string& id, const std::string& out_dir, std::ostream& out) {
    auto bundle = reproduce_figure(id);
    std::filesystem::path dir = out_dir.empty() ? std::filesystem::path(".") : std::filesystem::path(out_dir);
    std::filesystem::create_directories(dir);
    for (const auto& [name, text] : bundle.files) {
        std::ofstream f(dir / name, std::ios::binary);
        if (!f) throw ConfigError("cannot write '" + (dir / name).string() + "'");
        f << text;
    }
    json summary = bundle.summary();
    std::ofstream f(dir / (id + "_summary.json"), std::ios::binary);
    f << dump(summary);
    out << dump(summary);
    return 0;
}

int cmd_oracle_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    auto params = cfg.params();
    const std::string& mode = cfg.mode.empty() ? std::string("early") : cfg.mode;
    OracleMode om;
    if (mode == "benchmark") om = OracleMode::benchmark;
    else if (mode == "early") om = OracleMode::early;
    else if (mode == "late") om = OracleMode::late;
    else if (mode == "dynamic") om = OracleMode::dynamic;
    else if (mode == "frequent") om = OracleMode::frequent;
    else throw ConfigError("unknown oracle mode '" + mode + "'");
    DynamicCosts costs{cfg.cost_early, cfg.cost_late, cfg.delta};
    auto game = DiscreteGame::make(params, om, cfg.oracle_grid, costs);
    auto audit = oracle_solve_all_starts(game);
    const auto& ref = audit.runs.front();

    json analytic;
    double gap = 0.0;
    if (om == OracleMode::late) {
        double vb = solve_benchmark(params).threshold;
        for (int j = 0; j < game.size(); j += std::max(1, game.size() / 16))
            gap = std::max(gap, std::fabs(solve_late(params, game.values[j], vb).v_late - ref.late_thresholds[j]));
        analytic = {{"kind", "late"}, {"v_benchmark", vb}};
    } else {
        EquilibriumResult r;
        if (om == OracleMode::benchmark) r = solve_benchmark(params);
        else if (om == OracleMode::early) r = solve_early(params);
        else if (om == OracleMode::frequent) r = solve_frequent(params, cfg.delta);
        else r = solve_dynamic(params, costs);
        gap = std::fabs(r.threshold - ref.extracted_threshold);
        if (om == OracleMode::dynamic)
            for (int j = 0; j < game.size(); j += std::max(1, game.size() / 16)) {
                double an = std::min(late_threshold_with_cost(params, game.values[j], costs.c_late, r.threshold).v_late,
                                     r.threshold);
                gap = std::max(gap, std::fabs(an - ref.late_thresholds[j]));
            }
        analytic = io::to_json(r);
        analytic.erase("late_thresholds");
    }
    json runs = json::array();
    for (const auto& run : audit.runs) {
        json j = io::to_json(run, game);
        j.erase("late_thresholds");
        runs.push_back(j);
    }
    bool pass = audit.all_threshold_shaped && audit.starts_agree && gap <= 2.0 * game.step;
    json rep = {{"mode", mode},
                {"grid", game.size()},
                {"step", game.step},
                {"analytic", analytic},
                {"oracle_runs", runs},
                {"starts_spread", audit.max_spread},
                {"max_gap", gap},
                {"pass", pass}};
    emit(cfg, dump(rep), out);
    if (!pass) {
        err << "oracle disagreement: gap " << gap << " vs 2 steps " << 2.0 * game.step << "\n";
        return 2;
    }
    return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Disclosure-game equilibrium solver and verification oracle"};
    app.require_subcommand(1);
    Flags solve_f, curve_f, oracle_f;
    auto* solve = app.add_subcommand("solve", "solve an equilibrium threshold");
    add_common(solve, solve_f);
    auto* curve = app.add_subcommand("curve", "emit a price, belief or threshold curve");
    add_common(curve, curve_f);
    auto* repro = app.add_subcommand("reproduce", "reproduce a figure bundle");
    std::string fig_id, repro_out;
    repro->add_option("figure", fig_id, "fig2..fig8")->required();
    repro->add_option("--out", repro_out, "output directory");
    auto* oracle = app.add_subcommand("oracle-check", "compare analytic solvers with the grid oracle");
    add_common(oracle, oracle_f);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, er;
        int code = app.exit(e, o, er);
        out << o.str();
        err << er.str();
        return code == 0 ? 0 : 1;
    }

    bool debug = debug_enabled();
    if (debug) {
        for (const auto* sub : app.get_subcommands()) err << "[debug] subcommand " << sub->get_name() << "\n";
    }
    try {
        if (*solve) return cmd_solve(resolve(solve_f), out, err);
        if (*curve) return cmd_curve(resolve(curve_f), curve_f.format == "json", out);
        if (*repro) return cmd_reproduce(fig_id, repro_out, out);
        if (*oracle) return cmd_oracle_check(resolve(oracle_f), out, err);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return 1;
    } catch (const DomainError& e) {
        err << "invalid input: " << e.what() << "\n";
        return 1;
    } catch (const SolverError& e) {
        err << "solver error: " << e.what() << "\n";
        return 2;
    } catch (const OracleError& e) {
        err << "oracle error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        if (debug) err << "unexpected: ";
        err << e.what() << "\n";
        return 2;
    }
    return 1;
}

}  // namespace disclosure::cli
