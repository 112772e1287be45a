#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "disclosure/cli.hpp"
#include "disclosure/config.hpp"
#include "disclosure/errors.hpp"

using namespace disclosure;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "disclosure_cli");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string write_tmp(const std::string& name, const std::string& text) {
    auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << text;
    return path.string();
}

const char* kModel = "[model]\np = 0.5\nq = 0.5\ndist = \"uniform\"\nsupport = [0.0, 1.0]\n";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("config parsing") {
    auto cfg = parse_config(std::string(kModel) + "[run]\nmode = \"late\"\nsignal = 0.42\n");
    CHECK(cfg.mode == "late");
    CHECK(*cfg.signal == 0.42);
    CHECK(cfg.params().p == 0.5);
}

TEST_CASE("config errors carry line and column") {
    try {
        parse_config("[model]\np = 0.5\nbogus = 1\n");
        FAIL("expected a config error");
    } catch (const ConfigError& e) {
        CHECK(e.line() == 3);
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config("[model]\np = 0.5\np = 0.6\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[model\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[model]\np = abc\n"), ConfigError);
}

TEST_CASE("solve benchmark") {
    auto path = write_tmp("dcli_model.toml", kModel);
    auto r = run({"solve", "--model", path, "--mode", "benchmark"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["threshold"].get<double>() == doctest::Approx(0.414214).epsilon(1e-6));
}

TEST_CASE("late solve near the benchmark signal") {
    auto r = run({"solve", "--mode", "late", "--signal", "0.42"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(std::fabs(j["threshold"].get<double>() - 0.414214) < 0.01);
}

TEST_CASE("malformed config exits with status 1") {
    auto path = write_tmp("dcli_bad.toml", "[model]\np = = 0.5\n");
    auto r = run({"solve", "--model", path});
    CHECK(r.code == 1);
    CHECK(r.err.find("line 2") != std::string::npos);
    CHECK(run({"solve", "--model", "/nonexistent/x.toml"}).code == 1);
    CHECK(run({"solve", "--mode", "sideways"}).code == 1);
    CHECK(run({"reproduce", "fig99"}).code == 1);
    CHECK(run({"bogus"}).code == 1);
}

TEST_CASE("invalid parameters exit with status 1") {
    auto path = write_tmp("dcli_p.toml", "[model]\np = 1.5\n");
    CHECK(run({"solve", "--model", path}).code == 1);
}

TEST_CASE("output is deterministic") {
    auto a = run({"curve", "--mode", "price", "--grid", "101"});
    auto b = run({"curve", "--mode", "price", "--grid", "101"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    auto c = run({"solve", "--mode", "dynamic", "--cost-early", "0.01", "--cost-late", "0.05", "--seed", "3"});
    auto d = run({"solve", "--mode", "dynamic", "--cost-early", "0.01", "--cost-late", "0.05", "--seed", "3"});
    CHECK(c.code == 0);
    CHECK(c.out == d.out);
}

TEST_CASE("price curve has one-sided rows at the conjecture") {
    auto r = run({"curve", "--mode", "price", "--vhat", "0.7", "--grid", "11"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string line, header;
    std::getline(in, header);
    CHECK(header == "s,price,branch");
    double left = -1, right = -1;
    while (std::getline(in, line)) {
        if (line.rfind("0.7,", 0) != 0) continue;
        double v = std::stod(line.substr(4, line.rfind(',') - 4));
        if (line.ends_with(",le")) left = v;
        if (line.ends_with(",gt")) right = v;
    }
    CHECK(left > right);
    CHECK(right > 0);
}

TEST_CASE("reproduce writes a bundle") {
    auto dir = std::filesystem::temp_directory_path() / "dcli_fig5";
    auto r = run({"reproduce", "fig5", "--out", dir.string()});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["all_pass"].get<bool>());
    CHECK(std::filesystem::exists(dir / "fig5_summary.json"));
}

}
