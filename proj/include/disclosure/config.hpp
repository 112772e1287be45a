#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "disclosure/beliefs.hpp"
#include "disclosure/extensions.hpp"

namespace disclosure {

struct ModelSpec {
    double p = 0.5;
    double q = 0.5;
    std::string dist = "uniform";
    std::vector<double> dist_params;
    double lo = 0.0;
    double hi = 1.0;
};

struct NoiseSpec {
    std::string family = "uniform";
    std::optional<double> half_width;
    std::optional<double> tau;
};

struct RunConfig {
    ModelSpec model;
    std::string mode;
    std::optional<double> signal;
    std::optional<double> vhat;
    double delta = 0.5;
    double cost_early = 0.0;
    double cost_late = 0.0;
    int grid = 201;
    int oracle_grid = 4000;
    std::uint64_t seed = 1;
    std::uint64_t draws = 100000;
    std::optional<NoiseSpec> noise;
    std::string out_path;
    std::string format = "json";

    ModelParams params() const;
    NoiseModel noise_model() const;
    // throws ConfigError
    void validate() const;
};

// TOML subset: [section], key = number | "string" | [numbers] | true/false, # comments
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

}  // namespace disclosure
