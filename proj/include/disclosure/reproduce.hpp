#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace disclosure {

struct FigureClaim {
    std::string claim;
    bool pass = false;
    std::string detail;
};

struct FigureBundle {
    std::string id;
    std::map<std::string, std::string> files;  // file name -> CSV text
    std::vector<FigureClaim> claims;
    nlohmann::json summary() const;
};

const std::vector<std::string>& figure_ids();
// throws ConfigError for an unknown id
FigureBundle reproduce_figure(const std::string& id);

}  // namespace disclosure
