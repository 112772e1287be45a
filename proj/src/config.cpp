#include "disclosure/config.hpp"

#include <cctype>
#include <cmath>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <variant>

#include "disclosure/errors.hpp"

namespace disclosure {

namespace {

using Value = std::variant<double, std::string, std::vector<double>, bool>;

struct Cursor {
    std::string_view line;
    std::size_t pos = 0;
    int lineno = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ConfigError(msg, lineno, static_cast<int>(pos) + 1);
    }
    void skip_ws() {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    }
    bool at_end() {
        skip_ws();
        return pos >= line.size() || line[pos] == '#';
    }
    char peek() { return pos < line.size() ? line[pos] : '\0'; }
};

double parse_number(Cursor& c) {
    c.skip_ws();
    std::size_t start = c.pos;
    while (c.pos < c.line.size() &&
           (std::isdigit(static_cast<unsigned char>(c.line[c.pos])) || c.line[c.pos] == '.' ||
            c.line[c.pos] == '-' || c.line[c.pos] == '+' || c.line[c.pos] == 'e' ||
            c.line[c.pos] == 'E' || c.line[c.pos] == '_'))
        ++c.pos;
    std::string tok(c.line.substr(start, c.pos - start));
    std::erase(tok, '_');
    if (!tok.empty() && tok[0] == '+') tok.erase(0, 1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
        c.pos = start;
        c.fail("expected a number");
    }
    return v;
}

Value parse_value(Cursor& c) {
    c.skip_ws();
    char ch = c.peek();
    if (ch == '"') {
        std::size_t start = ++c.pos;
        while (c.pos < c.line.size() && c.line[c.pos] != '"') ++c.pos;
        if (c.pos >= c.line.size()) c.fail("unterminated string");
        std::string s(c.line.substr(start, c.pos - start));
        ++c.pos;
        return s;
    }
    if (ch == '[') {
        ++c.pos;
        std::vector<double> xs;
        c.skip_ws();
        if (c.peek() == ']') {
            ++c.pos;
            return xs;
        }
        while (true) {
            xs.push_back(parse_number(c));
            c.skip_ws();
            if (c.peek() == ',') {
                ++c.pos;
                continue;
            }
            if (c.peek() == ']') {
                ++c.pos;
                break;
            }
            c.fail("expected ',' or ']' in array");
        }
        return xs;
    }
    if (c.line.substr(c.pos, 4) == "true") {
        c.pos += 4;
        return true;
    }
    if (c.line.substr(c.pos, 5) == "false") {
        c.pos += 5;
        return false;
    }
    return parse_number(c);
}

struct Entry {
    Value value;
    int line;
    int column;
};

const std::map<std::string, std::set<std::string>>& schema() {
    static const std::map<std::string, std::set<std::string>> s = {
        {"model", {"p", "q", "dist", "params", "support"}},
        {"run", {"mode", "signal", "vhat", "delta", "cost_early", "cost_late", "grid", "oracle_grid",
                 "seed", "draws"}},
        {"noise", {"family", "half_width", "tau"}},
        {"output", {"path", "format"}},
    };
    return s;
}

template <class T>
const T& get_as(const Entry& e, const char* what) {
    if (auto* v = std::get_if<T>(&e.value)) return *v;
    throw ConfigError(std::string("wrong type for ") + what, e.line, e.column);
}

std::uint64_t to_count(const Entry& e, const char* what) {
    double v = get_as<double>(e, what);
    if (!(v >= 0) || v != std::floor(v) || v > 1e18)
        throw ConfigError(std::string(what) + " must be a nonnegative integer", e.line, e.column);
    return static_cast<std::uint64_t>(v);
}

}  // namespace

RunConfig parse_config(std::string_view text) {
    std::map<std::string, Entry> entries;  // "section.key"
    std::string section;
    std::istringstream in{std::string(text)};
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        Cursor c{raw, 0, lineno};
        if (c.at_end()) continue;
        if (c.peek() == '[') {
            std::size_t close = raw.find(']', c.pos);
            if (close == std::string::npos) c.fail("unterminated section header");
            std::string name = raw.substr(c.pos + 1, close - c.pos - 1);
            if (!schema().count(name)) c.fail("unknown section [" + name + "]");
            section = name;
            c.pos = close + 1;
            if (!c.at_end()) c.fail("trailing characters after section header");
            continue;
        }
        std::size_t kstart = c.pos;
        while (c.pos < raw.size() && (std::isalnum(static_cast<unsigned char>(raw[c.pos])) ||
                                      raw[c.pos] == '_' || raw[c.pos] == '-'))
            ++c.pos;
        std::string key = raw.substr(kstart, c.pos - kstart);
        if (key.empty()) c.fail("expected a key");
        int kcol = static_cast<int>(kstart) + 1;
        if (section.empty()) throw ConfigError("key '" + key + "' outside a section", lineno, kcol);
        if (!schema().at(section).count(key))
            throw ConfigError("unknown key '" + key + "' in [" + section + "]", lineno, kcol);
        c.skip_ws();
        if (c.peek() != '=') c.fail("expected '='");
        ++c.pos;
        Value v = parse_value(c);
        if (!c.at_end()) c.fail("trailing characters after value");
        std::string full = section + "." + key;
        if (entries.count(full)) throw ConfigError("duplicate key '" + key + "'", lineno, kcol);
        entries.emplace(full, Entry{std::move(v), lineno, kcol});
    }

    RunConfig cfg;
    auto has = [&](const char* k) { return entries.count(k) > 0; };
    auto num = [&](const char* k) { return get_as<double>(entries.at(k), k); };
    auto str = [&](const char* k) { return get_as<std::string>(entries.at(k), k); };
    if (has("model.p")) cfg.model.p = num("model.p");
    if (has("model.q")) cfg.model.q = num("model.q");
    if (has("model.dist")) cfg.model.dist = str("model.dist");
    if (has("model.params")) cfg.model.dist_params = get_as<std::vector<double>>(entries.at("model.params"), "model.params");
    if (has("model.support")) {
        const auto& e = entries.at("model.support");
        auto sup = get_as<std::vector<double>>(e, "model.support");
        if (sup.size() != 2) throw ConfigError("support must be [v_min, v_max]", e.line, e.column);
        cfg.model.lo = sup[0];
        cfg.model.hi = sup[1];
    }
    if (has("run.mode")) cfg.mode = str("run.mode");
    if (has("run.signal")) cfg.signal = num("run.signal");
    if (has("run.vhat")) cfg.vhat = num("run.vhat");
    if (has("run.delta")) cfg.delta = num("run.delta");
    if (has("run.cost_early")) cfg.cost_early = num("run.cost_early");
    if (has("run.cost_late")) cfg.cost_late = num("run.cost_late");
    if (has("run.grid")) cfg.grid = static_cast<int>(to_count(entries.at("run.grid"), "grid"));
    if (has("run.oracle_grid"))
        cfg.oracle_grid = static_cast<int>(to_count(entries.at("run.oracle_grid"), "oracle_grid"));
    if (has("run.seed")) cfg.seed = to_count(entries.at("run.seed"), "seed");
    if (has("run.draws")) cfg.draws = to_count(entries.at("run.draws"), "draws");
    if (has("noise.family") || has("noise.half_width") || has("noise.tau")) {
        NoiseSpec ns;
        if (has("noise.family")) ns.family = str("noise.family");
        if (has("noise.half_width")) ns.half_width = num("noise.half_width");
        if (has("noise.tau")) ns.tau = num("noise.tau");
        cfg.noise = ns;
    }
    if (has("output.path")) cfg.out_path = str("output.path");
    if (has("output.format")) cfg.format = str("output.format");
    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

ModelParams RunConfig::params() const {
    try {
        return make_params(model.p, model.q,
                           ValueDistribution::from_spec(model.dist, model.dist_params, model.lo, model.hi));
    } catch (const DomainError& e) {
        throw ConfigError(std::string("invalid model: ") + e.what());
    }
}

NoiseModel RunConfig::noise_model() const {
    NoiseSpec ns = noise.value_or(NoiseSpec{});
    try {
        NoiseFamily fam = ns.family == "triangular" ? NoiseFamily::triangular : NoiseFamily::uniform;
        if (ns.family != "uniform" && ns.family != "triangular")
            throw ConfigError("noise family must be uniform or triangular");
        if (ns.tau) return noise_with_precision(fam, *ns.tau);
        double a = ns.half_width.value_or(0.085);
        return fam == NoiseFamily::uniform ? NoiseModel::uniform(a) : NoiseModel::triangular(a);
    } catch (const DomainError& e) {
        throw ConfigError(std::string("invalid noise: ") + e.what());
    }
}

void RunConfig::validate() const {
    params();
    if (noise) noise_model();
    if (!(delta >= 0 && delta <= 1)) throw ConfigError("delta must lie in [0, 1]");
    if (cost_early < 0 || cost_late < 0) throw ConfigError("costs must be nonnegative");
    if (grid < 3) throw ConfigError("grid must be >= 3");
    if (format != "json" && format != "csv") throw ConfigError("format must be json or csv");
}

}  // namespace disclosure
