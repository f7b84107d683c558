#include "grushin/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

namespace grushin {

const std::map<std::string, std::string>& Config::registry() {
    static const std::map<std::string, std::string> reg = {
        // model
        {"alpha", "0.5"},
        {"n", "9"},
        {"c_m", "1"},
        {"period", "6.2831853071795865"},
        {"workers", "2"},
        // distance-field grid
        {"grid.r_max", "4"},
        {"grid.nr", "161"},
        {"grid.nv", "161"},
        {"grid.v_min", "-0.5"},
        {"grid.v_max", "4.5"},
        {"grid.grading", "1"},
        {"grid.stencil", "16"},
        {"grid.tolerance", "0.08"},
        // geodesic pipeline
        {"geodesic.v_lo", "0.25"},
        {"geodesic.v_hi", "4"},
        {"geodesic.v_count", "5"},
        {"geodesic.pairs", "8"},
        {"geodesic.levels", "3"},
        {"geodesic.base_nr", "129"},
        {"geodesic.slope_tol", "0.01"},
        {"geodesic.dilation_tol", "0.02"},
        // volumes pipeline
        {"volumes.tau_min", "0.01"},
        {"volumes.tau_max", "3"},
        {"volumes.tau_count", "13"},
        {"volumes.ball_nr", "121"},
        {"volumes.ball_nv", "121"},
        {"volumes.bracket_samples", "12"},
        // spectrum pipeline
        {"spectrum.space", "ybar"},
        {"spectrum.lambda_max", "220"},
        {"spectrum.nr", "1501"},
        {"spectrum.grading", "1"},
        {"spectrum.truncation_radius", "0"},
        {"spectrum.k_max", "0"},
        {"spectrum.k_min", "-1"},
        // weyl pipeline
        {"weyl.law", "log"},
        {"weyl.exponent", "0"},
        {"weyl.source", "ideal"},
        {"weyl.ideal_jmax", "250000"},
        {"weyl.window_lo_frac", "0.1"},
        {"weyl.top_exclude", "0.1"},
        {"weyl.plateau_tol_power", "0.15"},
        {"weyl.plateau_tol_log", "0.03"},
        {"weyl.localized_r", "0.25"},
        {"weyl.localized_eps", "0.5"},
        // heat-trace pipeline. The quotient period here is a computational
        // device: wider quotients push the wrapped heat-kernel terms down;
        // 0 falls back to the global period.
        {"heattrace.period", "4"},
        {"heattrace.r2", "1"},
        {"heattrace.v1", "0"},
        {"heattrace.v2", "1"},
        {"heattrace.s_lo", "0.05"},
        {"heattrace.s_hi", "0.5"},
        {"heattrace.s_count", "13"},
        {"heattrace.tau_min", "0.03"},
        {"heattrace.tau_max", "3"},
        {"heattrace.tau_count", "17"},
        {"heattrace.grid_nodes", "3301"},
        {"heattrace.t_count", "17"},
        // covering checks
        {"covercheck.terms", "50"},
        {"covercheck.t_lo", "0.01"},
        {"covercheck.t_hi", "1"},
        {"covercheck.t_count", "9"},
        {"covercheck.r0", "0"},
        {"covercheck.s_lo", "0.1"},
        {"covercheck.s_hi", "0.3"},
        {"covercheck.s_count", "3"},
        {"covercheck.tail_terms", "8"},
    };
    return reg;
}

Config::Config() : values_(registry()) {}

Config Config::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    Config cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto notspace = [](unsigned char c) { return !std::isspace(c); };
        auto b = std::find_if(line.begin(), line.end(), notspace);
        if (b == line.end()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected key = value");
        auto trim = [&](std::string s) {
            auto l = std::find_if(s.begin(), s.end(), notspace);
            auto r = std::find_if(s.rbegin(), s.rend(), notspace).base();
            return l < r ? std::string(l, r) : std::string();
        };
        cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

void Config::set(const std::string& key, const std::string& value) {
    if (!registry().count(key))
        throw ConfigError("unknown config key: " + key);
    if (value.empty()) throw ConfigError("empty value for key: " + key);
    values_[key] = value;
    explicit_[key] = true;
}

bool Config::has_explicit(const std::string& key) const {
    auto it = explicit_.find(key);
    return it != explicit_.end() && it->second;
}

double Config::get_double(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("unknown config key: " + key);
    std::size_t pos = 0;
    double v;
    try {
        v = std::stod(it->second, &pos);
    } catch (const std::exception&) {
        throw ConfigError("key " + key + ": not a number: " + it->second);
    }
    if (pos != it->second.size())
        throw ConfigError("key " + key + ": trailing junk in " + it->second);
    return v;
}

int Config::get_int(const std::string& key) const {
    double v = get_double(key);
    int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
        throw ConfigError("key " + key + ": expected an integer");
    return i;
}

std::string Config::get_string(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("unknown config key: " + key);
    return it->second;
}

}  // namespace grushin
