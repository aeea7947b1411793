#include "nmq/app/run_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

namespace nmq::app {

namespace {

constexpr std::pair<Output, std::string_view> kOutputNames[] = {
    {Output::gamma, "gamma"},         {Output::omega, "omega"},
    {Output::purity, "purity"},       {Output::coherence, "coherence"},
    {Output::amplitude, "amplitude"}, {Output::markovian_baseline, "markovian-baseline"},
};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::string normalize_key(std::string_view key) {
    std::string k(trim(key));
    std::replace(k.begin(), k.end(), '-', '_');
    return k;
}

bool parse_bool(std::string_view key, std::string_view value) {
    if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
    if (value == "false" || value == "0" || value == "no" || value == "off") return false;
    throw ConfigError("invalid boolean for " + std::string(key) + ": '" + std::string(value) + "'");
}

}  // namespace

std::string_view to_string(Output output) {
    for (const auto& [o, name] : kOutputNames) {
        if (o == output) return name;
    }
    return "?";
}

Output parse_output(std::string_view name) {
    const std::string_view n = trim(name);
    for (const auto& [o, s] : kOutputNames) {
        if (s == n) return o;
    }
    if (n == "markovian_baseline" || n == "markovian") return Output::markovian_baseline;
    throw ConfigError("unknown output '" + std::string(n) + "'");
}

double parse_number(std::string_view key, std::string_view text) {
    const std::string_view t = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
        throw ConfigError("invalid number for " + std::string(key) + ": '" + std::string(t) + "'");
    }
    return value;
}

void RunConfig::validate() const {
    auto require = [](bool ok, const std::string& message) {
        if (!ok) throw ConfigError(message);
    };
    require(std::isfinite(eta) && eta >= 0.0, "eta must be finite and >= 0");
    require(std::isfinite(omega_c) && omega_c > 0.0, "omega_c must be finite and > 0");
    require(alpha_sq >= 0.0 && alpha_sq <= 1.0, "alpha_sq must lie in [0, 1]");
    require(std::isfinite(t_max) && t_max > 0.0, "t_max must be finite and > 0");
    require(dt > 0.0 && dt <= t_max, "dt must satisfy 0 < dt <= t_max");
    require(tolerance > 0.0, "tolerance must be > 0");
    require(!label.empty() && label.find('/') == std::string::npos, "label must be a plain file stem");
}

bool RunConfig::wants(Output output) const {
    return std::find(outputs.begin(), outputs.end(), output) != outputs.end();
}

void apply_preset(RunConfig& config, std::string_view name) {
    const std::string_view n = trim(name);
    if (n == "fig1") {
        config.eta = 0.08;
        config.omega_c = 1.0;
    } else if (n == "fig2") {
        config.eta = 1.0;
        config.omega_c = 1.0;
    } else if (n == "fig3") {
        config.eta = 0.08;
        config.omega_c = 3.0;
    } else {
        throw ConfigError("unknown preset '" + std::string(n) + "' (expected fig1, fig2 or fig3)");
    }
    config.alpha_sq = 0.5;
    config.label = std::string(n);
}

void set_value(RunConfig& config, std::string_view key_in, std::string_view value_in) {
    const std::string key = normalize_key(key_in);
    const std::string_view value = trim(value_in);
    if (key == "eta") {
        config.eta = parse_number(key, value);
    } else if (key == "omega_c") {
        config.omega_c = parse_number(key, value);
    } else if (key == "alpha_sq") {
        config.alpha_sq = parse_number(key, value);
    } else if (key == "t_max") {
        config.t_max = parse_number(key, value);
    } else if (key == "dt") {
        config.dt = parse_number(key, value);
    } else if (key == "tolerance") {
        config.tolerance = parse_number(key, value);
    } else if (key == "adaptive") {
        config.adaptive = parse_bool(key, value);
    } else if (key == "label") {
        config.label = std::string(value);
    } else if (key == "preset") {
        apply_preset(config, value);
    } else if (key == "outputs") {
        std::vector<Output> outputs;
        std::string_view rest = value;
        while (!rest.empty()) {
            const auto comma = rest.find(',');
            const std::string_view item = trim(rest.substr(0, comma));
            if (!item.empty()) outputs.push_back(parse_output(item));
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
        config.outputs = std::move(outputs);
    } else {
        throw ConfigError("unknown config key '" + std::string(key_in) + "'");
    }
}

void apply_config_text(RunConfig& config, std::string_view text) {
    std::vector<std::pair<std::string, std::string>> entries;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view l = line;
        if (const auto hash = l.find('#'); hash != std::string_view::npos) l = l.substr(0, hash);
        l = trim(l);
        if (l.empty()) continue;
        const auto eq = l.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        entries.emplace_back(normalize_key(l.substr(0, eq)), std::string(trim(l.substr(eq + 1))));
    }
    for (const auto& [key, value] : entries) {
        if (key == "preset") set_value(config, key, value);
    }
    for (const auto& [key, value] : entries) {
        if (key != "preset") set_value(config, key, value);
    }
}

void apply_config_file(RunConfig& config, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    apply_config_text(config, text.str());
}

}  // namespace nmq::app
