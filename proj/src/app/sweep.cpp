#include "nmq/app/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <ostream>
#include <thread>

#include "nmq/app/simulation.hpp"
#include "nmq/boundstate.hpp"

namespace nmq::app {

SweepAxis parse_axis(std::string_view name) {
    if (name == "eta") return SweepAxis::eta;
    if (name == "omega_c" || name == "omega-c") return SweepAxis::omega_c;
    throw ConfigError("unknown sweep axis '" + std::string(name) + "' (expected eta or omega_c)");
}

std::string_view to_string(SweepAxis axis) { return axis == SweepAxis::eta ? "eta" : "omega_c"; }

std::vector<double> parse_values(std::string_view text) {
    std::vector<double> values;
    while (!text.empty()) {
        const auto comma = text.find(',');
        std::string_view item = text.substr(0, comma);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        if (item.empty()) throw ConfigError("empty entry in value list");
        values.push_back(parse_number("values", item));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    if (values.empty()) throw ConfigError("sweep needs at least one value");
    return values;
}

namespace {

SweepRow sweep_point(SweepAxis axis, double value, const RunConfig& base) {
    SweepRow row;
    row.axis_value = value;
    RunConfig config = base;
    if (axis == SweepAxis::eta) {
        config.eta = value;
    } else {
        config.omega_c = value;
    }
    try {
        config.validate();
        const BoundCondition cond = condition(config.spectral());
        row.condition_value = cond.value;
        row.bound_exists = cond.exists;
        const SimulationResult result = run_simulation(config);
        row.energy = result.bound.energy;
        row.residue = result.bound.residue;
        row.plateau_mean = result.plateau.plateau_mean;
        row.trapped = result.plateau.trapped;
    } catch (const std::exception& e) {
        row.error = e.what();
        if (row.error.empty()) row.error = "unknown error";
    }
    return row;
}

std::string csv_field(std::string text) {
    if (text.find_first_of(",\"\n") == std::string::npos) return text;
    std::string quoted = "\"";
    for (char ch : text) {
        if (ch == '"') quoted += '"';
        quoted += ch == '\n' ? ' ' : ch;
    }
    return quoted + '"';
}

}  // namespace

std::vector<SweepRow> run_sweep(SweepAxis axis, const std::vector<double>& values,
                                const RunConfig& base, unsigned workers) {
    if (values.empty()) throw ConfigError("sweep needs at least one value");
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(values.size()));

    std::vector<SweepRow> rows(values.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < values.size(); i = next++) {
            rows[i] = sweep_point(axis, values[i], base);
        }
    };
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "axis_value,condition_value,bound_exists,energy,residue,plateau_mean,trapped,error\n";
    for (const SweepRow& r : rows) {
        out << format_number(r.axis_value) << ',' << format_number(r.condition_value) << ','
            << (r.bound_exists ? "true" : "false") << ','
            << (r.energy ? format_number(*r.energy) : "") << ','
            << (r.residue ? format_number(*r.residue) : "") << ',';
        if (r.ok()) {
            out << format_number(r.plateau_mean) << ',' << (r.trapped ? "true" : "false");
        } else {
            out << ',';
        }
        out << ',' << csv_field(r.error) << '\n';
    }
}

}  // namespace nmq::app
