#include "nmq/app/simulation.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ostream>

#include "nmq/errors.hpp"

namespace nmq::app {

std::size_t plateau_start(std::span<const double> times) {
    if (times.empty()) throw DomainError("empty time series");
    const double cut = (1.0 - kPlateauWindow) * times.back() + kPlateauWindow * times.front();
    const auto it = std::lower_bound(times.begin(), times.end(), cut - 1e-12 * std::abs(cut));
    return static_cast<std::size_t>(it - times.begin());
}

PlateauReport plateau_report(std::span<const double> times, std::span<const double> coherence) {
    if (times.size() != coherence.size()) throw DomainError("series lengths differ");
    const std::size_t start = plateau_start(times);
    double sum = 0.0;
    double lo = coherence[start];
    double hi = coherence[start];
    for (std::size_t i = start; i < coherence.size(); ++i) {
        sum += coherence[i];
        lo = std::min(lo, coherence[i]);
        hi = std::max(hi, coherence[i]);
    }
    PlateauReport report;
    report.plateau_mean = sum / static_cast<double>(coherence.size() - start);
    if (hi == lo) {
        report.plateau_variation = 0.0;
    } else {
        report.plateau_variation = report.plateau_mean > 0.0
                                       ? (hi - lo) / report.plateau_mean
                                       : std::numeric_limits<double>::infinity();
    }
    report.trapped = report.plateau_variation < kPlateauVariation && report.plateau_mean > kPlateauFloor;
    return report;
}

SimulationResult run_simulation(const RunConfig& config) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();
    SimulationResult r;
    r.config = config;
    r.trajectory = config.adaptive ? solve_adaptive(config.spectral(), config.solver())
                                   : solve(config.spectral(), config.solver());
    r.series = observe(r.trajectory, config.state());
    r.markov = markov_constants(config.spectral());
    r.bound = analyze_bound_state(config.spectral());
    r.plateau = plateau_report(r.series.times, r.series.coherence);
    r.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

std::string format_number(double value) {
    if (value == 0.0) value = 0.0;  // drop the sign of -0
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

void write_csv(std::ostream& out, const SimulationResult& result) {
    const RunConfig& c = result.config;
    const bool amplitude = c.wants(Output::amplitude);
    const bool gamma = c.wants(Output::gamma);
    const bool omega = c.wants(Output::omega);
    const bool purity_col = c.wants(Output::purity);
    const bool coherence_col = c.wants(Output::coherence);
    const bool markov = c.wants(Output::markovian_baseline);

    out << "t";
    if (amplitude) out << ",re_b0,im_b0";
    if (gamma) out << ",gamma,gamma_valid";
    if (omega) out << ",omega_shift";
    if (purity_col) out << ",purity";
    if (coherence_col) out << ",coherence";
    if (markov) out << ",markov_purity,markov_coherence";
    out << '\n';

    const QubitState state = c.state();
    const auto& s = result.series;
    const auto& b0 = result.trajectory.b0;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i < s.times.size(); ++i) {
        const double t = s.times[i];
        out << format_number(t);
        if (amplitude) out << ',' << format_number(b0[i].real()) << ',' << format_number(b0[i].imag());
        if (gamma) {
            out << ',' << format_number(s.gamma_valid[i] ? s.gamma[i] : nan) << ','
                << (s.gamma_valid[i] ? '1' : '0');
        }
        if (omega) out << ',' << format_number(s.gamma_valid[i] ? s.omega_shift[i] : nan);
        if (purity_col) out << ',' << format_number(s.purity[i]);
        if (coherence_col) out << ',' << format_number(s.coherence[i]);
        if (markov) {
            out << ',' << format_number(markov_purity(state, result.markov, t)) << ','
                << format_number(markov_coherence(result.markov, t));
        }
        out << '\n';
    }
}

nlohmann::ordered_json markov_json(const MarkovConstants& markov) {
    return {{"gamma0", markov.gamma0},
            {"delta_omega", markov.delta_omega},
            {"omega_big0", markov.omega_big0}};
}

nlohmann::ordered_json bound_state_json(const BoundStateReport& report) {
    nlohmann::ordered_json j;
    j["exists"] = report.exists;
    j["condition_value"] = report.condition_value;
    j["energy"] = report.energy ? nlohmann::ordered_json(*report.energy) : nullptr;
    j["residue"] = report.residue ? nlohmann::ordered_json(*report.residue) : nullptr;
    j["residual"] = report.residual ? nlohmann::ordered_json(*report.residual) : nullptr;
    j["predicted_coherence"] = report.predicted_coherence;
    return j;
}

nlohmann::ordered_json plateau_json(const PlateauReport& report) {
    return {{"plateau_mean", report.plateau_mean},
            {"plateau_variation", std::isfinite(report.plateau_variation)
                                      ? nlohmann::ordered_json(report.plateau_variation)
                                      : nlohmann::ordered_json(nullptr)},
            {"trapped", report.trapped}};
}

nlohmann::ordered_json summary_json(const SimulationResult& r, bool include_timing) {
    const RunConfig& c = r.config;
    nlohmann::ordered_json j;
    j["label"] = c.label;
    j["params"] = {{"eta", c.eta}, {"omega_c", c.omega_c}, {"omega0", 1.0}, {"alpha_sq", c.alpha_sq}};
    j["solver"] = {{"t_max", c.t_max},
                   {"dt_requested", c.dt},
                   {"dt_used", r.trajectory.step},
                   {"nodes", r.trajectory.size()},
                   {"adaptive", c.adaptive},
                   {"tolerance", c.tolerance},
                   {"halvings", r.trajectory.halvings},
                   {"achieved_difference", c.adaptive ? nlohmann::ordered_json(r.trajectory.achieved_difference)
                                                      : nlohmann::ordered_json(nullptr)}};
    j["markov"] = markov_json(r.markov);
    j["bound_state"] = bound_state_json(r.bound);
    j["plateau"] = plateau_json(r.plateau);
    j["final"] = {{"coherence", r.series.coherence.back()}, {"purity", r.series.purity.back()}};
    if (include_timing) j["elapsed_seconds"] = r.elapsed_seconds;
    return j;
}

}  // namespace nmq::app
