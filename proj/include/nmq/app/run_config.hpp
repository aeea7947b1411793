#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nmq/observables.hpp"
#include "nmq/spectral.hpp"
#include "nmq/volterra.hpp"

namespace nmq::app {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Output { gamma, omega, purity, coherence, amplitude, markovian_baseline };

std::string_view to_string(Output output);
Output parse_output(std::string_view name);

struct RunConfig {
    double eta = 0.08;
    double omega_c = 1.0;
    double alpha_sq = 0.5;
    double t_max = 200.0;
    double dt = 0.005;
    double tolerance = 1e-5;
    /// When false, one solve at dt without the halving ladder.
    bool adaptive = true;
    std::string label = "run";
    std::vector<Output> outputs = {Output::gamma,     Output::omega,     Output::purity,
                                   Output::coherence, Output::amplitude, Output::markovian_baseline};

    /// Throws ConfigError.
    void validate() const;

    SpectralParams spectral() const { return {eta, omega_c, 1.0}; }
    SolverConfig solver() const { return {t_max, dt, tolerance}; }
    QubitState state() const { return QubitState::from_excited_weight(alpha_sq); }
    bool wants(Output output) const;
};

/// fig1: eta 0.08, wc 1; fig2: eta 1, wc 1; fig3: eta 0.08, wc 3. Also sets the label.
void apply_preset(RunConfig& config, std::string_view name);

/// Assigns one key. Keys: eta, omega_c, alpha_sq, t_max, dt, tolerance, adaptive, label,
/// outputs (comma separated), preset. Dashes and underscores are interchangeable.
void set_value(RunConfig& config, std::string_view key, std::string_view value);

/// Flat "key = value" lines; '#' starts a comment. A preset line is applied before the
/// other keys regardless of position, so explicit keys refine it.
void apply_config_text(RunConfig& config, std::string_view text);
void apply_config_file(RunConfig& config, const std::filesystem::path& path);

double parse_number(std::string_view key, std::string_view text);

}  // namespace nmq::app
