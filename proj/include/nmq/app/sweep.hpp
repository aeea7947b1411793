#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nmq/app/run_config.hpp"

namespace nmq::app {

enum class SweepAxis { eta, omega_c };

SweepAxis parse_axis(std::string_view name);
std::string_view to_string(SweepAxis axis);

struct SweepRow {
    double axis_value = 0.0;
    double condition_value = 0.0;
    bool bound_exists = false;
    std::optional<double> energy;
    std::optional<double> residue;
    double plateau_mean = 0.0;
    bool trapped = false;
    std::string error;  ///< empty on success

    bool ok() const { return error.empty(); }
};

/// Comma separated list of numbers; throws ConfigError.
std::vector<double> parse_values(std::string_view text);

/// One full simulation per value. Rows come back in input order; workers == 0 means
/// one thread per hardware processor.
std::vector<SweepRow> run_sweep(SweepAxis axis, const std::vector<double>& values,
                                const RunConfig& base, unsigned workers = 0);

/// Columns axis_value, condition_value, bound_exists, energy, residue, plateau_mean,
/// trapped, error.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace nmq::app
