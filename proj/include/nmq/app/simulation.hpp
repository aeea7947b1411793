#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include <json.hpp>

#include "nmq/app/run_config.hpp"
#include "nmq/boundstate.hpp"
#include "nmq/markovian.hpp"
#include "nmq/observables.hpp"
#include "nmq/volterra.hpp"

namespace nmq::app {

/// Long-time behavior over the final quarter of the run.
struct PlateauReport {
    double plateau_mean = 0.0;
    double plateau_variation = 0.0;  ///< (max - min) / mean over the window
    bool trapped = false;            ///< variation < 0.01 and mean > 0.01
};

inline constexpr double kPlateauWindow = 0.25;
inline constexpr double kPlateauVariation = 0.01;
inline constexpr double kPlateauFloor = 0.01;

/// Index of the first node of the final-quarter window (t >= 0.75 t_end).
std::size_t plateau_start(std::span<const double> times);

/// Throws DomainError when the series is empty or the lengths differ.
PlateauReport plateau_report(std::span<const double> times, std::span<const double> coherence);

struct SimulationResult {
    RunConfig config;
    AmplitudeTrajectory trajectory;
    ObservableSeries series;
    MarkovConstants markov;
    BoundStateReport bound;
    PlateauReport plateau;
    double elapsed_seconds = 0.0;
};

/// Solve (adaptive unless config.adaptive is false), then derive every observable.
SimulationResult run_simulation(const RunConfig& config);

/// Locale-independent, 17 significant digits.
std::string format_number(double value);

/// Columns t, re_b0, im_b0, gamma, gamma_valid, omega_shift, purity, coherence,
/// markov_purity, markov_coherence, restricted to the configured outputs (t always first).
void write_csv(std::ostream& out, const SimulationResult& result);

nlohmann::ordered_json markov_json(const MarkovConstants& markov);
nlohmann::ordered_json bound_state_json(const BoundStateReport& report);
nlohmann::ordered_json plateau_json(const PlateauReport& report);
/// Everything except timing when include_timing is false.
nlohmann::ordered_json summary_json(const SimulationResult& result, bool include_timing = true);

}  // namespace nmq::app
