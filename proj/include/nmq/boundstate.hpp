#pragma once

#include <optional>

#include "nmq/spectral.hpp"

namespace nmq {

/// Sign test for a real negative-energy eigenstate of qubit plus reservoir in the
/// one-excitation sector.
struct BoundCondition {
    bool exists = false;
    double value = 0.0;  ///< y(0) = w0 - 2 eta wc^3 / w0^2; a bound state exists iff < 0
};

struct BoundStateReport {
    bool exists = false;
    double condition_value = 0.0;
    std::optional<double> energy;    ///< E_b < 0
    std::optional<double> residue;   ///< Z in (0, 1)
    std::optional<double> residual;  ///< |y(E_b) - E_b|
    double predicted_coherence = 0.0;  ///< long-time plateau of |b0|; Z when bound, else 0
};

BoundCondition condition(const SpectralParams& params);

/// y(E) = w0 - int_0^inf J(w) / (w - E) dw, for E < 0.
double eigen_function(const SpectralParams& params, double energy);

/// Bisection for y(E) = E on E < 0. The lower bracket end doubles from -w0 until
/// y(E) - E > 0. Throws PreconditionError when no bound state exists and SearchFailure
/// when the bracket passes |E| = 1e3.
BoundStateReport find_bound_state(const SpectralParams& params);

/// Pole weight Z = [1 + int_0^inf J(w) / (w - E_b)^2 dw]^{-1}.
double residue(const SpectralParams& params, double bound_energy);

/// find_bound_state when the condition holds, otherwise a report with exists = false.
BoundStateReport analyze_bound_state(const SpectralParams& params);

}  // namespace nmq
