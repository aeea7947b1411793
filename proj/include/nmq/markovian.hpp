#pragma once

#include "nmq/observables.hpp"
#include "nmq/spectral.hpp"

namespace nmq {

/// Born-Markov coefficients: gamma0 = 2 pi J(w0), Omega0 = 2 (w0 - delta_omega).
struct MarkovConstants {
    double gamma0 = 0.0;
    double delta_omega = 0.0;
    double omega_big0 = 0.0;
};

MarkovConstants markov_constants(const SpectralParams& params);

/// b0(t) = exp(-i (w0 - dw) t - gamma0 t / 2). Throws DomainError for t < 0.
Complex markov_amplitude(const MarkovConstants& consts, double t);

/// p(t) = 2 |alpha|^4 e^{-gamma0 t} (e^{-gamma0 t} - 1) + 1.
double markov_purity(const QubitState& state, const MarkovConstants& consts, double t);

/// c(t) = e^{-gamma0 t / 2}.
double markov_coherence(const MarkovConstants& consts, double t);

}  // namespace nmq
