#pragma once

#include <cstddef>
#include <vector>

#include "nmq/spectral.hpp"

namespace nmq {

/// Finite set of reservoir modes sampled on a midpoint grid of [0, omega_max],
/// with g_k^2 = J(w_k) dw. Couplings are real and non-negative.
struct DiscretizedBath {
    SpectralParams params;
    double omega_max = 0.0;
    double spacing = 0.0;
    std::vector<double> frequencies;
    std::vector<double> couplings;

    std::size_t n_modes() const noexcept { return frequencies.size(); }
    /// Sum_k g_k^2 e^{-i w_k x}: the bath's finite-sum memory kernel.
    Complex kernel(double x) const;
    /// Resolution-limited recurrence time 2 pi / dw.
    double recurrence_time() const;
};

/// Full one-excitation state |psi> = b0 |+, 0> + sum_k b_k |-, 1_k>.
struct FullAmplitudes {
    Complex b0;
    std::vector<Complex> bk;

    double norm_squared() const;
};

struct OracleTrajectory {
    std::vector<double> times;
    std::vector<Complex> b0;
    FullAmplitudes final_state;
    double max_norm_drift = 0.0;
};

/// Default span 20 max(wc, w0).
double default_bath_span(const SpectralParams& params);

/// Throws DomainError for n_modes < 2 or omega_max <= 0.
DiscretizedBath discretize(const SpectralParams& params, std::size_t n_modes, double omega_max);
DiscretizedBath discretize(const SpectralParams& params, std::size_t n_modes);

/// Classic RK4 for  b0' = -i w0 b0 - i sum g_k b_k,  b_k' = -i w_k b_k - i g_k b0,
/// starting from b0 = 1. b0 is recorded every record_every steps (and at the final step).
/// Throws StepSizeError when the norm drifts by more than 1e-6.
OracleTrajectory propagate(const DiscretizedBath& bath, double t_max, double dt,
                           std::size_t record_every = 1);

}  // namespace nmq
