#pragma once

#include <complex>

namespace nmq {

using Complex = std::complex<double>;

/// Super-Ohmic vacuum reservoir with exponential cutoff,
///   J(w) = eta * w^3 / w0^2 * exp(-w / wc).
/// Frequencies are in units of the qubit transition frequency, times in its inverse.
struct SpectralParams {
    double eta = 0.0;      ///< dimensionless coupling, >= 0
    double omega_c = 1.0;  ///< cutoff frequency, > 0
    double omega0 = 1.0;   ///< transition frequency, > 0

    /// Throws DomainError when any invariant is violated.
    void validate() const;

    bool is_free() const noexcept { return eta == 0.0; }
};

/// J(omega). Throws DomainError for omega < 0.
double density(const SpectralParams& params, double omega);

/// dJ/domega, used where the principal-value integrand meets its removable singularity.
double density_derivative(const SpectralParams& params, double omega);

/// Memory kernel f(x) = int_0^inf J(w) e^{-iwx} dw in closed form,
///   f(x) = 6 eta wc^4 / (w0^2 (1 + i wc x)^4).
Complex kernel(const SpectralParams& params, double x);

/// df/dx = -24 i eta wc^5 / (w0^2 (1 + i wc x)^5).
Complex kernel_derivative(const SpectralParams& params, double x);

/// int_0^inf J(w) / (w - E) dw for E < 0, by adaptive quadrature.
double level_shift_integral(const SpectralParams& params, double energy);

/// int_0^inf J(w) / (w - E)^2 dw for E < 0; the derivative of level_shift_integral in E.
double level_shift_derivative_integral(const SpectralParams& params, double energy);

/// Zeroth-inverse moment limit int_0^inf J(w)/w dw = 2 eta wc^3 / w0^2 (the E -> 0^- value).
double level_shift_at_threshold(const SpectralParams& params);

/// Lamb shift, the principal value P int_0^inf J(w) / (w - w0) dw.
double principal_value_shift(const SpectralParams& params);

}  // namespace nmq
