#include "nmq/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "nmq/errors.hpp"
#include "quadrature.hpp"

namespace nmq {

void SpectralParams::validate() const {
    if (!(eta >= 0.0) || !std::isfinite(eta)) {
        throw DomainError("coupling eta must be finite and >= 0, got " + std::to_string(eta));
    }
    if (!(omega_c > 0.0) || !std::isfinite(omega_c)) {
        throw DomainError("cutoff omega_c must be finite and > 0, got " + std::to_string(omega_c));
    }
    if (!(omega0 > 0.0) || !std::isfinite(omega0)) {
        throw DomainError("transition frequency omega0 must be finite and > 0, got " +
                          std::to_string(omega0));
    }
}

double density(const SpectralParams& params, double omega) {
    if (!(omega >= 0.0)) {
        throw DomainError("spectral density requires omega >= 0, got " + std::to_string(omega));
    }
    if (std::isinf(omega)) return 0.0;
    return params.eta * omega * omega * omega / (params.omega0 * params.omega0) *
           std::exp(-omega / params.omega_c);
}

double density_derivative(const SpectralParams& params, double omega) {
    const double w2 = omega * omega;
    return params.eta / (params.omega0 * params.omega0) * std::exp(-omega / params.omega_c) *
           (3.0 * w2 - w2 * omega / params.omega_c);
}

Complex kernel(const SpectralParams& params, double x) {
    if (!(x >= 0.0)) {
        throw DomainError("kernel requires a non-negative time difference, got " + std::to_string(x));
    }
    const double wc = params.omega_c;
    const Complex denom = Complex(1.0, wc * x);
    const Complex d2 = denom * denom;
    return 6.0 * params.eta * wc * wc * wc * wc / (params.omega0 * params.omega0) / (d2 * d2);
}

Complex kernel_derivative(const SpectralParams& params, double x) {
    if (!(x >= 0.0)) {
        throw DomainError("kernel requires a non-negative time difference, got " + std::to_string(x));
    }
    const double wc = params.omega_c;
    const Complex denom = Complex(1.0, wc * x);
    const Complex d2 = denom * denom;
    return Complex(0.0, -24.0 * params.eta * wc * wc * wc * wc * wc / (params.omega0 * params.omega0)) /
           (d2 * d2 * denom);
}

namespace {

double upper_split(const SpectralParams& params) {
    return 30.0 * std::max(params.omega_c, params.omega0);
}

// Splitting at the cutoff scale keeps both pieces well resolved by the Kronrod rule.
template <typename F>
double integrate_half_line(const SpectralParams& params, F&& f) {
    const double split = upper_split(params);
    return detail::integrate(f, 0.0, split) +
           detail::integrate(f, split, std::numeric_limits<double>::infinity());
}

void require_negative(double energy, const char* who) {
    if (!(energy < 0.0)) {
        throw DomainError(std::string(who) + " requires E < 0, got " + std::to_string(energy));
    }
}

}  // namespace

double level_shift_integral(const SpectralParams& params, double energy) {
    require_negative(energy, "level_shift_integral");
    if (params.is_free() || std::isinf(energy)) return 0.0;
    return integrate_half_line(params, [&](double w) { return density(params, w) / (w - energy); });
}

double level_shift_derivative_integral(const SpectralParams& params, double energy) {
    require_negative(energy, "level_shift_derivative_integral");
    if (params.is_free() || std::isinf(energy)) return 0.0;
    return integrate_half_line(params, [&](double w) {
        const double d = w - energy;
        return density(params, w) / (d * d);
    });
}

double level_shift_at_threshold(const SpectralParams& params) {
    const double wc = params.omega_c;
    return 2.0 * params.eta * wc * wc * wc / (params.omega0 * params.omega0);
}

double principal_value_shift(const SpectralParams& params) {
    if (params.is_free()) return 0.0;
    const double w0 = params.omega0;
    const double j0 = density(params, w0);
    const double dj0 = density_derivative(params, w0);
    const double cutoff = upper_split(params);

    // [J(w) - J(w0)] / (w - w0) is regular; its value at w0 is J'(w0).
    auto regular = [&](double w) {
        const double d = w - w0;
        if (std::abs(d) < 1e-7 * w0) return dj0;
        return (density(params, w) - j0) / d;
    };
    const double body = detail::integrate(regular, 0.0, w0) + detail::integrate(regular, w0, cutoff);
    const double remainder = j0 * std::log((cutoff - w0) / w0);
    const double tail = detail::integrate([&](double w) { return density(params, w) / (w - w0); },
                                          cutoff, std::numeric_limits<double>::infinity());
    return body + remainder + tail;
}

}  // namespace nmq
