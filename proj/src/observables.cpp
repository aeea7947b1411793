#include "nmq/observables.hpp"

#include <cmath>
#include <string>

#include "nmq/errors.hpp"

namespace nmq {

void QubitState::validate() const {
    const double norm = std::norm(alpha) + std::norm(beta);
    if (std::abs(norm - 1.0) > 1e-12) {
        throw DomainError("qubit state is not normalized: |alpha|^2 + |beta|^2 = " +
                          std::to_string(norm));
    }
}

QubitState QubitState::from_excited_weight(double alpha_sq) {
    if (!(alpha_sq >= 0.0 && alpha_sq <= 1.0)) {
        throw DomainError("alpha_sq must lie in [0, 1], got " + std::to_string(alpha_sq));
    }
    return {Complex(std::sqrt(alpha_sq), 0.0), Complex(std::sqrt(1.0 - alpha_sq), 0.0)};
}

double ReducedDensity::trace_of_square() const {
    // Tr rho^2 = sum_ij rho_ij rho_ji
    return (rho11 * rho11 + rho12 * rho21 + rho21 * rho12 + rho22 * rho22).real();
}

namespace {

void require_physical_amplitude(Complex b0) {
    if (std::abs(b0) > 1.0 + 1e-9) {
        throw DomainError("|b0| exceeds 1: " + std::to_string(std::abs(b0)));
    }
}

}  // namespace

DecayRates rates(const AmplitudeTrajectory& traj) {
    DecayRates out;
    const std::size_t n = traj.size();
    out.gamma.assign(n, 0.0);
    out.omega_shift.assign(n, 0.0);
    out.valid.assign(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(traj.b0[i]) < kAmplitudeGuard) continue;
        const Complex ratio = traj.db0[i] / traj.b0[i];
        out.gamma[i] = -2.0 * ratio.real();
        out.omega_shift[i] = -2.0 * ratio.imag();
        out.valid[i] = true;
    }
    return out;
}

ReducedDensity reduced_density(const QubitState& state, Complex b0) {
    require_physical_amplitude(b0);
    const double excited = state.excited_weight() * std::norm(b0);
    const Complex coherence = state.alpha * std::conj(state.beta) * b0;
    return {Complex(excited, 0.0), coherence, std::conj(coherence), Complex(1.0 - excited, 0.0)};
}

double purity(const QubitState& state, Complex b0) {
    require_physical_amplitude(b0);
    const double a2 = state.excited_weight();
    const double b2 = std::norm(b0);
    return 2.0 * a2 * a2 * b2 * (b2 - 1.0) + 1.0;
}

double decoherence_factor(Complex b0) { return std::abs(b0); }

ObservableSeries observe(const AmplitudeTrajectory& traj, const QubitState& state) {
    state.validate();
    DecayRates r = rates(traj);
    ObservableSeries s;
    s.times = traj.times;
    s.gamma = std::move(r.gamma);
    s.omega_shift = std::move(r.omega_shift);
    s.gamma_valid = std::move(r.valid);
    s.purity.reserve(traj.size());
    s.coherence.reserve(traj.size());
    for (const Complex& b : traj.b0) {
        s.purity.push_back(purity(state, b));
        s.coherence.push_back(decoherence_factor(b));
    }
    return s;
}

}  // namespace nmq
