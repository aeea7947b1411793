#pragma once

#include <vector>

#include "nmq/spectral.hpp"
#include "nmq/volterra.hpp"

namespace nmq {

/// Below this |b0| the ratio b0'/b0 is not trusted and the rates are flagged invalid.
inline constexpr double kAmplitudeGuard = 1e-12;

/// Initial pure state alpha|+> + beta|->.
struct QubitState {
    Complex alpha{1.0 / 1.4142135623730951, 0.0};
    Complex beta{1.0 / 1.4142135623730951, 0.0};

    void validate() const;
    double excited_weight() const { return std::norm(alpha); }

    /// Real non-negative weights with |alpha|^2 = alpha_sq.
    static QubitState from_excited_weight(double alpha_sq);
};

/// 2x2 reduced density matrix in the {|+>, |->} basis.
struct ReducedDensity {
    Complex rho11, rho12, rho21, rho22;

    Complex trace() const { return rho11 + rho22; }
    Complex determinant() const { return rho11 * rho22 - rho12 * rho21; }
    /// Tr rho^2 from the matrix entries.
    double trace_of_square() const;
};

struct DecayRates {
    std::vector<double> gamma;        ///< -2 Re[b0'/b0]
    std::vector<double> omega_shift;  ///< -2 Im[b0'/b0]
    std::vector<bool> valid;
};

struct ObservableSeries {
    std::vector<double> times;
    std::vector<double> gamma;
    std::vector<double> omega_shift;
    std::vector<double> purity;
    std::vector<double> coherence;
    std::vector<bool> gamma_valid;
};

DecayRates rates(const AmplitudeTrajectory& traj);

/// Throws DomainError when |b0| > 1 + 1e-9.
ReducedDensity reduced_density(const QubitState& state, Complex b0);

/// p = 2 |alpha|^4 |b0|^2 (|b0|^2 - 1) + 1.
double purity(const QubitState& state, Complex b0);

/// c = |b0|.
double decoherence_factor(Complex b0);

ObservableSeries observe(const AmplitudeTrajectory& traj, const QubitState& state);

}  // namespace nmq
