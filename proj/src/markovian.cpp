#include "nmq/markovian.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "nmq/errors.hpp"

namespace nmq {

MarkovConstants markov_constants(const SpectralParams& params) {
    params.validate();
    MarkovConstants c;
    // 2 pi J(w0) = 2 pi eta w0 e^{-w0/wc}
    c.gamma0 = 2.0 * std::numbers::pi * params.eta * params.omega0 *
               std::exp(-params.omega0 / params.omega_c);
    c.delta_omega = principal_value_shift(params);
    c.omega_big0 = 2.0 * (params.omega0 - c.delta_omega);
    return c;
}

namespace {

void require_time(double t) {
    if (!(t >= 0.0)) throw DomainError("time must be >= 0, got " + std::to_string(t));
}

}  // namespace

Complex markov_amplitude(const MarkovConstants& consts, double t) {
    require_time(t);
    return std::exp(Complex(-0.5 * consts.gamma0 * t, -0.5 * consts.omega_big0 * t));
}

double markov_purity(const QubitState& state, const MarkovConstants& consts, double t) {
    require_time(t);
    const double a2 = state.excited_weight();
    const double decay = std::exp(-consts.gamma0 * t);
    return 2.0 * a2 * a2 * decay * (decay - 1.0) + 1.0;
}

double markov_coherence(const MarkovConstants& consts, double t) {
    require_time(t);
    return std::exp(-0.5 * consts.gamma0 * t);
}

}  // namespace nmq
