#include "nmq/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "nmq/errors.hpp"

namespace nmq {

namespace {

constexpr double kMaxNormDrift = 1e-6;

}  // namespace

Complex DiscretizedBath::kernel(double x) const {
    Complex sum(0.0, 0.0);
    for (std::size_t k = 0; k < n_modes(); ++k) {
        sum += couplings[k] * couplings[k] * std::polar(1.0, -frequencies[k] * x);
    }
    return sum;
}

double DiscretizedBath::recurrence_time() const { return 2.0 * std::numbers::pi / spacing; }

double FullAmplitudes::norm_squared() const {
    double n = std::norm(b0);
    for (const Complex& b : bk) n += std::norm(b);
    return n;
}

double default_bath_span(const SpectralParams& params) {
    return 20.0 * std::max(params.omega_c, params.omega0);
}

DiscretizedBath discretize(const SpectralParams& params, std::size_t n_modes, double omega_max) {
    params.validate();
    if (n_modes < 2) throw DomainError("a discretized bath needs at least two modes");
    if (!(omega_max > 0.0)) throw DomainError("omega_max must be > 0");

    DiscretizedBath bath;
    bath.params = params;
    bath.omega_max = omega_max;
    bath.spacing = omega_max / static_cast<double>(n_modes);
    bath.frequencies.resize(n_modes);
    bath.couplings.resize(n_modes);
    for (std::size_t k = 0; k < n_modes; ++k) {
        const double w = (static_cast<double>(k) + 0.5) * bath.spacing;
        bath.frequencies[k] = w;
        bath.couplings[k] = std::sqrt(density(params, w) * bath.spacing);
    }
    return bath;
}

DiscretizedBath discretize(const SpectralParams& params, std::size_t n_modes) {
    return discretize(params, n_modes, default_bath_span(params));
}

namespace {

// Star-shaped Hamiltonian: one qubit row/column coupled to a diagonal bath.
struct StarState {
    Complex b0;
    std::vector<Complex> bk;
};

Complex times_minus_i(Complex z) { return {z.imag(), -z.real()}; }

void derivative(const DiscretizedBath& bath, const StarState& s, StarState& out) {
    Complex coupling_sum(0.0, 0.0);
    const std::size_t n = bath.n_modes();
    for (std::size_t k = 0; k < n; ++k) {
        coupling_sum += bath.couplings[k] * s.bk[k];
        out.bk[k] = times_minus_i(bath.frequencies[k] * s.bk[k] + bath.couplings[k] * s.b0);
    }
    out.b0 = times_minus_i(bath.params.omega0 * s.b0 + coupling_sum);
}

}  // namespace

OracleTrajectory propagate(const DiscretizedBath& bath, double t_max, double dt,
                           std::size_t record_every) {
    if (!(t_max > 0.0) || !(dt > 0.0) || dt > t_max) {
        throw DomainError("propagate requires 0 < dt <= t_max");
    }
    if (record_every == 0) record_every = 1;
    const auto steps = static_cast<std::size_t>(std::ceil(t_max / dt - 1e-9));
    const double h = t_max / static_cast<double>(steps);
    const std::size_t n = bath.n_modes();

    StarState y{Complex(1.0, 0.0), std::vector<Complex>(n)};
    StarState k1{{}, std::vector<Complex>(n)}, k2 = k1, k3 = k1, k4 = k1, tmp = k1;

    OracleTrajectory out;
    out.times.push_back(0.0);
    out.b0.push_back(y.b0);

    auto axpy = [n](const StarState& base, double a, const StarState& d, StarState& res) {
        res.b0 = base.b0 + a * d.b0;
        for (std::size_t k = 0; k < n; ++k) res.bk[k] = base.bk[k] + a * d.bk[k];
    };

    for (std::size_t step = 1; step <= steps; ++step) {
        derivative(bath, y, k1);
        axpy(y, 0.5 * h, k1, tmp);
        derivative(bath, tmp, k2);
        axpy(y, 0.5 * h, k2, tmp);
        derivative(bath, tmp, k3);
        axpy(y, h, k3, tmp);
        derivative(bath, tmp, k4);

        const double w = h / 6.0;
        y.b0 += w * (k1.b0 + 2.0 * k2.b0 + 2.0 * k3.b0 + k4.b0);
        double norm = std::norm(y.b0);
        for (std::size_t k = 0; k < n; ++k) {
            y.bk[k] += w * (k1.bk[k] + 2.0 * k2.bk[k] + 2.0 * k3.bk[k] + k4.bk[k]);
            norm += std::norm(y.bk[k]);
        }
        const double drift = std::abs(norm - 1.0);
        out.max_norm_drift = std::max(out.max_norm_drift, drift);
        if (!(drift <= kMaxNormDrift)) {
            throw StepSizeError(drift, "unitarity drift " + std::to_string(drift) +
                                           " exceeds 1e-6 at step " + std::to_string(step) +
                                           "; reduce dt");
        }
        if (step % record_every == 0 || step == steps) {
            out.times.push_back(static_cast<double>(step) * h);
            out.b0.push_back(y.b0);
        }
    }
    out.final_state = FullAmplitudes{y.b0, std::move(y.bk)};
    return out;
}

}  // namespace nmq
