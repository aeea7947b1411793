#include "nmq/volterra.hpp"

#include <cmath>
#include <string>

#include "nmq/errors.hpp"

namespace nmq {

void SolverConfig::validate() const {
    if (!(t_max > 0.0) || !std::isfinite(t_max)) {
        throw DomainError("t_max must be finite and > 0, got " + std::to_string(t_max));
    }
    if (!(dt > 0.0) || !(dt <= t_max)) {
        throw DomainError("dt must satisfy 0 < dt <= t_max, got " + std::to_string(dt));
    }
    if (!(tolerance > 0.0)) {
        throw DomainError("tolerance must be > 0, got " + std::to_string(tolerance));
    }
}

namespace {

// Fixed-order four-lane reduction: deterministic, and fast enough for the O(N^2) history sum.
Complex history_dot(const double* kr, const double* ki, const double* cr, const double* ci,
                    std::size_t n) {
    double re[4] = {0.0, 0.0, 0.0, 0.0};
    double im[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        for (std::size_t l = 0; l < 4; ++l) {
            re[l] += kr[j + l] * cr[j + l] - ki[j + l] * ci[j + l];
            im[l] += kr[j + l] * ci[j + l] + ki[j + l] * cr[j + l];
        }
    }
    for (; j < n; ++j) {
        re[0] += kr[j] * cr[j] - ki[j] * ci[j];
        im[0] += kr[j] * ci[j] + ki[j] * cr[j];
    }
    return {(re[0] + re[1]) + (re[2] + re[3]), (im[0] + im[1]) + (im[2] + im[3])};
}

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

AmplitudeTrajectory solve(const SpectralParams& params, const SolverConfig& config) {
    params.validate();
    config.validate();

    const auto steps = static_cast<std::size_t>(std::ceil(config.t_max / config.dt - 1e-9));
    const double h = config.t_max / static_cast<double>(steps);
    const double w0 = params.omega0;
    const std::size_t n_nodes = steps + 1;

    AmplitudeTrajectory traj;
    traj.params = params;
    traj.step = h;
    traj.times.resize(n_nodes);
    traj.b0.resize(n_nodes);
    traj.db0.resize(n_nodes);
    for (std::size_t n = 0; n < n_nodes; ++n) traj.times[n] = static_cast<double>(n) * h;

    // With b0 = e^{-i w0 t} c the equation becomes c' = -int_0^t k(t - tau) c(tau) dtau with
    // k(x) = f(x) e^{i w0 x}. k is stored reversed so that the history sum for node m reads
    // k_{m-j}, j = 1..m-1, as a contiguous forward range.
    std::vector<double> krev_re(n_nodes), krev_im(n_nodes);
    for (std::size_t m = 0; m < n_nodes; ++m) {
        const double x = traj.times[m];
        const Complex k = kernel(params, x) * std::polar(1.0, w0 * x);
        krev_re[steps - m] = k.real();
        krev_im[steps - m] = k.imag();
    }
    auto kernel_slope = [&](double x) {
        return (kernel_derivative(params, x) + Complex(0.0, w0) * kernel(params, x)) *
               std::polar(1.0, w0 * x);
    };
    const double k0 = krev_re[steps];
    const double h2_12 = h * h / 12.0;

    // Memory integral at node m: trapezoid plus the Euler-Maclaurin endpoint term of
    // g(tau) = k(t_m - tau) c(tau),
    //   M_m = history_m + (h k0 / 2 + h^2/12 k'(0)) c_m - h^2/12 k0 c'_m
    //   history_m = h [k_m c_0 / 2 + sum_{j=1}^{m-1} k_{m-j} c_j] - h^2/12 k'(t_m) c_0
    // (c'_0 = 0). Since c'_m = -M_m, the implicit trapezoid step is linear in c_m.
    const double rhs_scale = 1.0 - h2_12 * k0;
    const Complex local = (0.5 * h * k0 + h2_12 * kernel_slope(0.0)) / rhs_scale;
    const Complex implicit_denominator = 1.0 + 0.5 * h * local;

    std::vector<double> c_re(n_nodes), c_im(n_nodes);
    c_re[0] = 1.0;
    c_im[0] = 0.0;
    Complex c_prev(1.0, 0.0);
    Complex rhs_prev(0.0, 0.0);

    traj.b0[0] = Complex(1.0, 0.0);
    traj.db0[0] = Complex(0.0, -w0);

    for (std::size_t m = 1; m < n_nodes; ++m) {
        const std::size_t offset = steps - m;
        const Complex k_m(krev_re[offset], krev_im[offset]);
        Complex history = 0.5 * k_m;
        if (m > 1) {
            history += history_dot(krev_re.data() + offset + 1, krev_im.data() + offset + 1,
                                   c_re.data() + 1, c_im.data() + 1, m - 1);
        }
        history = (h * history - h2_12 * kernel_slope(traj.times[m])) / rhs_scale;

        const Complex c = (c_prev + 0.5 * h * (rhs_prev - history)) / implicit_denominator;
        const Complex rhs = -local * c - history;
        if (!finite(c) || !finite(rhs)) {
            throw NumericalInstability(m, "non-finite amplitude at t = " +
                                              std::to_string(traj.times[m]));
        }
        c_re[m] = c.real();
        c_im[m] = c.imag();

        const Complex phase = std::polar(1.0, -w0 * traj.times[m]);
        traj.b0[m] = phase * c;
        traj.db0[m] = Complex(0.0, -w0) * traj.b0[m] + phase * rhs;

        c_prev = c;
        rhs_prev = rhs;
    }
    return traj;
}

double max_coarse_difference(const AmplitudeTrajectory& coarse, const AmplitudeTrajectory& fine) {
    if (fine.size() != 2 * coarse.size() - 1) {
        throw PreconditionError("fine grid does not refine the coarse grid by exactly two");
    }
    double diff = 0.0;
    for (std::size_t i = 0; i < coarse.size(); ++i) {
        diff = std::max(diff, std::abs(std::abs(coarse.b0[i]) - std::abs(fine.b0[2 * i])));
    }
    return diff;
}

AmplitudeTrajectory solve_adaptive(const SpectralParams& params, const SolverConfig& config,
                                   int max_halvings) {
    config.validate();
    SolverConfig current = config;
    AmplitudeTrajectory coarse = solve(params, current);
    double diff = 0.0;
    for (int halving = 1; halving <= max_halvings; ++halving) {
        current.dt = coarse.step / 2.0;
        AmplitudeTrajectory fine = solve(params, current);
        diff = max_coarse_difference(coarse, fine);
        if (diff <= config.tolerance) {
            fine.achieved_difference = diff;
            fine.halvings = halving;
            return fine;
        }
        coarse = std::move(fine);
    }
    throw ConvergenceFailure(diff, "step halving did not reach tolerance " +
                                       std::to_string(config.tolerance) + " after " +
                                       std::to_string(max_halvings) + " halvings; last difference " +
                                       std::to_string(diff));
}

Complex memory_integral(const AmplitudeTrajectory& traj, std::size_t node) {
    if (node >= traj.size()) throw DomainError("node index out of range");
    if (node == 0) return {0.0, 0.0};
    const SpectralParams& p = traj.params;
    const double t = traj.times[node];
    const double h = traj.step;
    Complex sum = 0.5 * (kernel(p, t) * traj.b0[0] + kernel(p, 0.0) * traj.b0[node]);
    for (std::size_t j = 1; j < node; ++j) {
        sum += kernel(p, t - traj.times[j]) * traj.b0[j];
    }
    // g(tau) = f(t - tau) b0(tau); trapezoid error term -h^2/12 [g'(t) - g'(0)].
    const Complex slope_end = -kernel_derivative(p, 0.0) * traj.b0[node] + kernel(p, 0.0) * traj.db0[node];
    const Complex slope_start = -kernel_derivative(p, t) * traj.b0[0] + kernel(p, t) * traj.db0[0];
    return h * sum - h * h / 12.0 * (slope_end - slope_start);
}

}  // namespace nmq
