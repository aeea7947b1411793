#pragma once

#include <cstddef>
#include <vector>

#include "nmq/spectral.hpp"

namespace nmq {

struct SolverConfig {
    double t_max = 200.0;      ///< final time, units 1/w0
    double dt = 0.005;         ///< requested step; the grid uses t_max / ceil(t_max / dt)
    double tolerance = 1e-5;   ///< max node-wise deviation accepted by step halving

    void validate() const;
};

/// Excited-state amplitude b0(t) on a uniform grid, with db0 taken from the
/// right-hand side of the amplitude equation rather than from finite differences.
struct AmplitudeTrajectory {
    SpectralParams params;
    double step = 0.0;
    std::vector<double> times;
    std::vector<Complex> b0;
    std::vector<Complex> db0;

    /// Max node-wise difference against the next coarser grid (solve_adaptive only).
    double achieved_difference = -1.0;
    int halvings = 0;

    std::size_t size() const noexcept { return times.size(); }
};

/// Solves  b0' + i w0 b0 + int_0^t f(t - tau) b0(tau) dtau = 0,  b0(0) = 1.
///
/// The free phase is removed exactly (b0 = e^{-i w0 t} c) and c is advanced with the implicit
/// trapezoidal rule. The memory integral is the composite trapezoid over all past nodes plus
/// the Euler-Maclaurin endpoint term, which uses the analytic kernel slope and the current
/// derivative. Both are linear in the new value, so the implicit step is solved in closed form.
/// Second order overall; free evolution is reproduced to rounding.
///
/// Throws NumericalInstability naming the first node that turns non-finite.
AmplitudeTrajectory solve(const SpectralParams& params, const SolverConfig& config);

/// Runs solve at dt, dt/2, ... until two successive grids agree within config.tolerance on the
/// coarser nodes; at most max_halvings halvings. Returns the finest trajectory.
/// Agreement is measured on |b0|, which fixes every reported observable except Omega(t);
/// the phase accumulates an O(dt^2 t) drift that dominates the complex difference at long times.
/// Throws ConvergenceFailure carrying the last difference.
AmplitudeTrajectory solve_adaptive(const SpectralParams& params, const SolverConfig& config,
                                   int max_halvings = 6);

/// Max over coarse nodes of ||coarse.b0[i]| - |fine.b0[2i]||.
double max_coarse_difference(const AmplitudeTrajectory& coarse, const AmplitudeTrajectory& fine);

/// Memory integral at one node with the solver's quadrature (endpoint-corrected trapezoid),
/// evaluated directly from the stored b0 and db0 in the lab frame.
Complex memory_integral(const AmplitudeTrajectory& traj, std::size_t node);

}  // namespace nmq
