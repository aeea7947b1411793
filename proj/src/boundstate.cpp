#include "nmq/boundstate.hpp"

#include <cmath>
#include <string>

#include "nmq/errors.hpp"

namespace nmq {

namespace {

constexpr double kResidualTarget = 1e-12;
constexpr double kBracketLimit = 1e3;

}  // namespace

BoundCondition condition(const SpectralParams& params) {
    params.validate();
    const double value = params.omega0 - level_shift_at_threshold(params);
    return {value < 0.0, value};
}

double eigen_function(const SpectralParams& params, double energy) {
    return params.omega0 - level_shift_integral(params, energy);
}

double residue(const SpectralParams& params, double bound_energy) {
    if (!(bound_energy < 0.0)) {
        throw PreconditionError("residue requires a negative bound-state energy");
    }
    const double z = 1.0 / (1.0 + level_shift_derivative_integral(params, bound_energy));
    if (!std::isfinite(z)) throw QuadratureError("non-finite residue");
    return z;
}

BoundStateReport find_bound_state(const SpectralParams& params) {
    const BoundCondition cond = condition(params);
    if (!cond.exists) {
        throw PreconditionError("no bound state: w0 - 2 eta wc^3 / w0^2 = " +
                                std::to_string(cond.value) + " >= 0");
    }
    auto mismatch = [&](double e) { return eigen_function(params, e) - e; };

    // mismatch is strictly decreasing on E < 0 and tends to y(0) < 0 at the threshold.
    double hi = 0.0;
    double lo = -params.omega0;
    double f_lo = mismatch(lo);
    while (f_lo <= 0.0) {
        hi = lo;
        lo *= 2.0;
        if (-lo > kBracketLimit) {
            throw SearchFailure("bound-state bracket exceeded |E| = 1e3");
        }
        f_lo = mismatch(lo);
    }

    double mid = 0.5 * (lo + hi);
    double f_mid = mismatch(mid);
    for (int iter = 0; iter < 200 && std::abs(f_mid) > kResidualTarget; ++iter) {
        if (f_mid > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
        const double next = 0.5 * (lo + hi);
        if (next == lo || next == hi) break;
        mid = next;
        f_mid = mismatch(mid);
    }

    BoundStateReport report;
    report.exists = true;
    report.condition_value = cond.value;
    report.energy = mid;
    report.residual = std::abs(f_mid);
    report.residue = residue(params, mid);
    report.predicted_coherence = *report.residue;
    return report;
}

BoundStateReport analyze_bound_state(const SpectralParams& params) {
    const BoundCondition cond = condition(params);
    if (!cond.exists) {
        BoundStateReport report;
        report.condition_value = cond.value;
        return report;
    }
    return find_bound_state(params);
}

}  // namespace nmq
