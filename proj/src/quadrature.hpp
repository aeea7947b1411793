#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <string>

#include "nmq/errors.hpp"

namespace nmq::detail {

inline constexpr double kQuadratureTolerance = 1e-10;
inline constexpr unsigned kQuadratureMaxDepth = 30;

/// Adaptive 31-point Gauss-Kronrod on [a, b]; b may be +infinity.
template <typename F>
double integrate(F&& integrand, double a, double b, double tolerance = kQuadratureTolerance) {
    double error = 0.0;
    double l1 = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        integrand, a, b, kQuadratureMaxDepth, tolerance * 1e-2, &error, &l1);
    if (!std::isfinite(value) || error > tolerance * std::max(1.0, l1)) {
        throw QuadratureError("adaptive quadrature did not converge on [" + std::to_string(a) +
                              ", " + std::to_string(b) + "], error estimate " +
                              std::to_string(error));
    }
    return value;
}

}  // namespace nmq::detail
