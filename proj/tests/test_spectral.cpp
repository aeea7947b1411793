#include "doctest.h"

#include <cmath>
#include <limits>

#include "nmq/errors.hpp"
#include "nmq/spectral.hpp"
#include "support/oracles.hpp"

using nmq::Complex;
using nmq::SpectralParams;

namespace {

const SpectralParams kFig1{0.08, 1.0, 1.0};
const SpectralParams kFig2{1.0, 1.0, 1.0};
const SpectralParams kFig3{0.08, 3.0, 1.0};

}  // namespace

TEST_CASE("density values") {
    CHECK(nmq::density(kFig1, 1.0) == doctest::Approx(0.0294304).epsilon(1e-6));
    CHECK(nmq::density(kFig1, 0.0) == 0.0);
    CHECK(nmq::density(kFig3, 0.0) == 0.0);
    CHECK(nmq::density(kFig2, 3.0) == doctest::Approx(1.344252).epsilon(1e-6));
    CHECK_THROWS_AS(nmq::density(kFig1, -1e-3), nmq::DomainError);
}

TEST_CASE("density is non-negative with its maximum at 3 wc") {
    for (const SpectralParams& p : {kFig1, kFig2, kFig3}) {
        const double peak = 3.0 * p.omega_c;
        for (int i = 0; i <= 2000; ++i) {
            const double w = 0.01 * i * p.omega_c;
            const double j = nmq::density(p, w);
            CHECK(j >= 0.0);
            CHECK(j <= nmq::density(p, peak) * (1.0 + 1e-15));
        }
        CHECK(nmq::density(p, peak - 1e-3) < nmq::density(p, peak));
        CHECK(nmq::density(p, peak + 1e-3) < nmq::density(p, peak));
    }
}

TEST_CASE("parameter validation") {
    CHECK_NOTHROW(SpectralParams{0.0, 1.0, 1.0}.validate());
    CHECK_THROWS_AS((SpectralParams{-0.1, 1.0, 1.0}.validate()), nmq::DomainError);
    CHECK_THROWS_AS((SpectralParams{0.1, 0.0, 1.0}.validate()), nmq::DomainError);
    CHECK_THROWS_AS((SpectralParams{0.1, 1.0, -1.0}.validate()), nmq::DomainError);
    CHECK_THROWS_AS((SpectralParams{std::nan(""), 1.0, 1.0}.validate()), nmq::DomainError);
}

TEST_CASE("kernel closed form values") {
    const Complex f0 = nmq::kernel(kFig1, 0.0);
    CHECK(f0.real() == doctest::Approx(0.48).epsilon(1e-14));
    CHECK(f0.imag() == 0.0);
    const Complex f1 = nmq::kernel(kFig1, 1.0);
    CHECK(std::abs(f1 - Complex(-0.12, 0.0)) < 1e-15);
    CHECK(std::abs(nmq::kernel(SpectralParams{0.0, 2.0, 1.0}, 3.0)) == 0.0);
    CHECK_THROWS_AS(nmq::kernel(kFig1, -0.5), nmq::DomainError);
}

TEST_CASE("kernel matches direct quadrature of the spectral density") {
    for (const SpectralParams& p : {kFig1, kFig2, kFig3}) {
        const double upper = 60.0 * p.omega_c;
        for (double x : {0.0, 0.3, 1.0, 2.5, 7.0, 20.0, 55.0, 100.0}) {
            const Complex direct = oracle::simpson(
                [&](double w) { return nmq::density(p, w) * std::polar(1.0, -w * x); }, 0.0, upper,
                2'000'000);
            CHECK(std::abs(direct - nmq::kernel(p, x)) < 1e-10);
        }
    }
}

TEST_CASE("kernel derivative matches a central difference") {
    for (double x : {0.0, 0.4, 3.0}) {
        const double d = 1e-5;
        const double x0 = std::max(x, d);
        const Complex fd = (nmq::kernel(kFig3, x0 + d) - nmq::kernel(kFig3, x0 - d)) / (2.0 * d);
        CHECK(std::abs(fd - nmq::kernel_derivative(kFig3, x0)) < 1e-5 * std::abs(fd) + 1e-9);
    }
}

TEST_CASE("level shift integral limits and oracle agreement") {
    CHECK(nmq::level_shift_integral(kFig2, -std::numeric_limits<double>::infinity()) == 0.0);
    CHECK(nmq::level_shift_integral(kFig2, -1e9) < 1e-8);
    CHECK(nmq::level_shift_integral(kFig2, -1e-10) == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(nmq::level_shift_at_threshold(kFig2) == 2.0);

    const double simpson = oracle::simpson(
        [](double w) { return nmq::density(kFig1, w) / (w + 1.0); }, 0.0, 50.0, 1'000'000);
    const double value = nmq::level_shift_integral(kFig1, -1.0);
    CHECK(std::abs(value - simpson) < 1e-8);
    CHECK(value == doctest::Approx(0.112292211014144).epsilon(1e-12));

    for (double s : {0.05, 0.7, 2.0, 5.0}) {
        CHECK(nmq::level_shift_integral(kFig3, -s) ==
              doctest::Approx(oracle::level_shift_closed_form(0.08, 3.0, s)).epsilon(1e-10));
    }
    CHECK_THROWS_AS(nmq::level_shift_integral(kFig1, 0.0), nmq::DomainError);
    CHECK_THROWS_AS(nmq::level_shift_integral(kFig1, 0.5), nmq::DomainError);
}

TEST_CASE("level shift integral increases toward the threshold") {
    for (const SpectralParams& p : {kFig1, kFig2, kFig3}) {
        double previous = nmq::level_shift_integral(p, -10.0);
        for (int i = 1; i <= 400; ++i) {
            const double e = -10.0 + i * (9.99 / 400.0);
            const double value = nmq::level_shift_integral(p, e);
            CHECK(value > previous);
            CHECK(value > 0.0);
            previous = value;
        }
    }
}

TEST_CASE("level shift derivative integral matches a finite difference") {
    const double e = -0.6;
    const double d = 1e-4;
    const double fd =
        (nmq::level_shift_integral(kFig2, e + d) - nmq::level_shift_integral(kFig2, e - d)) / (2 * d);
    CHECK(nmq::level_shift_derivative_integral(kFig2, e) == doctest::Approx(fd).epsilon(1e-7));
}

namespace {

// Symmetric exclusion of (w0 - eps, w0 + eps); the remainder is odd in eps.
double excluded_pv(const SpectralParams& p, double eps) {
    auto f = [&](double w) { return nmq::density(p, w) / (w - p.omega0); };
    const double upper = 60.0 * std::max(p.omega_c, p.omega0);
    return oracle::simpson(f, 0.0, p.omega0 - eps, 400'000) +
           oracle::simpson(f, p.omega0 + eps, upper, 4'000'000);
}

double richardson_pv(const SpectralParams& p) {
    const double eps = 0.08;
    double level[4];
    for (int i = 0; i < 4; ++i) level[i] = excluded_pv(p, eps / std::pow(2.0, i));
    // Eliminate eps, eps^3, eps^5 in turn.
    double factor = 2.0;
    for (int order = 0; order < 3; ++order) {
        for (int i = 0; i + 1 < 4 - order; ++i) {
            level[i] = (factor * level[i + 1] - level[i]) / (factor - 1.0);
        }
        factor *= 4.0;
    }
    return level[0];
}

}  // namespace

TEST_CASE("principal value shift") {
    CHECK(nmq::principal_value_shift(SpectralParams{0.0, 1.0, 1.0}) == 0.0);

    const double shift = nmq::principal_value_shift(kFig1);
    CHECK(std::abs(shift - richardson_pv(kFig1)) < 1e-6);
    CHECK(shift == doctest::Approx(oracle::lamb_shift_closed_form(0.08, 1.0)).epsilon(1e-10));
    CHECK(shift == doctest::Approx(0.264226009341195).epsilon(1e-10));

    CHECK(nmq::principal_value_shift(kFig3) ==
          doctest::Approx(oracle::lamb_shift_closed_form(0.08, 3.0)).epsilon(1e-10));

    SpectralParams doubled = kFig1;
    doubled.eta *= 2.0;
    CHECK(nmq::principal_value_shift(doubled) == doctest::Approx(2.0 * shift).epsilon(1e-12));
}
