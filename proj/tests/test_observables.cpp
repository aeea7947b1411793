#include "doctest.h"

#include <cmath>
#include <random>

#include "nmq/errors.hpp"
#include "nmq/observables.hpp"
#include "nmq/volterra.hpp"

using nmq::Complex;
using nmq::QubitState;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

QubitState random_state(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> phase(-M_PI, M_PI);
    const double a2 = unit(rng);
    return {std::polar(std::sqrt(a2), phase(rng)), std::polar(std::sqrt(1.0 - a2), phase(rng))};
}

Complex random_amplitude(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> phase(-M_PI, M_PI);
    return std::polar(unit(rng), phase(rng));
}

}  // namespace

TEST_CASE("rates for free evolution") {
    const auto traj = nmq::solve(nmq::SpectralParams{0.0, 1.0, 1.0}, nmq::SolverConfig{5.0, 0.01, 1e-5});
    const auto r = nmq::rates(traj);
    for (std::size_t n = 0; n < traj.size(); ++n) {
        CHECK(r.valid[n]);
        CHECK(std::abs(r.gamma[n]) < 1e-12);
        CHECK(r.omega_shift[n] == doctest::Approx(2.0).epsilon(1e-12));
    }
}

TEST_CASE("rates flag vanishing amplitudes") {
    nmq::AmplitudeTrajectory traj;
    traj.times = {0.0, 1.0, 2.0};
    traj.b0 = {Complex(1.0, 0.0), Complex(1e-13, 0.0), Complex(0.0, 0.0)};
    traj.db0 = {Complex(0.0, -1.0), Complex(-1e-14, 0.0), Complex(0.0, 0.0)};
    const auto r = nmq::rates(traj);
    CHECK(r.valid[0]);
    CHECK_FALSE(r.valid[1]);
    CHECK_FALSE(r.valid[2]);
}

TEST_CASE("reduced density examples") {
    const QubitState plus{Complex(kInvSqrt2, 0.0), Complex(kInvSqrt2, 0.0)};
    const auto rho0 = nmq::reduced_density(plus, Complex(1.0, 0.0));
    CHECK(rho0.rho11.real() == doctest::Approx(0.5));
    CHECK(rho0.rho12.real() == doctest::Approx(0.5));
    CHECK(rho0.rho21.real() == doctest::Approx(0.5));
    CHECK(rho0.rho22.real() == doctest::Approx(0.5));

    const auto ground = nmq::reduced_density(plus, Complex(0.0, 0.0));
    CHECK(ground.rho11 == Complex(0.0, 0.0));
    CHECK(ground.rho12 == Complex(0.0, 0.0));
    CHECK(ground.rho22 == Complex(1.0, 0.0));

    const auto half = nmq::reduced_density(plus, Complex(kInvSqrt2, 0.0));
    CHECK(half.rho11.real() == doctest::Approx(0.25));
    CHECK(std::abs(half.rho12) == doctest::Approx(0.353553).epsilon(1e-6));

    CHECK_THROWS_AS(nmq::reduced_density(plus, Complex(1.0 + 1e-6, 0.0)), nmq::DomainError);
    CHECK_NOTHROW(nmq::reduced_density(plus, Complex(1.0 + 1e-10, 0.0)));
}

TEST_CASE("purity and decoherence factor examples") {
    const QubitState plus{Complex(kInvSqrt2, 0.0), Complex(kInvSqrt2, 0.0)};
    CHECK(nmq::purity(plus, Complex(0.0, 1.0)) == doctest::Approx(1.0));
    CHECK(nmq::purity(plus, Complex(0.0, 0.0)) == 1.0);
    CHECK(nmq::purity(plus, Complex(kInvSqrt2, 0.0)) == doctest::Approx(0.875).epsilon(1e-14));
    CHECK_THROWS_AS(nmq::purity(plus, Complex(1.1, 0.0)), nmq::DomainError);

    CHECK(nmq::decoherence_factor(Complex(1.0, 0.0)) == 1.0);
    CHECK(nmq::decoherence_factor(Complex(0.0, 0.0)) == 0.0);
    CHECK(nmq::decoherence_factor(Complex(0.6, 0.3)) == doctest::Approx(0.670820).epsilon(1e-6));
}

TEST_CASE("state construction") {
    CHECK_THROWS_AS((QubitState{Complex(1.0, 0.0), Complex(0.1, 0.0)}.validate()), nmq::DomainError);
    const auto s = QubitState::from_excited_weight(0.3);
    CHECK(s.excited_weight() == doctest::Approx(0.3));
    CHECK_NOTHROW(s.validate());
    CHECK_THROWS_AS(QubitState::from_excited_weight(1.5), nmq::DomainError);
}

TEST_CASE("property: purity formula equals Tr rho^2 and rho is physical") {
    std::mt19937_64 rng(20091014);
    for (int trial = 0; trial < 5000; ++trial) {
        const QubitState state = random_state(rng);
        const Complex b = random_amplitude(rng);
        const auto rho = nmq::reduced_density(state, b);
        const double p = nmq::purity(state, b);
        CHECK(std::abs(p - rho.trace_of_square()) < 1e-12);
        CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
        CHECK(rho.rho21 == std::conj(rho.rho12));
        CHECK(rho.determinant().real() >= -1e-12);
        const double a4 = state.excited_weight() * state.excited_weight();
        CHECK(p >= 1.0 - 0.5 * a4 - 1e-12);
        CHECK(p <= 1.0 + 1e-12);
    }
}

TEST_CASE("property: c is state independent and p depends on |alpha|^2 only") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> phase(-M_PI, M_PI);
    for (int trial = 0; trial < 1000; ++trial) {
        const QubitState s = random_state(rng);
        const QubitState rotated{s.alpha * std::polar(1.0, phase(rng)), s.beta * std::polar(1.0, phase(rng))};
        const Complex b = random_amplitude(rng);
        CHECK(nmq::purity(s, b) == doctest::Approx(nmq::purity(rotated, b)).epsilon(1e-14));
    }
    // Minimum of p over |b|^2 sits at 1/2.
    const QubitState s = QubitState::from_excited_weight(0.8);
    const double at_half = nmq::purity(s, Complex(kInvSqrt2, 0.0));
    CHECK(at_half == doctest::Approx(1.0 - 0.5 * 0.64).epsilon(1e-14));
    for (double b = 0.0; b <= 1.0; b += 0.01) CHECK(nmq::purity(s, Complex(b, 0.0)) >= at_half - 1e-15);
}

TEST_CASE("observe assembles the series") {
    const auto traj = nmq::solve(nmq::SpectralParams{1.0, 1.0, 1.0}, nmq::SolverConfig{10.0, 0.01, 1e-5});
    const auto series = nmq::observe(traj, QubitState{});
    REQUIRE(series.times.size() == traj.size());
    for (std::size_t n = 0; n < traj.size(); ++n) {
        CHECK(series.coherence[n] == std::abs(traj.b0[n]));
        CHECK(series.purity[n] >= 0.5);
        CHECK(series.purity[n] <= 1.0 + 1e-12);
    }
    CHECK(series.gamma[0] == doctest::Approx(0.0));
}
