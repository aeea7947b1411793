#include "doctest.h"

#include <cmath>

#include "nmq/errors.hpp"
#include "nmq/oracle.hpp"
#include "nmq/volterra.hpp"

using nmq::Complex;
using nmq::SpectralParams;

TEST_CASE("discretization") {
    const auto free_bath = nmq::discretize(SpectralParams{0.0, 1.0, 1.0}, 100);
    for (double g : free_bath.couplings) CHECK(g == 0.0);

    const SpectralParams fig1{0.08, 1.0, 1.0};
    const auto bath = nmq::discretize(fig1, 2000, 20.0);
    CHECK(bath.n_modes() == 2000);
    CHECK(bath.spacing == doctest::Approx(0.01));
    CHECK(bath.frequencies.front() == doctest::Approx(0.005));
    double total = 0.0;
    for (double g : bath.couplings) {
        CHECK(g >= 0.0);
        total += g * g;
    }
    CHECK(std::abs(total - 0.48) < 1e-4);

    CHECK(nmq::default_bath_span(SpectralParams{0.08, 3.0, 1.0}) == 60.0);
    CHECK_THROWS_AS(nmq::discretize(fig1, 1, 20.0), nmq::DomainError);
    CHECK_THROWS_AS(nmq::discretize(fig1, 10, 0.0), nmq::DomainError);
}

TEST_CASE("finite-sum kernel reconstructs the closed form") {
    const SpectralParams fig1{0.08, 1.0, 1.0};
    const auto bath = nmq::discretize(fig1, 2000, 20.0);
    for (double x = 0.0; x <= 30.0; x += 0.25) {
        CHECK(std::abs(bath.kernel(x) - nmq::kernel(fig1, x)) < 1e-3);
    }
}

TEST_CASE("free propagation") {
    const auto bath = nmq::discretize(SpectralParams{0.0, 1.0, 1.0}, 50);
    const auto run = nmq::propagate(bath, 10.0, 0.001, 100);
    for (std::size_t i = 0; i < run.times.size(); ++i) {
        CHECK(std::abs(run.b0[i] - std::polar(1.0, -run.times[i])) < 1e-10);
    }
    for (const Complex& b : run.final_state.bk) CHECK(b == Complex(0.0, 0.0));
}

TEST_CASE("unitarity over a long run") {
    const auto bath = nmq::discretize(SpectralParams{0.08, 1.0, 1.0}, 2000);
    const auto run = nmq::propagate(bath, 30.0, 0.001, 1000);
    CHECK(run.times.size() == 31);
    CHECK(run.max_norm_drift < 1e-8);
    CHECK(std::abs(run.final_state.norm_squared() - 1.0) < 1e-8);
}

TEST_CASE("a step that is too large is rejected") {
    const auto bath = nmq::discretize(SpectralParams{0.08, 3.0, 1.0}, 200);
    try {
        nmq::propagate(bath, 5.0, 0.2);
        FAIL("expected StepSizeError");
    } catch (const nmq::StepSizeError& e) {
        CHECK(e.drift() > 1e-6);
    }
}

TEST_CASE("agreement improves with more modes, and breaks down after recurrence") {
    const SpectralParams fig2{1.0, 1.0, 1.0};
    // The reference must be finer than the mode-count effect being resolved (~1e-6).
    const auto traj = nmq::solve(fig2, nmq::SolverConfig{30.0, 0.0005, 1e-5});
    double previous = 1e9;
    for (std::size_t modes : {500, 1000, 2000}) {
        const auto run = nmq::propagate(nmq::discretize(fig2, modes), 30.0, 0.0005);
        double worst = 0.0;
        for (std::size_t n = 0; n < traj.size(); ++n) {
            worst = std::max(worst, std::abs(run.b0[n] - traj.b0[n]));
        }
        CHECK(worst <= previous);
        previous = worst;
    }

    // 50 modes on [0, 20]: recurrence time 2 pi / 0.4 ~ 15.7.
    const auto coarse = nmq::discretize(fig2, 50);
    const double recurrence = coarse.recurrence_time();
    CHECK(recurrence == doctest::Approx(15.70796).epsilon(1e-5));
    const auto long_traj = nmq::solve(fig2, nmq::SolverConfig{40.0, 0.005, 1e-5});
    const auto run = nmq::propagate(coarse, 40.0, 0.001, 5);
    double before = 0.0, after = 0.0;
    for (std::size_t n = 0; n < long_traj.size(); ++n) {
        const double err = std::abs(run.b0[n] - long_traj.b0[n]);
        if (long_traj.times[n] < 0.5 * recurrence) before = std::max(before, err);
        if (long_traj.times[n] > recurrence) after = std::max(after, err);
    }
    CHECK(after > 10.0 * before);
}
