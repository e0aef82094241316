#include <gtest/gtest.h>

#include <chrono>
#include <cmath>

#include "phasekit/dynamics.hpp"

using namespace phasekit;

namespace {

double sup_diff(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

struct Centroid {
    double q, p;
};

Centroid centroid(const WignerFunction& w) {
    double q = 0.0, p = 0.0, m = 0.0;
    for (std::size_t i = 0; i < w.n_q(); ++i)
        for (std::size_t j = 0; j < w.n_p(); ++j) {
            m += w(i, j);
            q += w(i, j) * w.grid().q[i];
            p += w(i, j) * w.grid().p[j];
        }
    return {q / m, p / m};
}

std::size_t steps_for(double t, double limit) {
    return static_cast<std::size_t>(std::ceil(std::abs(t) / limit));
}

// Closed-form free evolution of a minimum-uncertainty packet.
cplx free_packet(double x, double t, double q0, double p0, double sigma, double mass, double hbar) {
    const cplx spread(1.0, hbar * t / (2.0 * mass * sigma * sigma));
    const double xc = x - q0 - p0 * t / mass;
    const cplx env = std::exp(-xc * xc / (4.0 * sigma * sigma * spread));
    const double phase = p0 * (x - 0.5 * p0 * t / mass) / hbar;
    return std::pow(2.0 * pi * sigma * sigma, -0.25) / std::sqrt(spread) * env * std::polar(1.0, phase);
}

GridSpec harmonic_grid() { return GridSpec(-10.0, 10.0, 128); }

} // namespace

TEST(Hamiltonian, DerivativesAndDegree) {
    const PolynomialHamiltonian h(2.0, {1.0, -2.0, 0.5, 0.0, 0.25});
    EXPECT_EQ(h.degree(), 4u);
    const double q = 1.3;
    EXPECT_NEAR(h.potential_derivative(q, 0), 1 - 2 * q + 0.5 * q * q + 0.25 * std::pow(q, 4), 1e-14);
    EXPECT_NEAR(h.potential_derivative(q, 1), -2 + q + std::pow(q, 3), 1e-14);
    EXPECT_NEAR(h.potential_derivative(q, 3), 6 * q, 1e-14);
    EXPECT_NEAR(h.potential_derivative(q, 5), 0.0, 1e-14);
    EXPECT_NEAR(h.energy(q, 2.0), 1.0 + h.potential_derivative(q, 0), 1e-14);
    try {
        PolynomialHamiltonian(1.0, {0, 0, 0, 0, 0, 0, 0, 1.0});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::degree_too_high);
    }
    EXPECT_THROW(PolynomialHamiltonian(0.0, {}), Error);
}

TEST(Liouville, CflViolation) {
    const auto w = wigner_from_state(gaussian_packet(harmonic_grid(), 0.0, 0.0, 1.0));
    const auto h = PolynomialHamiltonian::harmonic();
    const double limit = cfl_limit(w.grid(), h);
    try {
        liouville_step(w, h, 2.0 * limit);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::cfl_violation);
    }
    EXPECT_NO_THROW(liouville_step(w, h, -limit));
}

TEST(Liouville, HarmonicFullPeriodReturns) {
    const auto w0 = wigner_from_state(gaussian_packet(harmonic_grid(), 1.5, 1.0, std::sqrt(0.5)));
    const auto h = PolynomialHamiltonian::harmonic();
    const double t = 2.0 * pi;
    const std::size_t n = steps_for(t, cfl_limit(w0.grid(), h));
    const auto res = evolve(w0, h, {t / n, n, Generator::liouville});
    EXPECT_LT(sup_diff(res.final.values(), w0.values()), 1e-4);
}

TEST(Liouville, HarmonicQuarterPeriodRotates) {
    // A wider box keeps W band-limited along p to well below the tolerance.
    const auto w0 = wigner_from_state(gaussian_packet(GridSpec(-14.0, 14.0, 128), 2.0, -1.0, 0.9));
    const auto h = PolynomialHamiltonian::harmonic();
    const double t = 0.5 * pi;
    const std::size_t n = steps_for(t, cfl_limit(w0.grid(), h));
    const auto c = centroid(evolve(w0, h, {t / n, n, Generator::liouville}).final);
    EXPECT_NEAR(c.q, -1.0, 1e-8);
    EXPECT_NEAR(c.p, -2.0, 1e-8);
}

TEST(Liouville, FreeShear) {
    const auto w0 = wigner_from_state(gaussian_packet(harmonic_grid(), -1.0, 1.5, 1.0));
    const auto h = PolynomialHamiltonian::free();
    const double dt = 0.9 * cfl_limit(w0.grid(), h);
    const auto before = centroid(w0);
    const auto after = centroid(liouville_step(w0, h, dt));
    EXPECT_NEAR(after.q - before.q, before.p * dt, 1e-10);
    EXPECT_NEAR(after.p, before.p, 1e-10);
}

TEST(Moyal, QuadraticEqualsLiouvilleBitwise) {
    const auto w0 = wigner_from_state(oscillator_state(harmonic_grid(), 1, 0.5, 0.5));
    const PolynomialHamiltonian h(1.3, {0.2, -0.4, 0.8});
    const double dt = 0.5 * cfl_limit(w0.grid(), h);
    const auto a = liouville_step(w0, h, dt);
    const auto b = moyal_step(w0, h, dt);
    EXPECT_EQ(sup_diff(a.values(), b.values()), 0.0);
}

TEST(Moyal, Reversibility) {
    const auto w0 = wigner_from_state(oscillator_state(harmonic_grid(), 2, 0.5, -0.5));
    const PolynomialHamiltonian h(1.0, {0.0, 0.0, -0.5, 0.0, 0.05, 0.0, 0.001});
    const double dt = 0.8 * cfl_limit(w0.grid(), h);
    const auto there = evolve(w0, h, {dt, 50, Generator::moyal}).final;
    const auto back = evolve(there, h, {-dt, 50, Generator::moyal}).final;
    EXPECT_LT(sup_diff(back.values(), w0.values()), 1e-8);
    const auto one = moyal_step(moyal_step(w0, h, dt), h, -dt);
    EXPECT_LT(sup_diff(one.values(), w0.values()), 1e-12);
}

TEST(Moyal, NormConservedOverThousandSteps) {
    const auto w0 = wigner_from_state(oscillator_state(GridSpec(-8.0, 8.0, 64), 1, 0.5, 0.0));
    const PolynomialHamiltonian h(1.0, {0.0, 0.0, 0.5, 0.0, 0.1});
    const double dt = 0.9 * cfl_limit(w0.grid(), h);
    for (auto gen : {Generator::liouville, Generator::moyal}) {
        const auto res = evolve(w0, h, {dt, 1000, gen});
        EXPECT_NEAR(res.final.total(), w0.total(), 1e-9);
    }
}

TEST(Moyal, QuarticMatchesWavefunctionOracle) {
    const GridSpec g(-8.0, 8.0, 128);
    const auto psi0 = gaussian_packet(g, 1.0, 0.0, std::sqrt(0.5));
    const auto w0 = wigner_from_state(psi0);
    const PolynomialHamiltonian h(1.0, {0.0, 0.0, 0.0, 0.0, 0.25});
    const double t = 1.0;
    const std::size_t n = steps_for(t, cfl_limit(w0.grid(), h));
    const auto start = std::chrono::steady_clock::now();
    const auto res = evolve(w0, h, {t / n, n, Generator::moyal});
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    RecordProperty("moyal_seconds", std::to_string(seconds));

    const auto oracle = wigner_from_state(evolve_wavefunction(psi0, h, t / 20000, 20000));
    const double err = sup_diff(res.final.values(), oracle.values());
    RecordProperty("sup_error", std::to_string(err));
    EXPECT_LT(err, 1e-3);
    EXPECT_LT(std::abs(purity(res.final) - purity(w0)), 1e-6);

    // The classical flow differs visibly: the hbar^2 term matters here.
    const auto classical = evolve(w0, h, {t / n, n, Generator::liouville}).final;
    EXPECT_GT(sup_diff(classical.values(), oracle.values()), 10.0 * err);
}

TEST(Wavefunction, FreeMatchesClosedForm) {
    const GridSpec g(-30.0, 30.0, 512);
    const HbarConfig hbar(0.8);
    const double q0 = -2.0, p0 = 1.2, sigma = 1.1, mass = 1.7, t = 2.5;
    const auto psi = evolve_wavefunction(gaussian_packet(g, q0, p0, sigma, hbar),
                                         PolynomialHamiltonian::free(mass), t / 10, 10);
    const Axis ax = g.position_axis();
    for (std::size_t k = 0; k < ax.count; ++k)
        EXPECT_NEAR(std::abs(psi.amplitudes()[k] - free_packet(ax[k], t, q0, p0, sigma, mass, 0.8)),
                    0.0, 1e-8);
    EXPECT_NEAR(psi.norm(), 1.0, 1e-10);
}

TEST(Wavefunction, CoherentStateFollowsOrbit) {
    const GridSpec g(-12.0, 12.0, 256);
    const auto psi0 = oscillator_state(g, 0, 2.0, 0.0);
    const auto h = PolynomialHamiltonian::harmonic();
    for (double t : {0.7, 1.9, 3.1}) {
        const auto psi = evolve_wavefunction(psi0, h, t / 2000, 2000);
        const auto mq = position_moments(psi);
        const auto mp = momentum_moments(psi);
        EXPECT_NEAR(mq.mean, 2.0 * std::cos(t), 1e-6);
        EXPECT_NEAR(mp.mean, -2.0 * std::sin(t), 1e-6);
        EXPECT_NEAR(mq.variance, 0.5, 1e-6);
        EXPECT_NEAR(psi.norm(), 1.0, 1e-10);
    }
}

TEST(Wavefunction, ReversibleAndContamination) {
    const GridSpec g(-12.0, 12.0, 256);
    const auto psi0 = oscillator_state(g, 1, 1.0, 0.5);
    const PolynomialHamiltonian h(1.0, {0.0, 0.0, 0.3, 0.0, 0.02});
    const auto there = evolve_wavefunction(psi0, h, 0.01, 300);
    const auto back = evolve_wavefunction(there, h, -0.01, 300);
    for (std::size_t k = 0; k < g.n_points(); ++k)
        EXPECT_NEAR(std::abs(back.amplitudes()[k] - psi0.amplitudes()[k]), 0.0, 1e-10);

    const auto runaway = gaussian_packet(g, 4.0, 5.0, 1.0);
    try {
        evolve_wavefunction(runaway, PolynomialHamiltonian::free(), 0.01, 400);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::boundary_contamination);
    }
}

TEST(PacketWidth, FreeSpreadingIsEvenInTime) {
    const GridSpec g(-32.0, 32.0, 512);
    const auto psi0 = gaussian_packet(g, 0.0, 0.0, 1.0);
    const auto h = PolynomialHamiltonian::free();
    const auto trace = packet_width_trace(psi0, h, {-2.0, 0.0, 2.0});
    EXPECT_NEAR(trace[0].sigma_q2, 2.0, 1e-3);
    EXPECT_NEAR(trace[1].sigma_q2, 1.0, 1e-12);
    EXPECT_NEAR(trace[2].sigma_q2, 2.0, 1e-3);

    std::vector<double> times;
    for (int i = 1; i <= 10; ++i) {
        times.push_back(0.37 * i);
        times.push_back(-0.37 * i);
    }
    const auto sym = packet_width_trace(psi0, h, times, 0.05);
    for (std::size_t i = 0; i < sym.size(); i += 2) {
        EXPECT_NEAR(sym[i].sigma_q2 - sym[i + 1].sigma_q2, 0.0, 1e-9);
        const double t = sym[i].t;
        EXPECT_NEAR(sym[i].sigma_q2, 1.0 + t * t / 4.0, 1e-8);
    }
}

TEST(Trajectory, SamplesAndRecording) {
    const auto w0 = wigner_from_state(gaussian_packet(harmonic_grid(), 0.0, 0.0, 1.0));
    const auto h = PolynomialHamiltonian::free();
    const double dt = 0.5 * cfl_limit(w0.grid(), h);
    const auto res = evolve(w0, h, {dt, 10, Generator::moyal}, 5);
    ASSERT_EQ(res.trajectory.size(), 3u);
    EXPECT_DOUBLE_EQ(res.trajectory[0].t, 0.0);
    EXPECT_NEAR(res.trajectory[0].sigma_q2, 1.0, 1e-9);
    EXPECT_NEAR(res.trajectory[2].t, 10 * dt, 1e-15);
    EXPECT_NEAR(res.trajectory[2].sigma_q2, 1.0 + std::pow(10 * dt, 2) / 4.0, 1e-9);
    EXPECT_NEAR(res.trajectory[2].purity, 1.0, 1e-9);
}
