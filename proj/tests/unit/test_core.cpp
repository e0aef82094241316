#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "phasekit/core.hpp"

using namespace phasekit;

namespace {

GridSpec default_grid() { return GridSpec(-16.0, 16.0, 256); }

// Direct quadrature of the continuous transform, independent of the FFT path.
cplx direct_momentum_amplitude(const WaveFunction& psi, double p) {
    const Axis ax = psi.grid().position_axis();
    const double hbar = psi.hbar().hbar;
    cplx s{0.0, 0.0};
    const auto a = psi.amplitudes();
    for (std::size_t k = 0; k < ax.count; ++k) s += a[k] * std::polar(1.0, -p * ax[k] / hbar);
    return s * ax.step / std::sqrt(2.0 * pi * hbar);
}

double normal_pdf(double x, double mean, double sd) {
    return std::exp(-0.5 * (x - mean) * (x - mean) / (sd * sd)) / (sd * std::sqrt(2.0 * pi));
}

} // namespace

TEST(GridSpec, RejectsBadGrids) {
    EXPECT_THROW(GridSpec(1.0, 1.0, 64), Error);
    EXPECT_THROW(GridSpec(0.0, 1.0, 4), Error);
    EXPECT_THROW(GridSpec(0.0, 1.0, 100), Error);
    try {
        GridSpec(0.0, 1.0, 100);
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::invalid_grid);
    }
}

TEST(GridSpec, MomentumGridIsConjugate) {
    const GridSpec g(-10.0, 10.0, 128);
    const HbarConfig hbar(0.5);
    const Axis p = g.momentum_axis(hbar);
    EXPECT_NEAR(p.step, 2.0 * pi * 0.5 / (128 * g.dq()), 1e-15);
    EXPECT_DOUBLE_EQ(p[64], 0.0);
    EXPECT_EQ(p.count, 128u);
}

TEST(HbarConfig, MustBePositive) {
    EXPECT_THROW(HbarConfig(0.0), Error);
    EXPECT_THROW(HbarConfig(-1.0), Error);
    EXPECT_DOUBLE_EQ(HbarConfig().hbar, 1.0);
}

TEST(GaussianPacket, GroundMoments) {
    const auto psi = gaussian_packet(default_grid(), 0.0, 0.0, 1.0);
    EXPECT_NEAR(psi.norm(), 1.0, 1e-12);
    const auto q = position_moments(psi);
    const auto p = momentum_moments(psi);
    EXPECT_NEAR(q.mean, 0.0, 1e-12);
    EXPECT_NEAR(p.mean, 0.0, 1e-12);
    EXPECT_NEAR(q.variance, 1.0, 1e-9);
    EXPECT_NEAR(p.variance, 0.25, 1e-9);
    EXPECT_NEAR(std::sqrt(q.variance * p.variance), 0.5, 1e-9);
}

TEST(GaussianPacket, DisplacedBoostedMeans) {
    const auto psi = gaussian_packet(default_grid(), 2.0, 3.0, 0.5);
    EXPECT_NEAR(position_moments(psi).mean, 2.0, 1e-9);
    EXPECT_NEAR(momentum_moments(psi).mean, 3.0, 1e-9);
}

TEST(GaussianPacket, Errors) {
    const GridSpec g = default_grid();
    try {
        gaussian_packet(g, 0.0, 0.0, 0.2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::grid_too_coarse);
    }
    try {
        gaussian_packet(g, 14.0, 0.0, 1.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::packet_out_of_bounds);
    }
}

TEST(PositionDensity, GroundPeakValue) {
    const GridSpec g = default_grid();
    const auto psi = gaussian_packet(g, 0.0, 0.0, 1.0);
    const auto rho = position_density(psi);
    EXPECT_NEAR(rho[g.n_points() / 2], normal_pdf(0.0, 0.0, 1.0), 1e-12);
    double s = 0.0;
    for (double v : rho) {
        EXPECT_GE(v, 0.0);
        s += v;
    }
    EXPECT_NEAR(s * g.dq(), 1.0, 1e-12);
}

TEST(PositionDensity, SymmetricPairHasEqualPeaks) {
    const GridSpec g = default_grid();
    const std::vector<SuperpositionTerm> terms{{1.0, gaussian_packet(g, -4.0, 0.0, 1.0)},
                                               {1.0, gaussian_packet(g, 4.0, 0.0, 1.0)}};
    const auto rho = position_density(superpose(terms));
    // x = -4 and x = +4 are grid points 96 and 160.
    EXPECT_NEAR(rho[96], rho[160], 1e-14);
    EXPECT_GT(rho[96], 10.0 * rho[128]);
}

TEST(MomentumWavefunction, MatchesDirectQuadrature) {
    const auto psi = gaussian_packet(default_grid(), 1.5, -0.75, 0.8);
    const auto phi = momentum_wavefunction(psi);
    const Axis pax = phi.axis();
    for (std::size_t j = 0; j < pax.count; j += 7) {
        const cplx ref = direct_momentum_amplitude(psi, pax[j]);
        EXPECT_NEAR(std::abs(phi.amplitudes()[j] - ref), 0.0, 1e-12) << "j=" << j;
    }
}

TEST(MomentumWavefunction, GaussianPairAnalytic) {
    const double sigma = 1.3;
    const HbarConfig hbar(0.7);
    const GridSpec g(-20.0, 20.0, 256);
    const auto psi = gaussian_packet(g, 0.0, 0.0, sigma, hbar);
    const auto rho_p = momentum_density(psi);
    const Axis pax = g.momentum_axis(hbar);
    double sup = 0.0;
    for (std::size_t j = 0; j < pax.count; ++j)
        sup = std::max(sup, std::abs(rho_p[j] - normal_pdf(pax[j], 0.0, hbar.hbar / (2 * sigma))));
    EXPECT_LT(sup, 1e-8);
}

TEST(MomentumWavefunction, BoostedPeak) {
    const GridSpec g = default_grid();
    const auto rho_p = momentum_density(gaussian_packet(g, 0.0, 3.0, 1.0));
    const Axis pax = g.momentum_axis({});
    std::size_t best = 0;
    for (std::size_t j = 1; j < rho_p.size(); ++j)
        if (rho_p[j] > rho_p[best]) best = j;
    EXPECT_NEAR(pax[best], 3.0, pax.step);
}

TEST(MomentumWavefunction, RoundTripAndParseval) {
    const GridSpec g = default_grid();
    std::vector<WaveFunction> corpus{
        gaussian_packet(g, 0.0, 0.0, 1.0), gaussian_packet(g, 2.0, 3.0, 0.5),
        oscillator_state(g, 3), oscillator_state(g, 1, 1.0, -1.0)};
    for (const auto& psi : corpus) {
        const auto phi = momentum_wavefunction(psi);
        EXPECT_NEAR(phi.norm(), psi.norm(), 1e-10);
        const auto back = position_wavefunction(phi);
        for (std::size_t k = 0; k < psi.size(); ++k)
            EXPECT_NEAR(std::abs(back.amplitudes()[k] - psi.amplitudes()[k]), 0.0, 1e-13);
    }
}

TEST(OscillatorState, EnergiesAndOrthogonality) {
    const GridSpec g = default_grid();
    const auto x2 = Observable::position(g, [](double x) { return x * x; });
    const auto p2 = Observable::momentum(g, {}, [](double p) { return p * p; });
    for (unsigned n = 0; n < 5; ++n) {
        const auto psi = oscillator_state(g, n);
        const double energy = 0.5 * expectation(psi, x2) + 0.5 * expectation(psi, p2);
        EXPECT_NEAR(energy, n + 0.5, 1e-9);
        const auto other = oscillator_state(g, n + 1);
        cplx ip{0.0, 0.0};
        for (std::size_t k = 0; k < g.n_points(); ++k)
            ip += std::conj(psi.amplitudes()[k]) * other.amplitudes()[k];
        EXPECT_NEAR(std::abs(ip) * g.dq(), 0.0, 1e-12);
    }
}

TEST(Expectation, NormalizationAndMoments) {
    const GridSpec g = default_grid();
    const auto psi = gaussian_packet(g, 0.0, 0.0, 1.0);
    EXPECT_NEAR(expectation(psi, Observable::position(g, [](double) { return 1.0; })), 1.0, 1e-12);
    EXPECT_NEAR(expectation(psi, Observable::position(g, [](double x) { return x * x; })), 1.0,
                1e-9);
}

TEST(Expectation, SymmetricMixtureHasZeroMean) {
    const GridSpec g = default_grid();
    const MixedState rho({{0.5, gaussian_packet(g, -3.0, 0.0, 1.0)},
                          {0.5, gaussian_packet(g, 3.0, 0.0, 1.0)}});
    EXPECT_NEAR(expectation(rho, Observable::position(g, [](double x) { return x; })), 0.0, 1e-12);
}

TEST(Expectation, BasisMismatchOnWrongLength) {
    const auto psi = gaussian_packet(default_grid(), 0.0, 0.0, 1.0);
    const Observable bad{Basis::position, std::vector<double>(10, 1.0)};
    try {
        expectation(psi, bad);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::basis_mismatch);
    }
}

TEST(Expectation, LinearInObservableAndConvexInWeights) {
    const GridSpec g = default_grid();
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> w(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        const double a = u(rng), b = u(rng), c = u(rng);
        const auto f = Observable::position(g, [&](double x) { return a + b * x + c * x * x; });
        const auto f1 = Observable::position(g, [](double x) { return x; });
        const auto f2 = Observable::position(g, [](double x) { return x * x; });
        const auto psi1 = gaussian_packet(g, 2.0 * u(rng), u(rng), 0.8 + 0.4 * w(rng));
        const auto psi2 = oscillator_state(g, 2, u(rng), u(rng));
        EXPECT_NEAR(expectation(psi1, f), a + b * expectation(psi1, f1) + c * expectation(psi1, f2),
                    1e-10);
        const double p = w(rng);
        const MixedState rho({{p, psi1}, {1.0 - p, psi2}});
        EXPECT_NEAR(expectation(rho, f), p * expectation(psi1, f) + (1 - p) * expectation(psi2, f),
                    1e-10);
    }
}

TEST(MixedState, RejectsBadWeights) {
    const GridSpec g = default_grid();
    const auto psi = gaussian_packet(g, 0.0, 0.0, 1.0);
    try {
        MixedState({{-0.1, psi}, {1.1, psi}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::bad_weights);
    }
    EXPECT_THROW(MixedState({{0.5, psi}, {0.4, psi}}), Error);
    const auto other = gaussian_packet(GridSpec(-20.0, 20.0, 256), 0.0, 0.0, 1.0);
    try {
        MixedState({{0.5, psi}, {0.5, other}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::grid_mismatch);
    }
}

TEST(WaveFunction, NormalizedRejectsUndecayedEdges) {
    const GridSpec g(-4.0, 4.0, 64);
    std::vector<cplx> flat(64, cplx{1.0, 0.0});
    try {
        WaveFunction::normalized(g, {}, flat);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::boundary_not_decayed);
    }
}
