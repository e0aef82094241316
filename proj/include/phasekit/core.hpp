#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "phasekit/error.hpp"

namespace phasekit {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

/// Uniform sample axis: value(i) = start + i * step for i in [0, count).
struct Axis {
    double start = 0.0;
    double step = 1.0;
    std::size_t count = 0;

    double operator[](std::size_t i) const { return start + static_cast<double>(i) * step; }
    double back() const { return (*this)[count - 1]; }
    std::vector<double> values() const;

    /// Axis of `count` points centred on zero: start = -(count/2) * step.
    static Axis centered(double step, std::size_t count);
};

bool same_axis(const Axis& a, const Axis& b, double rel_tol = 1e-12);

struct HbarConfig {
    double hbar = 1.0;

    HbarConfig() = default;
    explicit HbarConfig(double value);
};

/// Periodic position grid with a power-of-two number of cells. The
/// conjugate momentum grid is fixed by dp = 2 pi hbar / (n dq), centred on zero.
class GridSpec {
public:
    GridSpec(double q_min, double q_max, std::size_t n_points);

    double q_min() const { return q_min_; }
    double q_max() const { return q_max_; }
    std::size_t n_points() const { return n_; }
    double dq() const { return (q_max_ - q_min_) / static_cast<double>(n_); }
    double length() const { return q_max_ - q_min_; }

    Axis position_axis() const { return {q_min_, dq(), n_}; }
    Axis momentum_axis(const HbarConfig& hbar) const;

    bool operator==(const GridSpec& o) const {
        return q_min_ == o.q_min_ && q_max_ == o.q_max_ && n_ == o.n_;
    }

private:
    double q_min_;
    double q_max_;
    std::size_t n_;
};

enum class Basis { position, momentum };

/// Pure state sampled on a GridSpec, in either the position or the momentum
/// representation. Always normalized: sum |psi|^2 * spacing = 1.
class WaveFunction {
public:
    /// Adopts amplitudes that are already normalized (within 1e-9).
    WaveFunction(GridSpec grid, HbarConfig hbar, std::vector<cplx> amplitudes,
                 Basis basis = Basis::position);

    /// Rescales to unit norm and checks that the state has decayed at the
    /// edges of both the position and the momentum grid.
    static WaveFunction normalized(GridSpec grid, HbarConfig hbar, std::vector<cplx> amplitudes);

    const GridSpec& grid() const { return grid_; }
    const HbarConfig& hbar() const { return hbar_; }
    Basis basis() const { return basis_; }
    std::span<const cplx> amplitudes() const { return amplitudes_; }
    std::size_t size() const { return amplitudes_.size(); }

    Axis axis() const;
    double spacing() const { return axis().step; }
    double norm() const;

private:
    GridSpec grid_;
    HbarConfig hbar_;
    Basis basis_;
    std::vector<cplx> amplitudes_;
};

struct MixtureComponent {
    double weight;
    WaveFunction state;
};

/// Convex mixture of pure states sharing one grid and hbar.
class MixedState {
public:
    explicit MixedState(std::vector<MixtureComponent> components);

    std::span<const MixtureComponent> components() const { return components_; }
    const GridSpec& grid() const { return components_.front().state.grid(); }
    const HbarConfig& hbar() const { return components_.front().state.hbar(); }

private:
    std::vector<MixtureComponent> components_;
};

/// Real function sampled on the position or momentum axis of a grid.
struct Observable {
    Basis basis;
    std::vector<double> samples;

    static Observable position(const GridSpec& grid, const std::function<double(double)>& f);
    static Observable momentum(const GridSpec& grid, const HbarConfig& hbar,
                               const std::function<double(double)>& f);
};

// --- state constructors -----------------------------------------------------

/// psi(x) ~ exp(-(x-q0)^2 / (4 sigma^2) + i p0 x / hbar).
WaveFunction gaussian_packet(const GridSpec& grid, double q0, double p0, double sigma,
                             const HbarConfig& hbar = {});

/// Harmonic-oscillator eigenstate `level` for V = m w^2 (x-q0)^2 / 2, boosted by p0.
WaveFunction oscillator_state(const GridSpec& grid, unsigned level, double q0 = 0.0,
                              double p0 = 0.0, double mass = 1.0, double omega = 1.0,
                              const HbarConfig& hbar = {});

struct SuperpositionTerm {
    cplx coefficient;
    WaveFunction state;
};

/// Normalized coherent sum of states on a common grid.
WaveFunction superpose(std::span<const SuperpositionTerm> terms);

// --- densities and transforms -----------------------------------------------

std::vector<double> position_density(const WaveFunction& psi);

/// Unitary transform psi~(p) = (2 pi hbar)^(-1/2) int psi(x) exp(-i p x / hbar) dx,
/// sampled on the centred momentum axis.
WaveFunction momentum_wavefunction(const WaveFunction& psi);

/// Inverse of momentum_wavefunction.
WaveFunction position_wavefunction(const WaveFunction& psi_p);

std::vector<double> momentum_density(const WaveFunction& psi);

double expectation(const WaveFunction& psi, const Observable& observable);
double expectation(const MixedState& rho, const Observable& observable);

/// Position mean and variance from |psi|^2.
struct Moments {
    double mean;
    double variance;
};
Moments position_moments(const WaveFunction& psi);
Moments momentum_moments(const WaveFunction& psi);

} // namespace phasekit
