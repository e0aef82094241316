#pragma once

#include <vector>

#include "phasekit/phasespace.hpp"

namespace phasekit {

/// H(p, q) = p^2 / (2m) + sum_k c_k q^k with degree at most 6.
class PolynomialHamiltonian {
public:
    PolynomialHamiltonian(double mass, std::vector<double> potential);

    static PolynomialHamiltonian free(double mass = 1.0);
    static PolynomialHamiltonian harmonic(double mass = 1.0, double omega = 1.0);

    double mass() const { return mass_; }
    const std::vector<double>& potential() const { return coeffs_; }
    std::size_t degree() const;

    /// order-th derivative of V at q (order 0 is V itself).
    double potential_derivative(double q, unsigned order = 0) const;
    double energy(double q, double p) const;

private:
    double mass_;
    std::vector<double> coeffs_;
};

enum class Generator { liouville, moyal };

struct EvolutionConfig {
    double dt = 0.0;
    std::size_t n_steps = 0;
    Generator generator = Generator::moyal;
    /// Highest power of hbar kept in the Moyal series (0, 2 or 4).
    unsigned max_hbar_power = 4;
};

/// Largest admissible |dt|: 0.5 * min(dq / p_max, dp / max |V'|) over the grid.
double cfl_limit(const PhaseSpaceGrid& grid, const PolynomialHamiltonian& h);

/// One fourth-order step of the classical Liouville flow. Negative dt runs backwards.
WignerFunction liouville_step(const WignerFunction& w, const PolynomialHamiltonian& h, double dt);

/// One fourth-order step of the terminating Moyal series, using w's hbar.
WignerFunction moyal_step(const WignerFunction& w, const PolynomialHamiltonian& h, double dt,
                          unsigned max_hbar_power = 4);

struct TrajectorySample {
    double t;
    double sigma_q2;
    double norm;
    double purity;
};

struct EvolutionResult {
    WignerFunction final;
    std::vector<TrajectorySample> trajectory;
};

/// Runs cfg.n_steps steps. The trajectory holds t = 0, every `record_every`-th
/// step (0 disables intermediate samples) and the final time.
EvolutionResult evolve(const WignerFunction& w, const PolynomialHamiltonian& h,
                       const EvolutionConfig& cfg, std::size_t record_every = 0);

TrajectorySample sample(const WignerFunction& w, double t);

/// Strang split-operator propagation of the Schroedinger equation.
WaveFunction evolve_wavefunction(const WaveFunction& psi, const PolynomialHamiltonian& h,
                                 double dt, std::size_t n_steps);

struct WidthSample {
    double t;
    double sigma_q2;
};

/// sigma_q^2(t) for each requested time, each evolved from psi0 with steps no
/// longer than max_dt.
std::vector<WidthSample> packet_width_trace(const WaveFunction& psi0, const PolynomialHamiltonian& h,
                                            const std::vector<double>& times, double max_dt = 1e-3);

} // namespace phasekit
