#pragma once

#include <span>
#include <vector>

#include "phasekit/core.hpp"

namespace phasekit {

/// Rectangular (q, p) sampling.
struct PhaseSpaceGrid {
    Axis q;
    Axis p;

    /// The natural grid of a GridSpec: its position axis and conjugate momentum axis.
    static PhaseSpaceGrid of(const GridSpec& grid, const HbarConfig& hbar);
    double cell() const { return q.step * p.step; }
};

bool same_grid(const PhaseSpaceGrid& a, const PhaseSpaceGrid& b);

/// Real quasiprobability W(q, p); row-major with q as the outer index.
class WignerFunction {
public:
    WignerFunction(PhaseSpaceGrid grid, HbarConfig hbar, std::vector<double> values);

    const PhaseSpaceGrid& grid() const { return grid_; }
    const HbarConfig& hbar() const { return hbar_; }
    std::size_t n_q() const { return grid_.q.count; }
    std::size_t n_p() const { return grid_.p.count; }
    double operator()(std::size_t iq, std::size_t jp) const { return values_[iq * n_p() + jp]; }
    std::span<const double> values() const { return values_; }

    /// Largest |Im| discarded when the values were formed from a complex transform.
    double imag_residue() const { return imag_residue_; }
    void set_imag_residue(double r) { imag_residue_ = r; }

    double total() const;
    double max_abs() const;

private:
    PhaseSpaceGrid grid_;
    HbarConfig hbar_;
    std::vector<double> values_;
    double imag_residue_ = 0.0;
};

/// chi(lambda, mu) = <exp(i lambda p + i mu q)>; row-major with lambda outer.
class CharacteristicFunction {
public:
    CharacteristicFunction(Axis lambda, Axis mu, HbarConfig hbar, std::vector<cplx> values);

    const Axis& lambda() const { return lambda_; }
    const Axis& mu() const { return mu_; }
    const HbarConfig& hbar() const { return hbar_; }
    cplx operator()(std::size_t a, std::size_t b) const { return values_[a * mu_.count + b]; }
    std::span<const cplx> values() const { return values_; }

    /// Largest |chi| on the outermost ring of grid points.
    double boundary_max() const;

private:
    Axis lambda_;
    Axis mu_;
    HbarConfig hbar_;
    std::vector<cplx> values_;
};

/// (lambda, mu) grid that is discrete-Fourier dual to a phase-space grid:
/// dlambda = 2 pi / (n_p dp), dmu = 2 pi / (n_q dq), both centred.
struct DualGrid {
    Axis lambda;
    Axis mu;
    static DualGrid of(const PhaseSpaceGrid& grid);
};

struct WeightedCharacteristic {
    double weight;
    CharacteristicFunction chi;
};

CharacteristicFunction characteristic_from_wavefunction(const WaveFunction& psi,
                                                        const Axis& lambda, const Axis& mu);
CharacteristicFunction characteristic_from_wavefunction(const WaveFunction& psi);
CharacteristicFunction characteristic_from_state(const MixedState& rho);
CharacteristicFunction characteristic_mixture(std::span<const WeightedCharacteristic> components);

/// Inverse double Fourier transform onto `target`, which must be dual to chi's grid.
WignerFunction wigner_from_characteristic(const CharacteristicFunction& chi,
                                          const PhaseSpaceGrid& target);
/// As above, onto the centred grid dual to chi's axes.
WignerFunction wigner_from_characteristic(const CharacteristicFunction& chi);

/// Direct shifted-overlap transform on the state's natural phase-space grid.
WignerFunction wigner_from_state(const WaveFunction& psi);
WignerFunction wigner_from_state(const MixedState& rho);

struct Marginals {
    std::vector<double> q;
    std::vector<double> p;
};
Marginals marginals(const WignerFunction& w);

double purity(const WignerFunction& w);
double overlap(const WignerFunction& w1, const WignerFunction& w2);
double negativity_volume(const WignerFunction& w);

} // namespace phasekit
