#include "phasekit/phasespace.hpp"

#include <algorithm>
#include <cmath>

#include "phasekit/fft.hpp"
#include "phasekit/parallel.hpp"

namespace phasekit {
namespace {

constexpr double chi_decay_tolerance = 1e-8;

const WaveFunction& position_basis(const WaveFunction& psi, WaveFunction& scratch) {
    if (psi.basis() == Basis::position) return psi;
    scratch = position_wavefunction(psi);
    return scratch;
}

// Samples psi(x_k + shift) by trigonometric interpolation; points that leave
// the box are zero, so the periodic image never enters an overlap.
std::vector<cplx> shifted_samples(std::span<const cplx> spectrum, const GridSpec& grid,
                                  double shift) {
    const std::size_t n = grid.n_points();
    std::vector<cplx> out(n);
    const double L = grid.length();
    for (std::size_t j = 0; j < n; ++j) {
        const long kappa = fft::signed_index(j, n);
        if (j == n / 2) {
            out[j] = spectrum[j] * std::cos(pi * static_cast<double>(n) * shift / L);
        } else {
            out[j] = spectrum[j] * std::polar(1.0, 2.0 * pi * static_cast<double>(kappa) * shift / L);
        }
    }
    fft::backward(out);
    const Axis ax = grid.position_axis();
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double x = ax[k] + shift;
        out[k] = (x < grid.q_min() || x > grid.q_max()) ? cplx{0.0, 0.0} : out[k] * inv_n;
    }
    return out;
}

bool dual_axes(const Axis& freq, const Axis& space) {
    if (freq.count != space.count) return false;
    const double product = freq.step * space.step * static_cast<double>(space.count);
    return std::abs(product - 2.0 * pi) <= 1e-9 * 2.0 * pi;
}

// In-place forward 2-D DFT of a row-major rows x cols complex matrix.
void forward_2d(std::vector<cplx>& data, std::size_t rows, std::size_t cols) {
    parallel_for(rows, [&](std::size_t r) {
        fft::forward(std::span<cplx>(data.data() + r * cols, cols));
    });
    parallel_for(cols, [&](std::size_t c) {
        std::vector<cplx> column(rows);
        for (std::size_t r = 0; r < rows; ++r) column[r] = data[r * cols + c];
        fft::forward(column);
        for (std::size_t r = 0; r < rows; ++r) data[r * cols + c] = column[r];
    });
}

} // namespace

PhaseSpaceGrid PhaseSpaceGrid::of(const GridSpec& grid, const HbarConfig& hbar) {
    return {grid.position_axis(), grid.momentum_axis(hbar)};
}

bool same_grid(const PhaseSpaceGrid& a, const PhaseSpaceGrid& b) {
    return same_axis(a.q, b.q) && same_axis(a.p, b.p);
}

WignerFunction::WignerFunction(PhaseSpaceGrid grid, HbarConfig hbar, std::vector<double> values)
    : grid_(grid), hbar_(hbar), values_(std::move(values)) {
    require(values_.size() == grid_.q.count * grid_.p.count, Errc::invalid_argument,
            "Wigner value count does not match grid");
}

double WignerFunction::total() const {
    double s = 0.0;
    for (double v : values_) s += v;
    return s * grid_.cell();
}

double WignerFunction::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

CharacteristicFunction::CharacteristicFunction(Axis lambda, Axis mu, HbarConfig hbar,
                                               std::vector<cplx> values)
    : lambda_(lambda), mu_(mu), hbar_(hbar), values_(std::move(values)) {
    require(values_.size() == lambda_.count * mu_.count, Errc::invalid_argument,
            "characteristic value count does not match grid");
}

double CharacteristicFunction::boundary_max() const {
    const std::size_t na = lambda_.count, nb = mu_.count;
    double m = 0.0;
    for (std::size_t b = 0; b < nb; ++b) {
        m = std::max(m, std::abs((*this)(0, b)));
        m = std::max(m, std::abs((*this)(na - 1, b)));
    }
    for (std::size_t a = 0; a < na; ++a) {
        m = std::max(m, std::abs((*this)(a, 0)));
        m = std::max(m, std::abs((*this)(a, nb - 1)));
    }
    return m;
}

DualGrid DualGrid::of(const PhaseSpaceGrid& grid) {
    const double dl = 2.0 * pi / (static_cast<double>(grid.p.count) * grid.p.step);
    const double dm = 2.0 * pi / (static_cast<double>(grid.q.count) * grid.q.step);
    return {Axis::centered(dl, grid.p.count), Axis::centered(dm, grid.q.count)};
}

CharacteristicFunction characteristic_from_wavefunction(const WaveFunction& psi_in,
                                                        const Axis& lambda, const Axis& mu) {
    WaveFunction scratch = psi_in;
    const WaveFunction& psi = position_basis(psi_in, scratch);
    const GridSpec& g = psi.grid();
    const double hbar = psi.hbar().hbar;
    const double lambda_max = std::max(std::abs(lambda.start), std::abs(lambda.back()));
    require(hbar * lambda_max <= g.length(), Errc::lambda_range_exceeds_grid,
            "hbar * |lambda| exceeds the grid extent");

    const std::size_t n = g.n_points();
    std::vector<cplx> spectrum(psi.amplitudes().begin(), psi.amplitudes().end());
    fft::forward(spectrum);

    const Axis ax = g.position_axis();
    std::vector<cplx> phase(mu.count * n);
    for (std::size_t b = 0; b < mu.count; ++b)
        for (std::size_t k = 0; k < n; ++k) phase[b * n + k] = std::polar(1.0, mu[b] * ax[k]);

    std::vector<cplx> values(lambda.count * mu.count);
    parallel_for(lambda.count, [&](std::size_t a) {
        const double half = 0.5 * hbar * lambda[a];
        const auto minus = shifted_samples(spectrum, g, -half);
        const auto plus = shifted_samples(spectrum, g, half);
        std::vector<cplx> prod(n);
        for (std::size_t k = 0; k < n; ++k) prod[k] = std::conj(minus[k]) * plus[k];
        for (std::size_t b = 0; b < mu.count; ++b) {
            const cplx* ph = phase.data() + b * n;
            cplx s{0.0, 0.0};
            for (std::size_t k = 0; k < n; ++k) s += prod[k] * ph[k];
            values[a * mu.count + b] = s * g.dq();
        }
    });
    return {lambda, mu, psi.hbar(), std::move(values)};
}

CharacteristicFunction characteristic_from_wavefunction(const WaveFunction& psi) {
    const auto dual = DualGrid::of(PhaseSpaceGrid::of(psi.grid(), psi.hbar()));
    return characteristic_from_wavefunction(psi, dual.lambda, dual.mu);
}

CharacteristicFunction characteristic_from_state(const MixedState& rho) {
    std::vector<WeightedCharacteristic> parts;
    for (const auto& c : rho.components())
        parts.push_back({c.weight, characteristic_from_wavefunction(c.state)});
    return characteristic_mixture(parts);
}

CharacteristicFunction characteristic_mixture(std::span<const WeightedCharacteristic> components) {
    require(!components.empty(), Errc::bad_weights, "mixture has no components");
    const auto& first = components.front().chi;
    double total = 0.0;
    std::vector<cplx> values(first.values().size(), cplx{0.0, 0.0});
    for (const auto& c : components) {
        require(std::isfinite(c.weight) && c.weight >= 0.0, Errc::bad_weights,
                "mixture weights must be nonnegative");
        require(same_axis(c.chi.lambda(), first.lambda()) && same_axis(c.chi.mu(), first.mu()) &&
                    c.chi.hbar().hbar == first.hbar().hbar,
                Errc::grid_mismatch, "characteristic functions live on different grids");
        total += c.weight;
        const auto v = c.chi.values();
        for (std::size_t i = 0; i < values.size(); ++i) values[i] += c.weight * v[i];
    }
    require(std::abs(total - 1.0) <= 1e-12, Errc::bad_weights, "mixture weights must sum to 1");
    return {first.lambda(), first.mu(), first.hbar(), std::move(values)};
}

WignerFunction wigner_from_characteristic(const CharacteristicFunction& chi,
                                          const PhaseSpaceGrid& target) {
    const Axis& lam = chi.lambda();
    const Axis& mu = chi.mu();
    require(dual_axes(lam, target.p) && dual_axes(mu, target.q), Errc::grid_mismatch,
            "target phase-space grid is not dual to the characteristic grid");
    require(chi.boundary_max() < chi_decay_tolerance, Errc::chi_not_decayed,
            "characteristic function has not decayed at its grid boundary");

    const std::size_t na = lam.count, nb = mu.count;
    std::vector<cplx> g(na * nb);
    for (std::size_t a = 0; a < na; ++a)
        for (std::size_t b = 0; b < nb; ++b)
            g[a * nb + b] = chi(a, b) * std::polar(1.0, -(lam[a] * target.p.start + mu[b] * target.q.start));
    forward_2d(g, na, nb);

    const double scale = lam.step * mu.step / (4.0 * pi * pi);
    std::vector<double> values(nb * na);
    double residue = 0.0;
    for (std::size_t j = 0; j < na; ++j) {
        for (std::size_t i = 0; i < nb; ++i) {
            const double post = -(lam.start * static_cast<double>(j) * target.p.step +
                                  mu.start * static_cast<double>(i) * target.q.step);
            const cplx v = scale * g[j * nb + i] * std::polar(1.0, post);
            values[i * na + j] = v.real();
            residue = std::max(residue, std::abs(v.imag()));
        }
    }
    WignerFunction w(target, chi.hbar(), std::move(values));
    require(residue <= 1e-6 * std::max(w.max_abs(), 1e-300), Errc::non_hermitian_characteristic,
            "characteristic function lacks Hermitian symmetry");
    w.set_imag_residue(residue);
    return w;
}

WignerFunction wigner_from_characteristic(const CharacteristicFunction& chi) {
    const Axis& lam = chi.lambda();
    const Axis& mu = chi.mu();
    const double dp = 2.0 * pi / (static_cast<double>(lam.count) * lam.step);
    const double dq = 2.0 * pi / (static_cast<double>(mu.count) * mu.step);
    return wigner_from_characteristic(chi, {Axis::centered(dq, mu.count), Axis::centered(dp, lam.count)});
}

WignerFunction wigner_from_state(const WaveFunction& psi_in) {
    WaveFunction scratch = psi_in;
    const WaveFunction& psi = position_basis(psi_in, scratch);
    const GridSpec& g = psi.grid();
    const std::size_t n = g.n_points();
    const std::size_t n2 = 2 * n;

    // Spectral 2x upsampling: fine[2k] == psi[k].
    std::vector<cplx> spec(psi.amplitudes().begin(), psi.amplitudes().end());
    fft::forward(spec);
    std::vector<cplx> fine(n2, cplx{0.0, 0.0});
    for (std::size_t j = 0; j < n / 2; ++j) fine[j] = spec[j];
    for (std::size_t j = n / 2 + 1; j < n; ++j) fine[j + n] = spec[j];
    fine[n / 2] = 0.5 * spec[n / 2];
    fine[n / 2 + n] = 0.5 * spec[n / 2];
    fft::backward(fine);
    for (auto& z : fine) z /= static_cast<double>(n);

    const double scale = g.dq() / (2.0 * pi * psi.hbar().hbar);
    std::vector<double> values(n * n);
    std::vector<double> residues(n, 0.0);
    parallel_for(n, [&](std::size_t k) {
        std::vector<cplx> f(n2, cplx{0.0, 0.0});
        const long centre = 2 * static_cast<long>(k);
        for (std::size_t mp = 0; mp < n2; ++mp) {
            const long m = static_cast<long>(mp) - static_cast<long>(n);
            const long lo = centre - m, hi = centre + m;
            if (lo >= 0 && hi >= 0 && lo < static_cast<long>(n2) && hi < static_cast<long>(n2))
                f[mp] = std::conj(fine[lo]) * fine[hi];
        }
        fft::forward(f);
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t idx = (2 * j + n) % n2;
            values[k * n + j] = scale * f[idx].real();
            residues[k] = std::max(residues[k], scale * std::abs(f[idx].imag()));
        }
    });
    WignerFunction w(PhaseSpaceGrid::of(g, psi.hbar()), psi.hbar(), std::move(values));
    w.set_imag_residue(*std::max_element(residues.begin(), residues.end()));
    return w;
}

WignerFunction wigner_from_state(const MixedState& rho) {
    std::vector<double> values;
    double residue = 0.0;
    for (const auto& c : rho.components()) {
        const auto w = wigner_from_state(c.state);
        if (values.empty()) values.assign(w.values().size(), 0.0);
        for (std::size_t i = 0; i < values.size(); ++i) values[i] += c.weight * w.values()[i];
        residue = std::max(residue, w.imag_residue());
    }
    WignerFunction w(PhaseSpaceGrid::of(rho.grid(), rho.hbar()), rho.hbar(), std::move(values));
    w.set_imag_residue(residue);
    return w;
}

Marginals marginals(const WignerFunction& w) {
    const std::size_t nq = w.n_q(), np = w.n_p();
    Marginals m{std::vector<double>(nq, 0.0), std::vector<double>(np, 0.0)};
    for (std::size_t i = 0; i < nq; ++i) {
        for (std::size_t j = 0; j < np; ++j) {
            m.q[i] += w(i, j);
            m.p[j] += w(i, j);
        }
    }
    for (auto& v : m.q) v *= w.grid().p.step;
    for (auto& v : m.p) v *= w.grid().q.step;
    return m;
}

double overlap(const WignerFunction& w1, const WignerFunction& w2) {
    require(same_grid(w1.grid(), w2.grid()) && w1.hbar().hbar == w2.hbar().hbar,
            Errc::grid_mismatch, "Wigner functions live on different grids");
    const auto a = w1.values();
    const auto b = w2.values();
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return 2.0 * pi * w1.hbar().hbar * s * w1.grid().cell();
}

double purity(const WignerFunction& w) { return overlap(w, w); }

double negativity_volume(const WignerFunction& w) {
    double s = 0.0;
    for (double v : w.values()) s += std::abs(v);
    return s * w.grid().cell() - 1.0;
}

} // namespace phasekit
