#include "phasekit/core.hpp"

#include <cmath>
#include <sstream>

#include "phasekit/fft.hpp"

namespace phasekit {
namespace {

constexpr double edge_tolerance = 1e-10;

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

double sum_abs2(std::span<const cplx> v) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return s;
}

std::string describe(double value) {
    std::ostringstream os;
    os.precision(6);
    os << value;
    return os.str();
}

} // namespace

std::vector<double> Axis::values() const {
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = (*this)[i];
    return out;
}

Axis Axis::centered(double step, std::size_t count) {
    return {-static_cast<double>(count / 2) * step, step, count};
}

bool same_axis(const Axis& a, const Axis& b, double rel_tol) {
    if (a.count != b.count) return false;
    const double scale = std::abs(a.step) * static_cast<double>(a.count);
    return std::abs(a.step - b.step) <= rel_tol * std::abs(a.step) &&
           std::abs(a.start - b.start) <= rel_tol * scale;
}

HbarConfig::HbarConfig(double value) : hbar(value) {
    require(std::isfinite(value) && value > 0.0, Errc::invalid_argument,
            "hbar must be positive, got " + describe(value));
}

GridSpec::GridSpec(double q_min, double q_max, std::size_t n_points)
    : q_min_(q_min), q_max_(q_max), n_(n_points) {
    require(std::isfinite(q_min) && std::isfinite(q_max) && q_max > q_min, Errc::invalid_grid,
            "grid requires q_max > q_min");
    require(n_points >= 8 && is_power_of_two(n_points), Errc::invalid_grid,
            "n_points must be a power of two >= 8, got " + std::to_string(n_points));
}

Axis GridSpec::momentum_axis(const HbarConfig& hbar) const {
    const double dp = 2.0 * pi * hbar.hbar / (static_cast<double>(n_) * dq());
    return Axis::centered(dp, n_);
}

WaveFunction::WaveFunction(GridSpec grid, HbarConfig hbar, std::vector<cplx> amplitudes,
                           Basis basis)
    : grid_(grid), hbar_(hbar), basis_(basis), amplitudes_(std::move(amplitudes)) {
    require(amplitudes_.size() == grid_.n_points(), Errc::invalid_state,
            "amplitude count does not match grid");
    const double n = norm();
    require(std::abs(n - 1.0) <= 1e-9, Errc::invalid_state,
            "wave function is not normalized (norm " + describe(n) + ")");
}

WaveFunction WaveFunction::normalized(GridSpec grid, HbarConfig hbar,
                                      std::vector<cplx> amplitudes) {
    require(amplitudes.size() == grid.n_points(), Errc::invalid_state,
            "amplitude count does not match grid");
    double s = sum_abs2(amplitudes) * grid.dq();
    require(std::isfinite(s) && s > 0.0, Errc::invalid_state, "wave function has zero norm");
    const double scale = 1.0 / std::sqrt(s);
    for (auto& z : amplitudes) z *= scale;
    // Renormalize once more so the sum is exact to rounding.
    s = sum_abs2(amplitudes) * grid.dq();
    for (auto& z : amplitudes) z /= std::sqrt(s);

    WaveFunction psi(grid, hbar, std::move(amplitudes));
    const auto a = psi.amplitudes();
    const double edge_q = std::max(std::norm(a.front()), std::norm(a.back()));
    require(edge_q < edge_tolerance, Errc::boundary_not_decayed,
            "position density at grid edge is " + describe(edge_q));
    const auto pd = momentum_density(psi);
    const double edge_p = std::max(pd.front(), pd.back());
    require(edge_p < edge_tolerance, Errc::boundary_not_decayed,
            "momentum density at grid edge is " + describe(edge_p));
    return psi;
}

Axis WaveFunction::axis() const {
    return basis_ == Basis::position ? grid_.position_axis() : grid_.momentum_axis(hbar_);
}

double WaveFunction::norm() const { return sum_abs2(amplitudes_) * spacing(); }

MixedState::MixedState(std::vector<MixtureComponent> components)
    : components_(std::move(components)) {
    require(!components_.empty(), Errc::bad_weights, "mixture has no components");
    double total = 0.0;
    for (const auto& c : components_) {
        require(std::isfinite(c.weight) && c.weight >= 0.0, Errc::bad_weights,
                "mixture weight " + describe(c.weight) + " is negative");
        total += c.weight;
        require(c.state.grid() == grid() && c.state.hbar().hbar == hbar().hbar,
                Errc::grid_mismatch, "mixture components live on different grids");
        require(c.state.basis() == Basis::position, Errc::basis_mismatch,
                "mixture components must be position-basis states");
    }
    require(std::abs(total - 1.0) <= 1e-12, Errc::bad_weights,
            "mixture weights sum to " + describe(total));
}

Observable Observable::position(const GridSpec& grid, const std::function<double(double)>& f) {
    const Axis ax = grid.position_axis();
    Observable o{Basis::position, std::vector<double>(ax.count)};
    for (std::size_t i = 0; i < ax.count; ++i) o.samples[i] = f(ax[i]);
    return o;
}

Observable Observable::momentum(const GridSpec& grid, const HbarConfig& hbar,
                                const std::function<double(double)>& f) {
    const Axis ax = grid.momentum_axis(hbar);
    Observable o{Basis::momentum, std::vector<double>(ax.count)};
    for (std::size_t i = 0; i < ax.count; ++i) o.samples[i] = f(ax[i]);
    return o;
}

WaveFunction gaussian_packet(const GridSpec& grid, double q0, double p0, double sigma,
                             const HbarConfig& hbar) {
    require(std::isfinite(sigma) && sigma > 0.0, Errc::invalid_argument,
            "sigma must be positive");
    require(sigma >= 4.0 * grid.dq(), Errc::grid_too_coarse,
            "sigma " + describe(sigma) + " is below 4 dq = " + describe(4.0 * grid.dq()));

    const auto density = [](double x, double mean, double s) {
        return std::exp(-(x - mean) * (x - mean) / (2.0 * s * s)) / std::sqrt(2.0 * pi * s * s);
    };
    const double edge_q = std::max(density(grid.q_min(), q0, sigma), density(grid.q_max(), q0, sigma));
    require(edge_q < edge_tolerance, Errc::packet_out_of_bounds,
            "packet density at grid edge is " + describe(edge_q));
    const Axis pax = grid.momentum_axis(hbar);
    const double sigma_p = hbar.hbar / (2.0 * sigma);
    const double p_lo = pax.start - 0.5 * pax.step;
    const double p_hi = pax.back() + 0.5 * pax.step;
    const double edge_p = std::max(density(p_lo, p0, sigma_p), density(p_hi, p0, sigma_p));
    require(edge_p < edge_tolerance, Errc::grid_too_coarse,
            "momentum density at grid edge is " + describe(edge_p));

    const Axis ax = grid.position_axis();
    std::vector<cplx> amp(ax.count);
    for (std::size_t k = 0; k < ax.count; ++k) {
        const double x = ax[k];
        const double env = -(x - q0) * (x - q0) / (4.0 * sigma * sigma);
        amp[k] = std::exp(env) * std::polar(1.0, p0 * x / hbar.hbar);
    }
    return WaveFunction::normalized(grid, hbar, std::move(amp));
}

WaveFunction oscillator_state(const GridSpec& grid, unsigned level, double q0, double p0,
                              double mass, double omega, const HbarConfig& hbar) {
    require(mass > 0.0 && omega > 0.0, Errc::invalid_argument,
            "oscillator mass and frequency must be positive");
    const double ell = std::sqrt(hbar.hbar / (mass * omega));
    require(ell >= 4.0 * grid.dq(), Errc::grid_too_coarse,
            "oscillator length is below 4 dq");
    const Axis ax = grid.position_axis();
    std::vector<cplx> amp(ax.count);
    for (std::size_t k = 0; k < ax.count; ++k) {
        const double xi = (ax[k] - q0) / ell;
        double prev = 0.0;
        double cur = std::pow(pi, -0.25) * std::exp(-0.5 * xi * xi);
        for (unsigned n = 0; n < level; ++n) {
            const double next = std::sqrt(2.0 / (n + 1.0)) * xi * cur -
                                std::sqrt(static_cast<double>(n) / (n + 1.0)) * prev;
            prev = cur;
            cur = next;
        }
        amp[k] = cur / std::sqrt(ell) * std::polar(1.0, p0 * ax[k] / hbar.hbar);
    }
    return WaveFunction::normalized(grid, hbar, std::move(amp));
}

WaveFunction superpose(std::span<const SuperpositionTerm> terms) {
    require(!terms.empty(), Errc::invalid_state, "superposition has no terms");
    const GridSpec grid = terms.front().state.grid();
    const HbarConfig hbar = terms.front().state.hbar();
    std::vector<cplx> amp(grid.n_points(), cplx{0.0, 0.0});
    for (const auto& t : terms) {
        require(t.state.grid() == grid && t.state.hbar().hbar == hbar.hbar, Errc::grid_mismatch,
                "superposition terms live on different grids");
        require(t.state.basis() == Basis::position, Errc::basis_mismatch,
                "superposition terms must be position-basis states");
        const auto a = t.state.amplitudes();
        for (std::size_t k = 0; k < amp.size(); ++k) amp[k] += t.coefficient * a[k];
    }
    return WaveFunction::normalized(grid, hbar, std::move(amp));
}

std::vector<double> position_density(const WaveFunction& psi) {
    const WaveFunction& x = psi.basis() == Basis::position ? psi : position_wavefunction(psi);
    std::vector<double> out(x.size());
    const auto a = x.amplitudes();
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = std::norm(a[k]);
    return out;
}

WaveFunction momentum_wavefunction(const WaveFunction& psi) {
    require(psi.basis() == Basis::position, Errc::basis_mismatch,
            "momentum_wavefunction expects a position-basis state");
    const GridSpec& g = psi.grid();
    const double hbar = psi.hbar().hbar;
    const std::size_t n = g.n_points();
    const Axis pax = g.momentum_axis(psi.hbar());
    const auto a = psi.amplitudes();

    std::vector<cplx> buf(n);
    for (std::size_t k = 0; k < n; ++k) buf[k] = (k % 2 == 0) ? a[k] : -a[k];
    fft::forward(buf);
    const double scale = g.dq() / std::sqrt(2.0 * pi * hbar);
    for (std::size_t j = 0; j < n; ++j)
        buf[j] *= scale * std::polar(1.0, -pax[j] * g.q_min() / hbar);
    return WaveFunction(g, psi.hbar(), std::move(buf), Basis::momentum);
}

WaveFunction position_wavefunction(const WaveFunction& psi_p) {
    require(psi_p.basis() == Basis::momentum, Errc::basis_mismatch,
            "position_wavefunction expects a momentum-basis state");
    const GridSpec& g = psi_p.grid();
    const double hbar = psi_p.hbar().hbar;
    const std::size_t n = g.n_points();
    const Axis pax = g.momentum_axis(psi_p.hbar());
    const auto a = psi_p.amplitudes();

    std::vector<cplx> buf(n);
    const double scale = std::sqrt(2.0 * pi * hbar) / g.dq() / static_cast<double>(n);
    for (std::size_t j = 0; j < n; ++j)
        buf[j] = a[j] * scale * std::polar(1.0, pax[j] * g.q_min() / hbar);
    fft::backward(buf);
    for (std::size_t k = 1; k < n; k += 2) buf[k] = -buf[k];
    return WaveFunction(g, psi_p.hbar(), std::move(buf), Basis::position);
}

std::vector<double> momentum_density(const WaveFunction& psi) {
    const WaveFunction& p = psi.basis() == Basis::momentum ? psi : momentum_wavefunction(psi);
    std::vector<double> out(p.size());
    const auto a = p.amplitudes();
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = std::norm(a[j]);
    return out;
}

double expectation(const WaveFunction& psi, const Observable& observable) {
    require(observable.samples.size() == psi.size(), Errc::basis_mismatch,
            "observable is not sampled on the state's grid");
    const bool pos = observable.basis == Basis::position;
    const auto density = pos ? position_density(psi) : momentum_density(psi);
    const double step = pos ? psi.grid().dq() : psi.grid().momentum_axis(psi.hbar()).step;
    double s = 0.0;
    for (std::size_t k = 0; k < density.size(); ++k) s += density[k] * observable.samples[k];
    return s * step;
}

double expectation(const MixedState& rho, const Observable& observable) {
    double s = 0.0;
    for (const auto& c : rho.components()) s += c.weight * expectation(c.state, observable);
    return s;
}

namespace {
Moments moments_of(const std::vector<double>& density, const Axis& ax) {
    double m0 = 0.0, m1 = 0.0;
    for (std::size_t k = 0; k < density.size(); ++k) {
        m0 += density[k];
        m1 += density[k] * ax[k];
    }
    const double mean = m1 / m0;
    double m2 = 0.0;
    for (std::size_t k = 0; k < density.size(); ++k)
        m2 += density[k] * (ax[k] - mean) * (ax[k] - mean);
    return {mean, m2 / m0};
}
} // namespace

Moments position_moments(const WaveFunction& psi) {
    return moments_of(position_density(psi), psi.grid().position_axis());
}

Moments momentum_moments(const WaveFunction& psi) {
    return moments_of(momentum_density(psi), psi.grid().momentum_axis(psi.hbar()));
}

} // namespace phasekit
