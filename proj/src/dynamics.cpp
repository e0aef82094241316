#include "phasekit/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "phasekit/fft.hpp"
#include "phasekit/parallel.hpp"

namespace phasekit {
namespace {

// Yoshida's fourth-order composition of symmetric second-order steps.
const double yoshida_w1 = 1.0 / (2.0 - std::cbrt(2.0));
const double yoshida_w0 = -std::cbrt(2.0) / (2.0 - std::cbrt(2.0));

double max_abs_momentum(const Axis& p) { return std::max(std::abs(p.start), std::abs(p.back())); }

double max_abs_force(const Axis& q, const PolynomialHamiltonian& h) {
    double m = 0.0;
    for (std::size_t i = 0; i < q.count; ++i)
        m = std::max(m, std::abs(h.potential_derivative(q[i], 1)));
    return m;
}

double wavenumber(std::size_t k, std::size_t n, double step) {
    return 2.0 * pi * static_cast<double>(k) / (static_cast<double>(n) * step);
}

// Exact flows of the two halves of the generator as spectral phase tables.
//   kinetic:   dW/dt = -(p/m) dW/dq        (shear along q, FFT over q)
//   potential: dW/dt = sum_s c_s(q) d^s W / dp^s  (FFT over p)
class MoyalPropagator {
public:
    MoyalPropagator(const PhaseSpaceGrid& grid, double hbar, const PolynomialHamiltonian& h,
                    double dt, unsigned max_hbar_power)
        : grid_(grid), nq_(grid.q.count), np_(grid.p.count) {
        const double a1 = 0.5 * yoshida_w1 * dt;
        const double a2 = 0.5 * (yoshida_w1 + yoshida_w0) * dt;
        kin_outer_ = kinetic_table(h.mass(), a1);
        kin_inner_ = kinetic_table(h.mass(), a2);

        std::vector<double> d1(nq_), d3(nq_), d5(nq_);
        const double c3 = max_hbar_power >= 2 ? hbar * hbar / 24.0 : 0.0;
        const double c5 = max_hbar_power >= 4 ? std::pow(hbar, 4) / 1920.0 : 0.0;
        for (std::size_t i = 0; i < nq_; ++i) {
            const double q = grid.q[i];
            d1[i] = h.potential_derivative(q, 1);
            d3[i] = c3 * h.potential_derivative(q, 3);
            d5[i] = c5 * h.potential_derivative(q, 5);
        }
        pot_outer_ = potential_table(d1, d3, d5, yoshida_w1 * dt);
        pot_inner_ = potential_table(d1, d3, d5, yoshida_w0 * dt);
        qspec_.resize((nq_ / 2 + 1) * np_);
        pspec_.resize(nq_ * (np_ / 2 + 1));
    }

    void step(std::vector<double>& w) {
        kinetic(w, kin_outer_);
        potential(w, pot_outer_);
        kinetic(w, kin_inner_);
        potential(w, pot_inner_);
        kinetic(w, kin_inner_);
        potential(w, pot_outer_);
        kinetic(w, kin_outer_);
    }

private:
    std::vector<cplx> kinetic_table(double mass, double h) const {
        const std::size_t rows = nq_ / 2 + 1;
        std::vector<cplx> t(rows * np_);
        for (std::size_t l = 0; l < rows; ++l) {
            const double kappa = wavenumber(l, nq_, grid_.q.step);
            for (std::size_t j = 0; j < np_; ++j)
                t[l * np_ + j] = (l == nq_ / 2) ? cplx{1.0, 0.0}
                                                : std::polar(1.0, -kappa * grid_.p[j] * h / mass);
        }
        return t;
    }

    std::vector<cplx> potential_table(const std::vector<double>& d1, const std::vector<double>& d3,
                                      const std::vector<double>& d5, double h) const {
        const std::size_t cols = np_ / 2 + 1;
        std::vector<cplx> t(nq_ * cols);
        for (std::size_t i = 0; i < nq_; ++i) {
            for (std::size_t j = 0; j < cols; ++j) {
                const double k = wavenumber(j, np_, grid_.p.step);
                const double k3 = k * k * k;
                const double phase = h * (d1[i] * k + d3[i] * k3 + d5[i] * k3 * k * k);
                t[i * cols + j] = (j == np_ / 2) ? cplx{1.0, 0.0} : std::polar(1.0, phase);
            }
        }
        return t;
    }

    void kinetic(std::vector<double>& w, const std::vector<cplx>& table) {
        fft::r2c_cols(w.data(), qspec_.data(), nq_, np_);
        const double inv = 1.0 / static_cast<double>(nq_);
        parallel_for(nq_ / 2 + 1, [&](std::size_t l) {
            for (std::size_t j = 0; j < np_; ++j) qspec_[l * np_ + j] *= table[l * np_ + j] * inv;
        });
        fft::c2r_cols(qspec_.data(), w.data(), nq_, np_);
    }

    void potential(std::vector<double>& w, const std::vector<cplx>& table) {
        const std::size_t cols = np_ / 2 + 1;
        fft::r2c_rows(w.data(), pspec_.data(), nq_, np_);
        const double inv = 1.0 / static_cast<double>(np_);
        parallel_for(nq_, [&](std::size_t i) {
            for (std::size_t j = 0; j < cols; ++j) pspec_[i * cols + j] *= table[i * cols + j] * inv;
        });
        fft::c2r_rows(pspec_.data(), w.data(), nq_, np_);
    }

    PhaseSpaceGrid grid_;
    std::size_t nq_, np_;
    std::vector<cplx> kin_outer_, kin_inner_, pot_outer_, pot_inner_;
    std::vector<cplx> qspec_, pspec_;
};

void check_step(const PhaseSpaceGrid& grid, const PolynomialHamiltonian& h, double dt) {
    require(std::isfinite(dt) && dt != 0.0, Errc::invalid_argument, "dt must be finite and nonzero");
    const double limit = cfl_limit(grid, h);
    require(std::abs(dt) <= limit, Errc::cfl_violation,
            "|dt| = " + std::to_string(std::abs(dt)) + " exceeds the stability bound " +
                std::to_string(limit));
}

WignerFunction advance(const WignerFunction& w, const PolynomialHamiltonian& h, double dt,
                       std::size_t n_steps, unsigned max_hbar_power,
                       std::vector<TrajectorySample>* trajectory, std::size_t record_every) {
    check_step(w.grid(), h, dt);
    MoyalPropagator prop(w.grid(), w.hbar().hbar, h, dt, max_hbar_power);
    std::vector<double> values(w.values().begin(), w.values().end());
    if (trajectory) trajectory->push_back(sample(w, 0.0));
    for (std::size_t s = 1; s <= n_steps; ++s) {
        prop.step(values);
        const bool record = trajectory && (s == n_steps || (record_every && s % record_every == 0));
        if (record) {
            trajectory->push_back(
                sample(WignerFunction(w.grid(), w.hbar(), values), dt * static_cast<double>(s)));
        }
    }
    return WignerFunction(w.grid(), w.hbar(), std::move(values));
}

} // namespace

PolynomialHamiltonian::PolynomialHamiltonian(double mass, std::vector<double> potential)
    : mass_(mass), coeffs_(std::move(potential)) {
    require(std::isfinite(mass) && mass > 0.0, Errc::invalid_argument, "mass must be positive");
    for (double c : coeffs_)
        require(std::isfinite(c), Errc::invalid_argument, "potential coefficients must be finite");
    while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
    require(coeffs_.size() <= 7, Errc::degree_too_high,
            "potential degree " + std::to_string(coeffs_.size() - 1) + " exceeds 6");
}

PolynomialHamiltonian PolynomialHamiltonian::free(double mass) { return {mass, {}}; }

PolynomialHamiltonian PolynomialHamiltonian::harmonic(double mass, double omega) {
    return {mass, {0.0, 0.0, 0.5 * mass * omega * omega}};
}

std::size_t PolynomialHamiltonian::degree() const {
    return coeffs_.empty() ? 0 : coeffs_.size() - 1;
}

double PolynomialHamiltonian::potential_derivative(double q, unsigned order) const {
    double s = 0.0;
    for (std::size_t k = coeffs_.size(); k-- > order;) {
        double falling = 1.0;
        for (unsigned r = 0; r < order; ++r) falling *= static_cast<double>(k - r);
        s = s * q + coeffs_[k] * falling;
    }
    return s;
}

double PolynomialHamiltonian::energy(double q, double p) const {
    return 0.5 * p * p / mass_ + potential_derivative(q, 0);
}

double cfl_limit(const PhaseSpaceGrid& grid, const PolynomialHamiltonian& h) {
    const double inf = std::numeric_limits<double>::infinity();
    const double pm = max_abs_momentum(grid.p) / h.mass();
    const double fm = max_abs_force(grid.q, h);
    const double shear = pm > 0.0 ? grid.q.step / pm : inf;
    const double kick = fm > 0.0 ? grid.p.step / fm : inf;
    return 0.5 * std::min(shear, kick);
}

WignerFunction liouville_step(const WignerFunction& w, const PolynomialHamiltonian& h, double dt) {
    return advance(w, h, dt, 1, 0, nullptr, 0);
}

WignerFunction moyal_step(const WignerFunction& w, const PolynomialHamiltonian& h, double dt,
                          unsigned max_hbar_power) {
    return advance(w, h, dt, 1, max_hbar_power, nullptr, 0);
}

EvolutionResult evolve(const WignerFunction& w, const PolynomialHamiltonian& h,
                       const EvolutionConfig& cfg, std::size_t record_every) {
    require(cfg.n_steps > 0, Errc::invalid_argument, "n_steps must be positive");
    const unsigned order = cfg.generator == Generator::liouville ? 0 : cfg.max_hbar_power;
    std::vector<TrajectorySample> trajectory;
    auto final = advance(w, h, cfg.dt, cfg.n_steps, order, &trajectory, record_every);
    return {std::move(final), std::move(trajectory)};
}

TrajectorySample sample(const WignerFunction& w, double t) {
    const auto m = marginals(w);
    const Axis& q = w.grid().q;
    double m0 = 0.0, m1 = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < q.count; ++i) {
        m0 += m.q[i];
        m1 += m.q[i] * q[i];
        m2 += m.q[i] * q[i] * q[i];
    }
    m0 *= q.step;
    m1 *= q.step;
    m2 *= q.step;
    const double mean = m1 / m0;
    return {t, m2 / m0 - mean * mean, m0, purity(w)};
}

WaveFunction evolve_wavefunction(const WaveFunction& psi_in, const PolynomialHamiltonian& h,
                                 double dt, std::size_t n_steps) {
    require(std::isfinite(dt), Errc::invalid_argument, "dt must be finite");
    const WaveFunction psi =
        psi_in.basis() == Basis::position ? psi_in : position_wavefunction(psi_in);
    const GridSpec& g = psi.grid();
    const double hbar = psi.hbar().hbar;
    const std::size_t n = g.n_points();
    const Axis q = g.position_axis();

    std::vector<cplx> half_kick(n), drift(n);
    for (std::size_t k = 0; k < n; ++k)
        half_kick[k] = std::polar(1.0, -0.5 * dt * h.potential_derivative(q[k], 0) / hbar);
    for (std::size_t j = 0; j < n; ++j) {
        const double p = 2.0 * pi * hbar * static_cast<double>(fft::signed_index(j, n)) / g.length();
        drift[j] = std::polar(1.0, -dt * p * p / (2.0 * h.mass() * hbar)) / static_cast<double>(n);
    }

    std::vector<cplx> a(psi.amplitudes().begin(), psi.amplitudes().end());
    for (std::size_t s = 0; s < n_steps; ++s) {
        for (std::size_t k = 0; k < n; ++k) a[k] *= half_kick[k];
        fft::forward(a);
        for (std::size_t j = 0; j < n; ++j) a[j] *= drift[j];
        fft::backward(a);
        for (std::size_t k = 0; k < n; ++k) a[k] *= half_kick[k];
        const double edge = std::max(std::norm(a.front()), std::norm(a.back()));
        require(edge <= 1e-8, Errc::boundary_contamination,
                "wave function reached the grid edge at step " + std::to_string(s + 1));
    }
    return WaveFunction(g, psi.hbar(), std::move(a));
}

std::vector<WidthSample> packet_width_trace(const WaveFunction& psi0, const PolynomialHamiltonian& h,
                                            const std::vector<double>& times, double max_dt) {
    require(max_dt > 0.0, Errc::invalid_argument, "max_dt must be positive");
    std::vector<WidthSample> out;
    out.reserve(times.size());
    for (double t : times) {
        require(std::isfinite(t), Errc::invalid_argument, "times must be finite");
        const auto steps = static_cast<std::size_t>(std::ceil(std::abs(t) / max_dt));
        const WaveFunction psi = steps == 0 ? psi0 : evolve_wavefunction(psi0, h, t / steps, steps);
        out.push_back({t, position_moments(psi).variance});
    }
    return out;
}

} // namespace phasekit
