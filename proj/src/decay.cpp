#include "phasekit/decay.hpp"

#include <algorithm>
#include <cmath>

#include <lapacke.h>

#include "phasekit/error.hpp"
#include "phasekit/parallel.hpp"

namespace phasekit {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = 3.14159265358979323846;

bool sampled_index(const std::vector<double>& times, double t, std::size_t& out) {
    const double tol = 1e-12 * std::max(1.0, std::abs(t));
    const auto it = std::lower_bound(times.begin(), times.end(), t - tol);
    if (it == times.end() || std::abs(*it - t) > tol) return false;
    out = static_cast<std::size_t>(it - times.begin());
    return true;
}

} // namespace

FriedrichsModel::FriedrichsModel(double omega0, double band_lo, double band_hi, std::size_t n_modes,
                                 Coupling coupling)
    : omega0_(omega0), lo_(band_lo), hi_(band_hi), coupling_(coupling) {
    require(std::isfinite(omega0) && std::isfinite(band_lo) && std::isfinite(band_hi) && band_lo < band_hi,
            Errc::invalid_model, "band must be a finite interval with lo < hi");
    require(band_lo < omega0 && omega0 < band_hi, Errc::invalid_model, "omega0 must lie inside the band");
    require(n_modes >= 500, Errc::invalid_model, "at least 500 continuum modes are required");
    require(std::isfinite(coupling.g) && coupling.g >= 0.0, Errc::invalid_model, "coupling g must be >= 0");
    if (coupling.profile == CouplingProfile::lorentzian)
        require(std::isfinite(coupling.center) && std::isfinite(coupling.width) && coupling.width > 0.0,
                Errc::invalid_model, "Lorentzian profile needs a finite center and width > 0");
    delta_ = (hi_ - lo_) / double(n_modes);
    omega_.resize(n_modes);
    g_.resize(n_modes);
    for (std::size_t k = 0; k < n_modes; ++k) {
        omega_[k] = lo_ + (double(k) + 0.5) * delta_;
        if (coupling.profile == CouplingProfile::flat) {
            g_[k] = coupling.g;
        } else {
            const double x = omega_[k] - coupling.center, w = coupling.width;
            g_[k] = coupling.g * w / std::sqrt(x * x + w * w);
        }
    }
}

FriedrichsModel FriedrichsModel::benchmark(double g) {
    return FriedrichsModel(0.0, -1.0, 1.0, 2000, Coupling{CouplingProfile::flat, g});
}

FriedrichsModel FriedrichsModel::with_omega0(double omega0) const {
    return FriedrichsModel(omega0, lo_, hi_, omega_.size(), coupling_);
}

double FriedrichsModel::golden_rule_rate() const {
    // Coupling strength at the bare level; equal to g for the flat profile.
    double g0 = coupling_.g;
    if (coupling_.profile == CouplingProfile::lorentzian) {
        const double x = omega0_ - coupling_.center, w = coupling_.width;
        g0 = coupling_.g * w / std::sqrt(x * x + w * w);
    }
    return 2.0 * kPi * g0 * g0 / delta_;
}

double FriedrichsModel::energy_variance() const {
    double s = 0.0;
    for (double gk : g_) s += gk * gk;
    return s;
}

Spectrum diagonalize(const FriedrichsModel& model) {
    const auto n = static_cast<lapack_int>(model.n_modes() + 1);
    // Column-major arrowhead matrix; only the upper triangle is referenced.
    std::vector<double> a(std::size_t(n) * std::size_t(n), 0.0);
    a[0] = model.omega0();
    for (lapack_int k = 1; k < n; ++k) {
        a[std::size_t(k) * std::size_t(n)] = model.g()[std::size_t(k - 1)];
        a[std::size_t(k) * std::size_t(n) + std::size_t(k)] = model.omega()[std::size_t(k - 1)];
    }
    std::vector<double> w(static_cast<std::size_t>(n));
    std::vector<double> z(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    std::vector<lapack_int> support(2 * std::size_t(n));
    lapack_int found = 0;
    const lapack_int info = LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'V', 'A', 'U', n, a.data(), n, 0.0, 0.0, 0, 0,
                                           0.0, &found, w.data(), z.data(), n, support.data());
    require(info == 0 && found == n, Errc::no_convergence, "dsyevr failed on the model Hamiltonian");
    Spectrum s;
    s.energies = std::move(w);
    s.weights.resize(std::size_t(n));
    for (lapack_int j = 0; j < n; ++j) {
        const double c = z[std::size_t(j) * std::size_t(n)];
        s.weights[std::size_t(j)] = c * c;
    }
    return s;
}

SurvivalRecord survival_amplitude(const Spectrum& spectrum, const std::vector<double>& times,
                                  double recurrence_time) {
    require(spectrum.energies.size() == spectrum.weights.size(), Errc::dimension_mismatch,
            "spectrum energies and weights differ in length");
    SurvivalRecord r;
    r.times = times;
    r.amplitude.resize(times.size());
    r.probability.resize(times.size());
    for (double t : times) {
        require(std::isfinite(t), Errc::invalid_argument, "times must be finite");
        if (std::abs(t) > 0.1 * recurrence_time) r.recurrence_warning = true;
    }
    parallel_for(times.size(), [&](std::size_t i) {
        const double t = times[i];
        double re = 0.0, im = 0.0;
        for (std::size_t n = 0; n < spectrum.energies.size(); ++n) {
            const double ph = spectrum.energies[n] * t;
            re += spectrum.weights[n] * std::cos(ph);
            im -= spectrum.weights[n] * std::sin(ph);
        }
        r.amplitude[i] = cplx(re, im);
        r.probability[i] = re * re + im * im;
    });
    return r;
}

SurvivalRecord survival_amplitude(const FriedrichsModel& model, const std::vector<double>& times) {
    return survival_amplitude(diagonalize(model), times, model.recurrence_time());
}

std::vector<double> symmetric_times(double t_max, std::size_t n_positive) {
    require(std::isfinite(t_max) && t_max > 0.0 && n_positive >= 1, Errc::invalid_argument,
            "need t_max > 0 and at least one positive time");
    const double h = t_max / double(n_positive);
    std::vector<double> t(2 * n_positive + 1);
    for (std::size_t k = 0; k <= n_positive; ++k) {
        t[n_positive + k] = double(k) * h;
        t[n_positive - k] = -(double(k) * h);
    }
    return t;
}

double fit_decay_rate(const SurvivalRecord& record, double t_lo, double t_hi) {
    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < record.times.size(); ++i) {
        const double t = record.times[i];
        if (t < t_lo || t > t_hi) continue;
        const double p = record.probability[i];
        require(p > 1e-12, Errc::nonpositive_probability, "survival probability too small to take a log");
        const double y = -std::log(p);
        st += t;
        sy += y;
        stt += t * t;
        sty += t * y;
        ++n;
    }
    require(n >= 2, Errc::window_empty, "fit window holds fewer than two samples");
    const double dn = double(n);
    const double denom = dn * stt - st * st;
    require(denom > 0.0, Errc::window_empty, "fit window has no spread in time");
    return (dn * sty - st * sy) / denom;
}

SemigroupDefect semigroup_approximation_error(const SurvivalRecord& record, double gamma, double t1, double t2) {
    require(t1 >= 0.0 && t2 >= 0.0, Errc::invalid_argument, "semigroup times must be nonnegative");
    std::size_t i1 = 0, i2 = 0, i12 = 0;
    require(sampled_index(record.times, t1, i1) && sampled_index(record.times, t2, i2) &&
                sampled_index(record.times, t1 + t2, i12),
            Errc::times_not_sampled, "t1, t2 and t1 + t2 must be sampled times");
    auto surrogate = [gamma](double t) { return std::exp(-0.5 * gamma * t); };
    SemigroupDefect d;
    d.surrogate = std::abs(surrogate(t1) * surrogate(t2) - surrogate(t1 + t2));
    d.exact = std::abs(record.amplitude[i1] * record.amplitude[i2] - record.amplitude[i12]);
    return d;
}

cplx self_energy(const FriedrichsModel& model, cplx z) {
    cplx s = 0.0;
    for (std::size_t k = 0; k < model.n_modes(); ++k) s += model.g()[k] * model.g()[k] / (z - model.omega()[k]);
    return s;
}

cplx resolvent(const FriedrichsModel& model, cplx z) {
    require(std::isfinite(z.real()) && std::isfinite(z.imag()), Errc::invalid_argument, "z must be finite");
    cplx sigma = 0.0, dsigma = 0.0;
    for (std::size_t k = 0; k < model.n_modes(); ++k) {
        const cplx r = 1.0 / (z - model.omega()[k]);
        const double g2 = model.g()[k] * model.g()[k];
        sigma += g2 * r;
        dsigma += g2 * r * r;
    }
    const cplx den = z - model.omega0() - sigma;
    // One Newton step estimates the distance to the nearest eigenvalue of H.
    const double dist = std::abs(den) / std::abs(1.0 + dsigma);
    require(std::isfinite(dist) && dist > 1e-8, Errc::pole_proximity, "z lies within 1e-8 of an eigenvalue");
    return 1.0 / den;
}

PoleResult second_sheet_pole(const FriedrichsModel& model, HalfPlane half) {
    require(model.coupling().profile == CouplingProfile::flat, Errc::unsupported_profile,
            "closed-form continuation needs the flat coupling profile");
    const double g2 = model.coupling().g * model.coupling().g;
    const double sgn = half == HalfPlane::lower ? -1.0 : 1.0;
    const cplx jump(0.0, sgn * 2.0 * kPi * g2 / model.spacing());
    cplx z(model.omega0(), sgn * kPi * g2 / model.spacing());
    if (g2 == 0.0) return {z, 0};
    for (int it = 1; it <= 50; ++it) {
        cplx sigma = 0.0, dsigma = 0.0;
        for (std::size_t k = 0; k < model.n_modes(); ++k) {
            const cplx r = 1.0 / (z - model.omega()[k]);
            sigma += g2 * r;
            dsigma += g2 * r * r;
        }
        const cplx f = z - model.omega0() - (sigma + jump);
        const cplx step = f / (1.0 + dsigma);
        z -= step;
        require(std::isfinite(z.real()) && std::isfinite(z.imag()), Errc::no_convergence,
                "Newton iteration diverged");
        if (std::abs(step) <= 1e-14 * std::max(1.0, std::abs(z))) {
            require(model.band_lo() < z.real() && z.real() < model.band_hi() && sgn * z.imag() > 0.0,
                    Errc::pole_outside_continuation_strip, "pole left the continuation strip");
            return {z, it};
        }
    }
    fail(Errc::no_convergence, "Newton iteration did not converge in 50 steps");
}

} // namespace phasekit
