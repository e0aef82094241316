#pragma once

#include <complex>
#include <vector>

namespace phasekit {

// Single level coupled to a uniformly spaced quasi-continuum, hbar = 1:
//   H = omega0 |e><e| + sum_k omega_k |k><k| + sum_k g_k (|e><k| + |k><e|).

enum class CouplingProfile { flat, lorentzian };

struct Coupling {
    CouplingProfile profile = CouplingProfile::flat;
    double g = 0.003;
    /// Lorentzian only: g_k^2 = g^2 width^2 / ((omega_k - center)^2 + width^2).
    double center = 0.0;
    double width = 0.1;
};

class FriedrichsModel {
public:
    /// Modes sit at omega_k = lo + (k + 1/2) Delta with Delta = (hi - lo) / n_modes.
    FriedrichsModel(double omega0, double band_lo, double band_hi, std::size_t n_modes, Coupling coupling);
    /// omega0 = 0, band [-1, 1], 2000 modes, flat coupling g.
    static FriedrichsModel benchmark(double g = 0.003);

    double omega0() const { return omega0_; }
    double band_lo() const { return lo_; }
    double band_hi() const { return hi_; }
    std::size_t n_modes() const { return omega_.size(); }
    double spacing() const { return delta_; }
    const Coupling& coupling() const { return coupling_; }
    const std::vector<double>& omega() const { return omega_; }
    const std::vector<double>& g() const { return g_; }

    /// 2 pi g^2 / Delta.
    double golden_rule_rate() const;
    /// <e|H^2|e> - <e|H|e>^2 = sum_k g_k^2.
    double energy_variance() const;
    /// 2 pi / Delta.
    double recurrence_time() const { return 2.0 * 3.14159265358979323846 / delta_; }

    FriedrichsModel with_omega0(double omega0) const;

private:
    double omega0_, lo_, hi_, delta_;
    Coupling coupling_;
    std::vector<double> omega_;
    std::vector<double> g_;
};

/// Eigenvalues E_n of H and overlaps |<e|E_n>|^2.
struct Spectrum {
    std::vector<double> energies;
    std::vector<double> weights;
};

/// Full eigendecomposition of the (n+1) x (n+1) Hamiltonian (LAPACK dsyevr).
Spectrum diagonalize(const FriedrichsModel& model);

struct SurvivalRecord {
    std::vector<double> times;
    std::vector<std::complex<double>> amplitude;
    std::vector<double> probability;
    /// Set when some |t| exceeds a tenth of the recurrence time.
    bool recurrence_warning = false;
};

/// A(t) = sum_n |<e|E_n>|^2 exp(-i E_n t).
SurvivalRecord survival_amplitude(const Spectrum& spectrum, const std::vector<double>& times,
                                  double recurrence_time);
SurvivalRecord survival_amplitude(const FriedrichsModel& model, const std::vector<double>& times);

/// Uniform grid of 2 n + 1 times k t_max / n, k = -n..n, exactly symmetric about 0.
std::vector<double> symmetric_times(double t_max, std::size_t n_positive);

/// Least-squares slope of -ln P(t) over samples with t_lo <= t <= t_hi.
double fit_decay_rate(const SurvivalRecord& record, double t_lo, double t_hi);

struct SemigroupDefect {
    /// |A_exp(t1) A_exp(t2) - A_exp(t1 + t2)| with A_exp(t) = exp(-Gamma t / 2).
    double surrogate;
    /// |A(t1) A(t2) - A(t1 + t2)| for the sampled amplitude.
    double exact;
};

/// t1, t2 and t1 + t2 must all be sampled in `record`.
SemigroupDefect semigroup_approximation_error(const SurvivalRecord& record, double gamma, double t1, double t2);

/// First-sheet G(z) = 1 / (z - omega0 - Sigma(z)), Sigma(z) = sum_k g_k^2 / (z - omega_k).
std::complex<double> resolvent(const FriedrichsModel& model, std::complex<double> z);
std::complex<double> self_energy(const FriedrichsModel& model, std::complex<double> z);

enum class HalfPlane { lower, upper };

struct PoleResult {
    std::complex<double> z;
    int iterations;
};

/// Root of z - omega0 - Sigma_II(z) with Sigma_II = Sigma -+ 2 pi i g^2 / Delta, continued
/// through the band from above (lower pole) or from below (upper pole). Flat coupling only.
PoleResult second_sheet_pole(const FriedrichsModel& model, HalfPlane half = HalfPlane::lower);

} // namespace phasekit
