#pragma once

#include <span>
#include <vector>

#include "phasekit/phasespace.hpp"

namespace phasekit {

/// Quadrature direction: the tomogram measures x = lambda p + mu q.
struct Ray {
    double lambda;
    double mu;

    double norm() const;
    /// atan2(mu, lambda).
    double angle() const;
    static Ray at_angle(double theta);
};

/// P(ray, nu) sampled on one shared nu axis; row-major with the ray outer.
class Tomogram {
public:
    Tomogram(std::vector<Ray> rays, Axis nu, std::vector<double> values, HbarConfig hbar = {});

    std::span<const Ray> rays() const { return rays_; }
    const Axis& nu() const { return nu_; }
    const HbarConfig& hbar() const { return hbar_; }
    std::size_t n_rays() const { return rays_.size(); }
    std::span<const double> row(std::size_t r) const {
        return std::span<const double>(values_).subspan(r * nu_.count, nu_.count);
    }
    std::span<const double> values() const { return values_; }

    /// sum_nu P dnu for ray r.
    double integral(std::size_t r) const;
    double min_value() const;

private:
    std::vector<Ray> rays_;
    Axis nu_;
    std::vector<double> values_;
    HbarConfig hbar_;
};

/// `n` rays with angles pi r / n, r = 0..n-1.
std::vector<Ray> uniform_rays(std::size_t n);

/// P(lambda, mu, nu) = int W delta(lambda p + mu q - nu) dq dp. Each grid row (or
/// column, for steep rays) is integrated along the line using the trigonometric
/// interpolant of W, evaluated at all nu points at once by a chirp-z transform.
Tomogram tomogram_from_wigner(const WignerFunction& w, std::span<const Ray> rays, const Axis& nu);

/// Sup-norm of P(s lambda, s mu, s nu) - P(lambda, mu, nu) / |s| over all rays
/// and nu, where `scaled` holds the rays s * rays(base) on the axis s * nu(base).
double scaling_check(const Tomogram& base, const Tomogram& scaled, double s);

/// Computes both tomograms from w and compares them.
double scaling_check(const WignerFunction& w, std::span<const Ray> rays, const Axis& nu, double s);

/// Fourier-slice inversion onto `target`. Requires unit rays at >= 64 uniform
/// angles covering [0, pi).
WignerFunction wigner_from_tomogram(const Tomogram& t, const PhaseSpaceGrid& target);
/// As above on a centred grid of n_nu/2 points per axis with spacing 2 dnu.
WignerFunction wigner_from_tomogram(const Tomogram& t);

} // namespace phasekit
