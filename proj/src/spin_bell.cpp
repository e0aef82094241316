#include "phasekit/spin_bell.hpp"

#include <cmath>
#include <limits>

#include "phasekit/error.hpp"

namespace phasekit {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = 3.14159265358979323846;

Mat2 sigma_dot(const Eigen::Vector3d& n) {
    Mat2 m;
    m << cplx(n.z(), 0.0), cplx(n.x(), -n.y()),
         cplx(n.x(), n.y()), cplx(-n.z(), 0.0);
    return m;
}

void check_sign(int s) {
    require(s == 1 || s == -1, Errc::invalid_argument, "sign must be +1 or -1");
}

} // namespace

BlochVector::BlochVector(double x, double y, double z) : n_(x, y, z) {
    require(std::isfinite(x) && std::isfinite(y) && std::isfinite(z) &&
                std::abs(n_.norm() - 1.0) <= 1e-12,
            Errc::non_unit_vector, "direction must have unit length");
}

BlochVector BlochVector::from_angles(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

SpinState::SpinState(const Mat2& rho) : rho_(rho) {
    require(rho.allFinite(), Errc::invalid_state, "density matrix has non-finite entries");
    require((rho - rho.adjoint()).norm() <= 1e-12, Errc::invalid_state, "density matrix is not Hermitian");
    require(std::abs(rho.trace() - cplx(1.0)) <= 1e-12, Errc::invalid_state, "density matrix trace is not 1");
    const Mat2 herm = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat2> es(herm, Eigen::EigenvaluesOnly);
    require(es.eigenvalues().minCoeff() >= -1e-12, Errc::invalid_state, "density matrix is not positive");
}

SpinState SpinState::from_bloch(double x, double y, double z) {
    const Eigen::Vector3d r(x, y, z);
    require(r.allFinite() && r.norm() <= 1.0 + 1e-12, Errc::invalid_state, "Bloch vector longer than 1");
    return SpinState(0.5 * (Mat2::Identity() + sigma_dot(r)));
}

SpinState SpinState::pure(const BlochVector& n) { return SpinState(projector(n, 1)); }

SpinState SpinState::maximally_mixed() { return SpinState(0.5 * Mat2::Identity()); }

Mat2 projector(const BlochVector& n, int sign) {
    check_sign(sign);
    return 0.5 * (Mat2::Identity() + double(sign) * sigma_dot(n.vec()));
}

cplx pair_distribution(const SpinState& rho, const BlochVector& n1, const BlochVector& n2, int s1, int s2) {
    return (rho.rho() * projector(n1, s1) * projector(n2, s2)).trace();
}

double marginal(const SpinState& rho, const BlochVector& n, int sign) {
    return (rho.rho() * projector(n, sign)).trace().real();
}

cplx triple_distribution(const BlochVector& n, const BlochVector& n1, const BlochVector& n2,
                         int s, int s1, int s2) {
    return (projector(n, s) * projector(n1, s1) * projector(n2, s2)).trace();
}

MasterDistribution::MasterDistribution(std::vector<BlochVector> directions, std::vector<cplx> values)
    : directions_(std::move(directions)), values_(std::move(values)) {
    require(directions_.size() < 8 * sizeof(std::size_t) &&
                values_.size() == (std::size_t{1} << directions_.size()),
            Errc::dimension_mismatch, "master distribution needs 2^k values");
}

cplx MasterDistribution::value(const std::vector<int>& signs) const {
    require(signs.size() == directions_.size(), Errc::dimension_mismatch, "one sign per direction");
    std::size_t mask = 0;
    for (std::size_t i = 0; i < signs.size(); ++i) {
        check_sign(signs[i]);
        if (signs[i] < 0) mask |= std::size_t{1} << i;
    }
    return values_[mask];
}

cplx MasterDistribution::sum() const {
    cplx s = 0.0;
    for (const auto& v : values_) s += v;
    return s;
}

cplx MasterDistribution::marginal(std::size_t k, int sign) const {
    require(k < directions_.size(), Errc::invalid_argument, "direction index out of range");
    check_sign(sign);
    const bool minus = sign < 0;
    cplx s = 0.0;
    for (std::size_t m = 0; m < values_.size(); ++m)
        if (bool((m >> k) & 1u) == minus) s += values_[m];
    return s;
}

MasterDistribution master_distribution(const SpinState& rho, std::vector<BlochVector> directions) {
    const std::size_t k = directions.size();
    require(k <= 16, Errc::invalid_argument, "at most 16 directions");
    std::vector<Mat2> plus, minus;
    for (const auto& n : directions) {
        plus.push_back(projector(n, 1));
        minus.push_back(projector(n, -1));
    }
    std::vector<cplx> values(std::size_t{1} << k);
    for (std::size_t m = 0; m < values.size(); ++m) {
        Mat2 prod = rho.rho();
        for (std::size_t i = 0; i < k; ++i) prod = prod * (((m >> i) & 1u) ? minus[i] : plus[i]);
        values[m] = prod.trace();
    }
    return MasterDistribution(std::move(directions), std::move(values));
}

double symmetrized_triple(const BlochVector& n1, const BlochVector& n2, const BlochVector& n3) {
    return 0.25 * (1.0 + n1.dot(n2) + n2.dot(n3) + n3.dot(n1));
}

double symmetrized_triple_trace(const BlochVector& n1, const BlochVector& n2, const BlochVector& n3) {
    const Mat2 p[3] = {projector(n1, 1), projector(n2, 1), projector(n3, 1)};
    constexpr int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    cplx s = 0.0;
    for (const auto& o : perms) s += (p[o[0]] * p[o[1]] * p[o[2]]).trace();
    return s.real() / 6.0;
}

double two_point(const BlochVector& a, const BlochVector& b, Sector sector) {
    const int sb = sector == Sector::agreement ? 1 : -1;
    return (projector(a, 1) * projector(b, sb)).trace().real();
}

TriangleResult triangle_inequality_check(const BlochVector& n1, const BlochVector& n2,
                                         const BlochVector& n3, Sector sector) {
    const double p12 = two_point(n1, n2, sector);
    const double p13 = two_point(n1, n3, sector);
    const double p23 = two_point(n2, n3, sector);
    const double slack = std::min({p12 + p13 - p23, p12 + p23 - p13, p13 + p23 - p12});
    // Rounding noise on exactly-degenerate triples should not count as a violation.
    return {slack >= -1e-14, slack};
}

ViolationResult violation_search(double resolution_deg, Sector sector, double max_angle_deg) {
    require(resolution_deg >= 1.0 && resolution_deg <= 15.0, Errc::invalid_argument,
            "resolution must lie in [1, 15] degrees");
    require(max_angle_deg > 0.0 && max_angle_deg <= 360.0, Errc::invalid_argument,
            "max angle must lie in (0, 360] degrees");
    const auto steps = static_cast<std::size_t>(std::floor(max_angle_deg / resolution_deg + 1e-9));
    // A full turn is periodic, so its endpoint duplicates 0.
    const std::size_t count = max_angle_deg >= 360.0 ? steps : steps + 1;
    const BlochVector n1(0.0, 0.0, 1.0);
    auto in_plane = [](double deg) {
        const double a = deg * kPi / 180.0;
        return BlochVector(std::sin(a), 0.0, std::cos(a));
    };

    ViolationResult best{0.0, 0.0, std::numeric_limits<double>::infinity(), {n1, n1, n1}};
    for (std::size_t i = 0; i < count; ++i) {
        const double a2 = double(i) * resolution_deg;
        const BlochVector n2 = in_plane(a2);
        for (std::size_t j = 0; j < count; ++j) {
            const double a3 = double(j) * resolution_deg;
            const BlochVector n3 = in_plane(a3);
            const double slack = triangle_inequality_check(n1, n2, n3, sector).slack;
            if (slack < best.slack) best = {a2, a3, slack, {n1, n2, n3}};
        }
    }
    return best;
}

} // namespace phasekit
