#pragma once

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace phasekit {

using Mat2 = Eigen::Matrix2cd;

/// Unit direction in R^3.
class BlochVector {
public:
    BlochVector(double x, double y, double z);
    explicit BlochVector(const Eigen::Vector3d& v) : BlochVector(v.x(), v.y(), v.z()) {}
    /// Polar angle theta from +z and azimuth phi, in radians.
    static BlochVector from_angles(double theta, double phi);

    const Eigen::Vector3d& vec() const { return n_; }
    double dot(const BlochVector& o) const { return n_.dot(o.n_); }

private:
    Eigen::Vector3d n_;
};

/// 2x2 density operator.
class SpinState {
public:
    explicit SpinState(const Mat2& rho);
    /// rho = (1 + r . sigma) / 2 with |r| <= 1.
    static SpinState from_bloch(double x, double y, double z);
    static SpinState pure(const BlochVector& n);
    static SpinState maximally_mixed();

    const Mat2& rho() const { return rho_; }

private:
    Mat2 rho_;
};

/// (1 + sign sigma . n) / 2.
Mat2 projector(const BlochVector& n, int sign);

/// tr(rho pi(n1, s1) pi(n2, s2)); complex in general.
std::complex<double> pair_distribution(const SpinState& rho, const BlochVector& n1,
                                       const BlochVector& n2, int s1, int s2);

/// tr(rho pi(n, s)), real in [0, 1].
double marginal(const SpinState& rho, const BlochVector& n, int sign);

/// tr(pi(n, s) pi(n1, s1) pi(n2, s2)). At fixed s the four (s1, s2) values sum
/// to 1; over all eight sign assignments they sum to tr(1) = 2.
std::complex<double> triple_distribution(const BlochVector& n, const BlochVector& n1,
                                         const BlochVector& n2, int s, int s1, int s2);

/// tr(rho pi(n_1, s_1) ... pi(n_k, s_k)) over all 2^k sign assignments.
class MasterDistribution {
public:
    MasterDistribution(std::vector<BlochVector> directions, std::vector<std::complex<double>> values);

    const std::vector<BlochVector>& directions() const { return directions_; }
    /// signs[i] is +1 or -1 for direction i.
    std::complex<double> value(const std::vector<int>& signs) const;
    /// Bit i of `mask` set means direction i carries sign -1.
    std::complex<double> value_at(std::size_t mask) const { return values_[mask]; }
    std::size_t size() const { return values_.size(); }
    std::complex<double> sum() const;
    /// Sum over every direction except `k`, at sign s for direction k.
    std::complex<double> marginal(std::size_t k, int sign) const;

private:
    std::vector<BlochVector> directions_;
    std::vector<std::complex<double>> values_;
};

MasterDistribution master_distribution(const SpinState& rho, std::vector<BlochVector> directions);

/// (1/4)(1 + cos t12 + cos t23 + cos t31).
double symmetrized_triple(const BlochVector& n1, const BlochVector& n2, const BlochVector& n3);

/// Average of tr(pi_a pi_b pi_c) over the six orderings, all signs +.
double symmetrized_triple_trace(const BlochVector& n1, const BlochVector& n2, const BlochVector& n3);

/// Two-point value entering the triangle inequality.
///   agreement:    P_ij = Re tr(pi(n_i,+) pi(n_j,+)) = (1 + cos t_ij) / 2
///   disagreement: D_ij = Re tr(pi(n_i,+) pi(n_j,-))  = (1 - cos t_ij) / 2
enum class Sector { agreement, disagreement };

double two_point(const BlochVector& a, const BlochVector& b, Sector sector);

struct TriangleResult {
    bool holds;
    /// Minimum over the three cyclic variants of P_ij + P_ik - P_jk.
    double slack;
};

TriangleResult triangle_inequality_check(const BlochVector& n1, const BlochVector& n2,
                                         const BlochVector& n3, Sector sector = Sector::agreement);

struct ViolationResult {
    /// In-plane angles (degrees) of n2 and n3 measured from n1 = +z in the x-z plane.
    double angle2_deg;
    double angle3_deg;
    double slack;
    std::array<BlochVector, 3> directions;
};

/// Exhaustive scan of coplanar triples on a grid of `resolution_deg` in both
/// free angles over [0, max_angle_deg]. The first minimum in scan order wins.
ViolationResult violation_search(double resolution_deg, Sector sector = Sector::agreement,
                                 double max_angle_deg = 360.0);

} // namespace phasekit
