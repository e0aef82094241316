#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "phasekit/spin_bell.hpp"

namespace phasekit {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr std::size_t max_history_dim = 16;

/// Time-ordered projectors pi_1, pi_2, ...; pi_1 acts first.
class ProjectorChain {
public:
    ProjectorChain(std::vector<CMatrix> projectors, std::size_t dim);
    explicit ProjectorChain(std::vector<CMatrix> projectors);

    std::size_t dim() const { return dim_; }
    std::size_t length() const { return projectors_.size(); }
    const std::vector<CMatrix>& projectors() const { return projectors_; }
    /// Class operator C = pi_n ... pi_2 pi_1 (identity when empty).
    CMatrix operator_product() const;

private:
    std::vector<CMatrix> projectors_;
    std::size_t dim_;
};

/// Projector onto the `sign` eigenspace of sigma . axis, as a 2x2 matrix.
CMatrix pauli_projector(const BlochVector& axis, int sign);

/// Branch chains of equal length together with the initial state.
class BranchSet {
public:
    /// Pure initial state; must be normalized within 1e-12.
    BranchSet(std::vector<ProjectorChain> branches, const CVector& initial);
    /// Density-matrix initial state.
    BranchSet(std::vector<ProjectorChain> branches, const CMatrix& rho);

    const std::vector<ProjectorChain>& branches() const { return branches_; }
    const CMatrix& rho() const { return rho_; }
    std::size_t dim() const { return static_cast<std::size_t>(rho_.rows()); }
    std::size_t size() const { return branches_.size(); }

private:
    void validate() const;

    std::vector<ProjectorChain> branches_;
    CMatrix rho_;
};

/// Every ordered combination of one projector per slot, first slot earliest.
std::vector<ProjectorChain> product_histories(const std::vector<std::vector<CMatrix>>& families);

/// <final| pi_n ... pi_1 |initial>; |.|^2 is the history probability.
std::complex<double> chain_amplitude(const CVector& initial, const ProjectorChain& chain, const CVector& final);

/// Decoherence matrix over (branch, final) pairs, index a * F + j for branch a and
/// final vector j:
///   D[(a,j),(b,k)] = delta_jk <j| C_a rho C_b^dagger |j>.
/// The final family must be a complete orthonormal basis. With an empty family
/// the trace form D[a,b] = tr(C_a rho C_b^dagger) is returned instead.
CMatrix decoherence_matrix(const BranchSet& set, const std::vector<CVector>& final_family);

enum class ConsistencyMode { strict, weak };

struct ConsistencyReport {
    bool consistent;
    /// max |D_ij| (strict) or max |Re D_ij| (weak) over i != j.
    double max_off_diagonal;
};

ConsistencyReport is_consistent(const CMatrix& d, ConsistencyMode mode = ConsistencyMode::strict,
                                double tol = 1e-10);

} // namespace phasekit
