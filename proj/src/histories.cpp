#include "phasekit/histories.hpp"

#include <cmath>

#include "phasekit/error.hpp"

namespace phasekit {

namespace {

constexpr double kTol = 1e-12;

void check_dim(std::size_t d) {
    require(d >= 1 && d <= max_history_dim, Errc::dimension_mismatch,
            "history dimension must lie in [1, 16]");
}

void check_density(const CMatrix& rho) {
    require(rho.rows() == rho.cols(), Errc::dimension_mismatch, "density matrix must be square");
    require(rho.allFinite() && (rho - rho.adjoint()).norm() <= kTol, Errc::invalid_state,
            "density matrix is not Hermitian");
    require(std::abs(rho.trace() - std::complex<double>(1.0)) <= kTol, Errc::invalid_state,
            "density matrix trace is not 1");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(CMatrix(0.5 * (rho + rho.adjoint())), Eigen::EigenvaluesOnly);
    require(es.eigenvalues().minCoeff() >= -kTol, Errc::invalid_state, "density matrix is not positive");
}

} // namespace

ProjectorChain::ProjectorChain(std::vector<CMatrix> projectors, std::size_t dim)
    : projectors_(std::move(projectors)), dim_(dim) {
    check_dim(dim_);
    for (const auto& p : projectors_) {
        require(std::size_t(p.rows()) == dim_ && std::size_t(p.cols()) == dim_, Errc::dimension_mismatch,
                "projector dimension differs from the chain dimension");
        require(p.allFinite() && (p - p.adjoint()).norm() <= kTol, Errc::invalid_projector,
                "projector is not Hermitian");
        require((p * p - p).norm() <= kTol, Errc::invalid_projector, "projector is not idempotent");
    }
}

ProjectorChain::ProjectorChain(std::vector<CMatrix> projectors)
    : ProjectorChain(projectors, projectors.empty() ? 0 : std::size_t(projectors.front().rows())) {}

CMatrix ProjectorChain::operator_product() const {
    CMatrix c = CMatrix::Identity(dim_, dim_);
    for (const auto& p : projectors_) c = p * c;
    return c;
}

CMatrix pauli_projector(const BlochVector& axis, int sign) { return projector(axis, sign); }

BranchSet::BranchSet(std::vector<ProjectorChain> branches, const CVector& initial)
    : branches_(std::move(branches)) {
    require(initial.allFinite() && std::abs(initial.norm() - 1.0) <= kTol, Errc::invalid_state,
            "initial state must be normalized");
    rho_ = initial * initial.adjoint();
    validate();
}

BranchSet::BranchSet(std::vector<ProjectorChain> branches, const CMatrix& rho)
    : branches_(std::move(branches)), rho_(rho) {
    check_density(rho_);
    validate();
}

void BranchSet::validate() const {
    require(!branches_.empty(), Errc::invalid_argument, "branch set is empty");
    const std::size_t d = dim();
    check_dim(d);
    CMatrix total = CMatrix::Zero(d, d);
    for (const auto& b : branches_) {
        require(b.dim() == d, Errc::dimension_mismatch, "branch dimension differs from the state");
        require(b.length() == branches_.front().length(), Errc::dimension_mismatch,
                "branches must have equal length");
        total += b.operator_product();
    }
    // Exhaustive alternatives: the class operators resolve the identity.
    require((total - CMatrix::Identity(d, d)).norm() <= kTol, Errc::non_exhaustive_family,
            "branch class operators do not sum to the identity");
}

std::vector<ProjectorChain> product_histories(const std::vector<std::vector<CMatrix>>& families) {
    require(!families.empty(), Errc::invalid_argument, "no projector families given");
    for (const auto& f : families) require(!f.empty(), Errc::invalid_argument, "empty projector family");
    const std::size_t d = std::size_t(families.front().front().rows());
    std::vector<std::size_t> idx(families.size(), 0);
    std::vector<ProjectorChain> out;
    while (true) {
        std::vector<CMatrix> chain;
        for (std::size_t s = 0; s < families.size(); ++s) chain.push_back(families[s][idx[s]]);
        out.emplace_back(std::move(chain), d);
        // Odometer with the last slot varying fastest.
        std::size_t s = families.size();
        while (s > 0) {
            --s;
            if (++idx[s] < families[s].size()) break;
            idx[s] = 0;
            if (s == 0) return out;
        }
    }
}

std::complex<double> chain_amplitude(const CVector& initial, const ProjectorChain& chain, const CVector& final) {
    require(std::size_t(initial.size()) == chain.dim() && std::size_t(final.size()) == chain.dim(),
            Errc::dimension_mismatch, "state dimension differs from the chain dimension");
    CVector v = initial;
    for (const auto& p : chain.projectors()) v = p * v;
    return final.dot(v);
}

CMatrix decoherence_matrix(const BranchSet& set, const std::vector<CVector>& final_family) {
    const std::size_t d = set.dim(), nb = set.size(), nf = final_family.size();
    std::vector<CMatrix> c;
    c.reserve(nb);
    for (const auto& b : set.branches()) c.push_back(b.operator_product());

    if (nf == 0) {
        CMatrix out(nb, nb);
        for (std::size_t a = 0; a < nb; ++a)
            for (std::size_t b = 0; b < nb; ++b) out(a, b) = (c[a] * set.rho() * c[b].adjoint()).trace();
        return out;
    }

    for (const auto& v : final_family)
        require(std::size_t(v.size()) == d, Errc::dimension_mismatch, "final vector dimension differs");
    CMatrix gram(nf, nf);
    for (std::size_t i = 0; i < nf; ++i)
        for (std::size_t j = 0; j < nf; ++j) gram(i, j) = final_family[i].dot(final_family[j]);
    require((gram - CMatrix::Identity(nf, nf)).norm() <= kTol, Errc::non_exhaustive_family,
            "final family is not orthonormal");
    require(nf == d, Errc::non_exhaustive_family, "final family does not span the space");

    std::vector<CMatrix> left(nb);
    for (std::size_t a = 0; a < nb; ++a) left[a] = c[a] * set.rho();
    CMatrix out = CMatrix::Zero(nb * nf, nb * nf);
    for (std::size_t j = 0; j < nf; ++j) {
        const CVector& v = final_family[j];
        std::vector<CVector> bra(nb), ket(nb);
        for (std::size_t a = 0; a < nb; ++a) {
            bra[a] = left[a].adjoint() * v;     // (<j| C_a rho)^dagger
            ket[a] = c[a].adjoint() * v;        // C_a^dagger |j>
        }
        for (std::size_t a = 0; a < nb; ++a)
            for (std::size_t b = 0; b < nb; ++b) out(a * nf + j, b * nf + j) = bra[a].dot(ket[b]);
    }
    return out;
}

ConsistencyReport is_consistent(const CMatrix& d, ConsistencyMode mode, double tol) {
    require(d.rows() == d.cols(), Errc::dimension_mismatch, "decoherence matrix must be square");
    require(tol >= 0.0, Errc::invalid_argument, "tolerance must be nonnegative");
    double worst = 0.0;
    for (Eigen::Index i = 0; i < d.rows(); ++i)
        for (Eigen::Index j = 0; j < d.cols(); ++j) {
            if (i == j) continue;
            const double v = mode == ConsistencyMode::strict ? std::abs(d(i, j)) : std::abs(d(i, j).real());
            worst = std::max(worst, v);
        }
    return {worst <= tol, worst};
}

} // namespace phasekit
