#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <utility>
#include <vector>

#include "qlab/fock.hpp"
#include "qlab/jackson.hpp"

namespace qlab {

inline Eigen::MatrixXd to_eigen(const DenseMatrix<double>& m) {
    Eigen::MatrixXd out(m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m.at(i, j);
    return out;
}

inline Eigen::MatrixXd global_gram(const FockRep<double>& rep) {
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rep.total_dim),
                                              static_cast<Eigen::Index>(rep.total_dim));
    for (unsigned n = 0; n <= rep.cutoff; ++n) {
        const auto off = static_cast<Eigen::Index>(rep.level_offset[n]);
        const auto sz = static_cast<Eigen::Index>(rep.level_size[n]);
        g.block(off, off, sz, sz) = to_eigen(rep.gram[n]);
    }
    return g;
}

/// Orthonormalizing maps for the (possibly degenerate) deformed Gram:
/// null directions are quotiented away, positive ones rescaled so that
/// `forward * X * backward` is the matrix of X on an orthonormal basis of
/// the quotient Hilbert space.
struct HilbertBasis {
    Eigen::MatrixXd forward;   // rank x dim
    Eigen::MatrixXd backward;  // dim x rank
};

inline HilbertBasis hilbert_basis(const FockRep<double>& rep, double rel_eps = 1e-12) {
    const Eigen::MatrixXd g = global_gram(rep);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
    const auto& lam = es.eigenvalues();
    const double lmax = lam.size() ? lam.maxCoeff() : 0.0;
    const double floor = std::max(lmax * rel_eps, 1e-300);
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < lam.size(); ++i)
        if (lam(i) > floor) keep.push_back(i);
    HilbertBasis hb;
    hb.forward.resize(static_cast<Eigen::Index>(keep.size()), g.rows());
    hb.backward.resize(g.rows(), static_cast<Eigen::Index>(keep.size()));
    for (size_t r = 0; r < keep.size(); ++r) {
        const double root = std::sqrt(lam(keep[r]));
        hb.forward.row(static_cast<Eigen::Index>(r)) = root * es.eigenvectors().col(keep[r]).transpose();
        hb.backward.col(static_cast<Eigen::Index>(r)) = es.eigenvectors().col(keep[r]) / root;
    }
    return hb;
}

inline Eigen::MatrixXd hilbert_matrix(const HilbertBasis& hb, const DenseMatrix<double>& op) {
    return hb.forward * to_eigen(op) * hb.backward;
}

/// Hilbert-space operator norm of a Gram-self-adjoint operator: spectral
/// radius of its symmetrized quotient matrix.
inline double hilbert_operator_norm(const FockRep<double>& rep, const DenseMatrix<double>& op) {
    const auto hb = hilbert_basis(rep);
    Eigen::MatrixXd m = hilbert_matrix(hb, op);
    m = 0.5 * (m + m.transpose().eval());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().size() == 0) return 0.0;
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

/// Spectral norm (largest singular value) of the commutation defect.
inline double commutation_residual(const FockRep<double>& rep, const std::vector<double>& f,
                                   const std::vector<double>& g) {
    const Eigen::MatrixXd d = to_eigen(commutation_defect(rep, f, g));
    if (d.rows() == 0) return 0.0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(d);
    return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

/// Truncated-spectrum estimate of ||G(f)|| with a cutoff-convergence
/// report. The per-cutoff values are spectral radii of the truncated
/// operator; `estimate` Richardson-extrapolates the 1/(cutoff+2)^2 edge
/// bias of hard truncation when the sequence is settling, and is never
/// an exact norm claim. A growing sequence (converging = false) keeps
/// the raw top-cutoff value, as with q = 1 where the operator is
/// unbounded.
struct NormEstimate {
    std::vector<std::pair<unsigned, double>> per_cutoff;
    double estimate = 0.0;
    bool converging = false;
};

inline NormEstimate gaussian_norm_estimate(const FockRep<double>& rep, const std::vector<double>& f) {
    NormEstimate out;
    const unsigned m = rep.cutoff;
    const unsigned step = std::max(2u, m / 6);
    std::vector<unsigned> cutoffs;
    if (m > 2 * step) cutoffs.push_back(m - 2 * step);
    if (m > step) cutoffs.push_back(m - step);
    cutoffs.push_back(m);
    for (unsigned c : cutoffs) {
        const auto sub = build_fock(rep.dim_h, c, rep.deform_q, rep.level_scale, rep.flavor, rep.covariance);
        out.per_cutoff.emplace_back(c, hilbert_operator_norm(sub, gaussian_matrix(sub, f)));
    }
    const size_t k = out.per_cutoff.size();
    out.estimate = out.per_cutoff.back().second;
    if (k >= 2) {
        const double l1 = out.per_cutoff[k - 2].second, l2 = out.per_cutoff[k - 1].second;
        double d_prev = std::abs(l2 - l1);
        if (k >= 3) {
            const double l0 = out.per_cutoff[k - 3].second;
            out.converging = d_prev <= std::abs(l1 - l0) + 1e-12;
        } else {
            out.converging = true;
        }
        if (out.converging) {
            const double n1 = out.per_cutoff[k - 2].first + 2.0, n2 = out.per_cutoff[k - 1].first + 2.0;
            out.estimate = (n2 * n2 * l2 - n1 * n1 * l1) / (n2 * n2 - n1 * n1);
        }
    }
    return out;
}

}  // namespace qlab
