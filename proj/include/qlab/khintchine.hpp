#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "qlab/fock_numeric.hpp"

namespace qlab {

/// The Boolean Gaussian matrices on C Omega + span{e_1..e_N}:
/// omega_i swaps Omega and e_i, zero elsewhere; omega_i^2 = I.
inline std::vector<Eigen::MatrixXd> boolean_omegas(unsigned n_count) {
    std::vector<Eigen::MatrixXd> omegas;
    omegas.reserve(n_count);
    for (unsigned i = 1; i <= n_count; ++i) {
        Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n_count + 1, n_count + 1);
        w(0, i) = 1.0;
        w(i, 0) = 1.0;
        omegas.push_back(std::move(w));
    }
    return omegas;
}

/// Operator norm (largest singular value); dense eigensolve of the
/// Hermitian square, with seeded power iteration above a size threshold.
inline double operator_norm(const Eigen::MatrixXcd& m, size_t dense_threshold = 600) {
    if (m.rows() == 0 || m.cols() == 0) return 0.0;
    const Eigen::MatrixXcd sq = m.adjoint() * m;
    if (static_cast<size_t>(sq.rows()) <= dense_threshold) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sq, Eigen::EigenvaluesOnly);
        return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
    }
    std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
    std::normal_distribution<double> gauss;
    Eigen::VectorXcd v(sq.rows());
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = std::complex<double>(gauss(rng), gauss(rng));
    v.normalize();
    double lambda = 0.0;
    for (int it = 0; it < 10000; ++it) {
        Eigen::VectorXcd w = sq * v;
        const double next = w.norm();
        if (next == 0.0) return 0.0;
        w /= next;
        const double residual = (sq * w - next * w).norm();
        v = std::move(w);
        lambda = next;
        if (residual <= 1e-12 * next) break;
    }
    return std::sqrt(lambda);
}

/// max{ ||sum a_j a_j*||^(1/2), ||sum a_j* a_j||^(1/2) }.
inline double khintchine_rhs(const std::vector<Eigen::MatrixXcd>& alphas) {
    if (alphas.empty()) return 0.0;
    const auto rows = alphas.front().rows();
    const auto cols = alphas.front().cols();
    Eigen::MatrixXcd row_sq = Eigen::MatrixXcd::Zero(rows, rows);
    Eigen::MatrixXcd col_sq = Eigen::MatrixXcd::Zero(cols, cols);
    for (const auto& a : alphas) {
        if (a.rows() != rows || a.cols() != cols)
            throw std::invalid_argument("khintchine_rhs: coefficient size mismatch");
        row_sq += a * a.adjoint();
        col_sq += a.adjoint() * a;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> er(row_sq, Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ec(col_sq, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max({0.0, er.eigenvalues().maxCoeff(), ec.eigenvalues().maxCoeff()}));
}

inline Eigen::MatrixXcd kronecker(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

/// ||sum_j alpha_j (x) X_j||; the X_j must be self-adjoint matrices on
/// their Hilbert space (already Gram-orthonormalized when they come from
/// a deformed Fock representation).
inline double khintchine_lhs(const std::vector<Eigen::MatrixXcd>& alphas,
                             const std::vector<Eigen::MatrixXcd>& xs) {
    if (alphas.size() != xs.size()) throw std::invalid_argument("khintchine_lhs: count mismatch");
    if (alphas.empty()) return 0.0;
    Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(alphas.front().rows() * xs.front().rows(),
                                                alphas.front().cols() * xs.front().cols());
    for (size_t j = 0; j < alphas.size(); ++j) {
        if (alphas[j].rows() != alphas.front().rows() || alphas[j].cols() != alphas.front().cols() ||
            xs[j].rows() != xs.front().rows() || xs[j].cols() != xs.front().cols())
            throw std::invalid_argument("khintchine_lhs: size mismatch");
        t += kronecker(alphas[j], xs[j]);
    }
    return operator_norm(t);
}

/// T = sum_i alpha_i (x) omega_i and its blocks of T T*; the zero blocks
/// hold exactly in floating point (every contributing product carries an
/// exact zero factor).
struct BooleanBlocks {
    Eigen::MatrixXcd t;          // (N+1)p x (N+1)r
    Eigen::MatrixXcd tt_star;    // (N+1)p square
    Eigen::MatrixXcd a_block;    // sum alpha_i alpha_i*
    double max_offblock_abs = 0.0;
    double max_block_mismatch = 0.0;  // against the formula blocks
};

inline BooleanBlocks boolean_tt_star_blocks(const std::vector<Eigen::MatrixXcd>& alphas) {
    const unsigned n_count = static_cast<unsigned>(alphas.size());
    const auto p = alphas.front().rows();
    const auto r = alphas.front().cols();
    const auto omegas = boolean_omegas(n_count);
    BooleanBlocks out;
    out.t = Eigen::MatrixXcd::Zero((n_count + 1) * p, (n_count + 1) * r);
    for (unsigned i = 0; i < n_count; ++i) out.t += kronecker(omegas[i].cast<std::complex<double>>(), alphas[i]);
    out.tt_star = out.t * out.t.adjoint();

    out.a_block = Eigen::MatrixXcd::Zero(p, p);
    for (const auto& a : alphas) out.a_block += a * a.adjoint();
    out.max_block_mismatch = (out.tt_star.block(0, 0, p, p) - out.a_block).cwiseAbs().maxCoeff();
    for (unsigned i = 1; i <= n_count; ++i)
        for (unsigned j = 1; j <= n_count; ++j) {
            const Eigen::MatrixXcd expected = alphas[i - 1] * alphas[j - 1].adjoint();
            out.max_block_mismatch =
                std::max(out.max_block_mismatch,
                         (out.tt_star.block(i * p, j * p, p, p) - expected).cwiseAbs().maxCoeff());
        }
    for (unsigned i = 1; i <= n_count; ++i) {
        out.max_offblock_abs = std::max(out.max_offblock_abs, out.tt_star.block(0, i * p, p, p).cwiseAbs().maxCoeff());
        out.max_offblock_abs = std::max(out.max_offblock_abs, out.tt_star.block(i * p, 0, p, p).cwiseAbs().maxCoeff());
    }
    return out;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Independent standard complex Gaussian entries, deterministic per
/// (seed, stream) so trials are reproducible and parallel-safe.
inline Eigen::MatrixXcd random_complex_gaussian(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed,
                                                std::uint64_t stream) {
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(stream)));
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) {
            const double re = gauss(rng), im = gauss(rng);
            m(i, j) = std::complex<double>(re / std::sqrt(2.0), im / std::sqrt(2.0));
        }
    return m;
}

enum class KhintchineFlavor { boolean_gaussian, free_gaussian, q_continuous, q_discrete };

inline const char* to_string(KhintchineFlavor f) {
    switch (f) {
        case KhintchineFlavor::boolean_gaussian: return "boolean";
        case KhintchineFlavor::free_gaussian: return "free";
        case KhintchineFlavor::q_continuous: return "qccr";
        case KhintchineFlavor::q_discrete: return "qdisc";
    }
    return "?";
}

struct KhintchineReport {
    std::string flavor;
    unsigned n_count = 0;
    unsigned matrix_size = 0;
    unsigned cutoff = 0;
    double q = 0.0;
    std::uint64_t seed = 0;
    unsigned trials = 0;
    double ratio_min = 0.0, ratio_max = 0.0, ratio_mean = 0.0;
    std::vector<double> ratios;
    double cutoff_convergence = 0.0;  // max |ratio(cutoff) - ratio(cutoff-1)| on trial 0
};

/// Gram-orthonormalized Gaussian family G(e_1)..G(e_N) for a flavor.
inline std::vector<Eigen::MatrixXcd> gaussian_family_matrices(KhintchineFlavor flavor, unsigned n_count,
                                                              unsigned cutoff, double q) {
    if (flavor == KhintchineFlavor::boolean_gaussian) {
        std::vector<Eigen::MatrixXcd> xs;
        for (auto& w : boolean_omegas(n_count)) xs.push_back(w.cast<std::complex<double>>());
        return xs;
    }
    FockRep<double> rep;
    switch (flavor) {
        case KhintchineFlavor::free_gaussian: rep = build_fock_qccr<double>(n_count, cutoff, 0.0); break;
        case KhintchineFlavor::q_continuous: rep = build_fock_qccr<double>(n_count, cutoff, q); break;
        case KhintchineFlavor::q_discrete: rep = build_fock_qdisc<double>(n_count, cutoff, q); break;
        default: break;
    }
    const auto hb = hilbert_basis(rep);
    std::vector<Eigen::MatrixXcd> xs;
    for (unsigned j = 0; j < n_count; ++j) {
        std::vector<double> e(n_count, 0.0);
        e[j] = 1.0;
        Eigen::MatrixXd x = hilbert_matrix(hb, gaussian_matrix(rep, e));
        x = 0.5 * (x + x.transpose().eval());
        xs.push_back(x.cast<std::complex<double>>());
    }
    return xs;
}

/// Per-trial lhs/rhs ratios over seeded random complex coefficients.
inline KhintchineReport ratio_experiment(KhintchineFlavor flavor, unsigned n_count, unsigned matrix_size,
                                         unsigned cutoff, double q, unsigned trials, std::uint64_t seed) {
    KhintchineReport rep;
    rep.flavor = to_string(flavor);
    rep.n_count = n_count;
    rep.matrix_size = matrix_size;
    rep.cutoff = cutoff;
    rep.q = q;
    rep.seed = seed;
    rep.trials = trials;
    const auto xs = gaussian_family_matrices(flavor, n_count, cutoff, q);

    double sum = 0.0;
    for (unsigned t = 0; t < trials; ++t) {
        std::vector<Eigen::MatrixXcd> alphas;
        alphas.reserve(n_count);
        for (unsigned j = 0; j < n_count; ++j)
            alphas.push_back(random_complex_gaussian(matrix_size, matrix_size, seed,
                                                     static_cast<std::uint64_t>(t) * n_count + j));
        const double lhs = khintchine_lhs(alphas, xs);
        const double rhs = khintchine_rhs(alphas);
        const double ratio = lhs / rhs;
        rep.ratios.push_back(ratio);
        sum += ratio;
        if (t == 0) {
            rep.ratio_min = rep.ratio_max = ratio;
            if (flavor != KhintchineFlavor::boolean_gaussian && cutoff >= 2) {
                const auto xs_small = gaussian_family_matrices(flavor, n_count, cutoff - 1, q);
                rep.cutoff_convergence = std::abs(khintchine_lhs(alphas, xs_small) / rhs - ratio);
            }
        } else {
            rep.ratio_min = std::min(rep.ratio_min, ratio);
            rep.ratio_max = std::max(rep.ratio_max, ratio);
        }
    }
    rep.ratio_mean = trials ? sum / trials : 0.0;
    return rep;
}

}  // namespace qlab
