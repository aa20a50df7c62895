#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qlab/linalg.hpp"
#include "qlab/orthopoly.hpp"
#include "qlab/polynomial.hpp"

namespace qlab {

enum class FockFlavor { generic, qccr, qdisc, inverse };

inline const char* to_string(FockFlavor f) {
    switch (f) {
        case FockFlavor::generic: return "generic";
        case FockFlavor::qccr: return "qccr";
        case FockFlavor::qdisc: return "qdisc";
        case FockFlavor::inverse: return "inverse";
    }
    return "?";
}

/// Truncated deformed Fock space over a dim_h-dimensional one-particle
/// space, graded by tensor level 0..cutoff.
///
/// Normalization (fixed by the commutation relations and the Wick formula
/// the acceptance checks):
///   creation        A+(f) xi_n = f (x) xi_n
///   annihilation    A(f) = t^{n-1} sum_k q'^{k-1} <x_k|f> (drop slot k)
///   level Gram      t^{binom(n,2)} sum_{sigma} q'^{inv(sigma)} P_sigma
/// with q' = deform_q and t = level_scale. Then
///   A(f) A+(g) - (t q') A+(g) A(f) = t^N <f,g> I
/// and vacuum Wick weights are t^{ip/2} q'^{cr}. Flavors: generic (q,s)
/// has t = s; qccr t = 1; q-discrete t = q (the s^2 = q point of the
/// s^{2(n-1)} convention); inverse uses q' = 1/q, t = q so that
/// B B+ - B+ B = q^N with nesting-weighted Wick sums.
template <class S>
struct FockRep {
    unsigned dim_h = 1;
    unsigned cutoff = 0;
    S deform_q{0};
    S level_scale{1};
    FockFlavor flavor = FockFlavor::generic;
    DenseMatrix<S> covariance;

    std::vector<size_t> level_offset;        // per level 0..cutoff
    std::vector<size_t> level_size;          // dim_h^n
    size_t total_dim = 0;
    std::vector<DenseMatrix<S>> gram;        // per level, prefactor included

    size_t index_of(unsigned level, size_t local) const { return level_offset[level] + local; }

    std::vector<unsigned> word_of(unsigned level, size_t local) const {
        std::vector<unsigned> w(level);
        for (unsigned i = level; i-- > 0;) {
            w[i] = static_cast<unsigned>(local % dim_h);
            local /= dim_h;
        }
        return w;
    }
    size_t local_of(const std::vector<unsigned>& word) const {
        size_t local = 0;
        for (unsigned letter : word) local = local * dim_h + letter;
        return local;
    }
};

namespace detail {

template <class S>
S binom2_power(const S& base, unsigned n) {
    return ipow(base, static_cast<unsigned long>(n) * (n - 1) / 2);
}

}  // namespace detail

inline constexpr size_t kDefaultFockBasisCap = 100000;

/// Builds the graded basis and the per-level deformed Gram matrices.
/// Grams come from the recursion <e_i (x) w | u>_q = sum_k q'^{k-1}
/// B(u_k, i) <w | u without k>_q, then the t^{binom(n,2)} prefactor.
template <class S>
FockRep<S> build_fock(unsigned dim_h, unsigned cutoff, const S& deform_q, const S& level_scale,
                      FockFlavor flavor, DenseMatrix<S> covariance = {},
                      size_t basis_cap = kDefaultFockBasisCap) {
    if (dim_h == 0) throw std::invalid_argument("build_fock: dim_h must be positive");
    FockRep<S> rep;
    rep.dim_h = dim_h;
    rep.cutoff = cutoff;
    rep.deform_q = deform_q;
    rep.level_scale = level_scale;
    rep.flavor = flavor;
    rep.covariance = covariance.rows() == 0 ? DenseMatrix<S>::identity(dim_h) : std::move(covariance);
    if (rep.covariance.rows() != dim_h || rep.covariance.cols() != dim_h)
        throw std::invalid_argument("build_fock: covariance must be dim_h x dim_h");

    size_t size = 1;
    for (unsigned n = 0; n <= cutoff; ++n) {
        rep.level_offset.push_back(rep.total_dim);
        rep.level_size.push_back(size);
        rep.total_dim += size;
        if (rep.total_dim > basis_cap) throw std::domain_error("build_fock: basis cap exceeded");
        size *= dim_h;
    }

    rep.gram.reserve(cutoff + 1);
    rep.gram.push_back(DenseMatrix<S>::identity(1));
    std::vector<DenseMatrix<S>> plain;  // Gram without the level prefactor
    plain.push_back(DenseMatrix<S>::identity(1));
    for (unsigned n = 0; n < cutoff; ++n) {
        const size_t rows = rep.level_size[n + 1];
        DenseMatrix<S> g(rows, rows);
        std::vector<unsigned> u;
        for (size_t cu = 0; cu < rows; ++cu) {
            u = rep.word_of(n + 1, cu);
            for (unsigned i = 0; i < rep.dim_h; ++i) {
                for (size_t w = 0; w < rep.level_size[n]; ++w) {
                    const size_t row = static_cast<size_t>(i) * rep.level_size[n] + w;
                    S acc(0);
                    S qk(1);
                    for (unsigned k = 0; k <= n; ++k) {
                        const S& b = rep.covariance.at(u[k], i);
                        if (!is_zero_value(b)) {
                            // u with slot k removed, then paired with w
                            size_t local = 0;
                            for (unsigned j = 0; j <= n; ++j)
                                if (j != k) local = local * rep.dim_h + u[j];
                            acc += qk * b * plain[n].at(w, local);
                        }
                        qk = qk * deform_q;
                    }
                    g.at(row, cu) = acc;
                }
            }
        }
        plain.push_back(g);
        rep.gram.push_back(g.scaled(detail::binom2_power(level_scale, n + 1)));
    }
    return rep;
}

template <class S>
FockRep<S> build_fock_generic(unsigned dim_h, unsigned cutoff, const S& q, const S& s,
                              DenseMatrix<S> covariance = {}, size_t cap = kDefaultFockBasisCap) {
    return build_fock(dim_h, cutoff, q, s, FockFlavor::generic, std::move(covariance), cap);
}
template <class S>
FockRep<S> build_fock_qccr(unsigned dim_h, unsigned cutoff, const S& q, DenseMatrix<S> covariance = {},
                           size_t cap = kDefaultFockBasisCap) {
    return build_fock(dim_h, cutoff, q, S(1), FockFlavor::qccr, std::move(covariance), cap);
}
template <class S>
FockRep<S> build_fock_qdisc(unsigned dim_h, unsigned cutoff, const S& q, DenseMatrix<S> covariance = {},
                            size_t cap = kDefaultFockBasisCap) {
    return build_fock(dim_h, cutoff, q, q, FockFlavor::qdisc, std::move(covariance), cap);
}
/// |q| >= 1 flavor: internally A_{1/q, q}; needs a field scalar.
template <class S>
FockRep<S> build_fock_inverse(unsigned dim_h, unsigned cutoff, const S& q, DenseMatrix<S> covariance = {},
                              size_t cap = kDefaultFockBasisCap) {
    if (is_zero_value(q)) throw std::domain_error("build_fock_inverse: q must be nonzero");
    return build_fock(dim_h, cutoff, S(1) / q, q, FockFlavor::inverse, std::move(covariance), cap);
}

/// Left tensoring by f in the graded basis; level `cutoff` maps to zero.
template <class S>
DenseMatrix<S> creation_matrix(const FockRep<S>& rep, const std::vector<S>& f) {
    if (f.size() != rep.dim_h) throw std::invalid_argument("creation_matrix: bad vector dimension");
    DenseMatrix<S> m(rep.total_dim, rep.total_dim);
    for (unsigned n = 0; n + 1 <= rep.cutoff; ++n)
        for (size_t w = 0; w < rep.level_size[n]; ++w)
            for (unsigned i = 0; i < rep.dim_h; ++i) {
                if (is_zero_value(f[i])) continue;
                const size_t row = rep.index_of(n + 1, static_cast<size_t>(i) * rep.level_size[n] + w);
                m.at(row, rep.index_of(n, w)) = f[i];
            }
    return m;
}

/// Explicit annihilation formula t^{n-1} sum_k q'^{k-1} <x_k|f> drop_k;
/// the Gram-adjointness of this against creation is a tested identity.
template <class S>
DenseMatrix<S> annihilation_matrix(const FockRep<S>& rep, const std::vector<S>& f) {
    if (f.size() != rep.dim_h) throw std::invalid_argument("annihilation_matrix: bad vector dimension");
    std::vector<S> bf(rep.dim_h, S(0));  // <e_j | f> through the covariance
    for (unsigned j = 0; j < rep.dim_h; ++j)
        for (unsigned i = 0; i < rep.dim_h; ++i) bf[j] += rep.covariance.at(j, i) * f[i];

    DenseMatrix<S> m(rep.total_dim, rep.total_dim);
    for (unsigned n = 1; n <= rep.cutoff; ++n) {
        const S scale = ipow(rep.level_scale, n - 1);
        for (size_t cu = 0; cu < rep.level_size[n]; ++cu) {
            const auto u = rep.word_of(n, cu);
            S qk(1);
            for (unsigned k = 0; k < n; ++k) {
                if (!is_zero_value(bf[u[k]])) {
                    size_t local = 0;
                    for (unsigned j = 0; j < n; ++j)
                        if (j != k) local = local * rep.dim_h + u[j];
                    const size_t row = rep.index_of(n - 1, local);
                    m.at(row, rep.index_of(n, cu)) = m.at(row, rep.index_of(n, cu)) + scale * qk * bf[u[k]];
                }
                qk = qk * rep.deform_q;
            }
        }
    }
    return m;
}

template <class S>
DenseMatrix<S> gaussian_matrix(const FockRep<S>& rep, const std::vector<S>& f) {
    return creation_matrix(rep, f) + annihilation_matrix(rep, f);
}

template <class S>
S vector_inner(const FockRep<S>& rep, const std::vector<S>& f, const std::vector<S>& g) {
    S acc(0);
    for (unsigned i = 0; i < rep.dim_h; ++i)
        for (unsigned j = 0; j < rep.dim_h; ++j) acc += f[i] * rep.covariance.at(i, j) * g[j];
    return acc;
}

/// A(f) A+(g) - (t q') A+(g) A(f) - t^N <f,g> I, restricted to levels
/// <= cutoff-2 (the truncation edge is excluded by construction).
template <class S>
DenseMatrix<S> commutation_defect(const FockRep<S>& rep, const std::vector<S>& f, const std::vector<S>& g) {
    if (rep.cutoff < 2) throw std::invalid_argument("commutation_defect: cutoff must be >= 2");
    const auto af = annihilation_matrix(rep, f);
    const auto cg = creation_matrix(rep, g);
    const S c = rep.level_scale * rep.deform_q;
    DenseMatrix<S> defect = af * cg - (cg * af).scaled(c);
    const S fg = vector_inner(rep, f, g);
    for (unsigned n = 0; n <= rep.cutoff; ++n) {
        const S rhs = ipow(rep.level_scale, n) * fg;
        for (size_t w = 0; w < rep.level_size[n]; ++w) {
            const size_t i = rep.index_of(n, w);
            defect.at(i, i) = defect.at(i, i) - rhs;
        }
    }
    const size_t keep = rep.level_offset[rep.cutoff - 1];  // levels 0..cutoff-2
    DenseMatrix<S> out(keep, keep);
    for (size_t i = 0; i < keep; ++i)
        for (size_t j = 0; j < keep; ++j) out.at(i, j) = defect.at(i, j);
    return out;
}

/// Exact check of the commutation relation for exact scalars.
template <class S>
bool commutation_exact_zero(const FockRep<S>& rep, const std::vector<S>& f, const std::vector<S>& g) {
    return commutation_defect(rep, f, g).is_zero();
}

/// <G(f_1)...G(f_2n) Omega | Omega> by sparse right-to-left application of
/// G(f_i) = A(f_i) + A+(f_i) to the vacuum. Exact over exact scalars.
template <class S>
S vacuum_wick(const FockRep<S>& rep, const std::vector<std::vector<S>>& fs) {
    if (rep.cutoff < fs.size() / 2 + 1)
        throw std::invalid_argument("vacuum_wick: insufficient cutoff (need >= n+1)");
    using Word = std::vector<unsigned>;
    std::map<Word, S> state;
    state[Word{}] = S(1);
    std::vector<S> bf(rep.dim_h);
    for (size_t step = fs.size(); step-- > 0;) {
        const auto& f = fs[step];
        if (f.size() != rep.dim_h) throw std::invalid_argument("vacuum_wick: bad vector dimension");
        for (unsigned j = 0; j < rep.dim_h; ++j) {
            bf[j] = S(0);
            for (unsigned i = 0; i < rep.dim_h; ++i) bf[j] += rep.covariance.at(j, i) * f[i];
        }
        std::map<Word, S> next;
        auto deposit = [&next](Word&& w, S v) {
            if (is_zero_value(v)) return;
            auto it = next.find(w);
            if (it == next.end())
                next.emplace(std::move(w), std::move(v));
            else
                it->second += v;
        };
        for (const auto& [word, coeff] : state) {
            const unsigned n = static_cast<unsigned>(word.size());
            if (n < rep.cutoff) {  // creation, truncated at the top level
                for (unsigned i = 0; i < rep.dim_h; ++i) {
                    if (is_zero_value(f[i])) continue;
                    Word w;
                    w.reserve(n + 1);
                    w.push_back(i);
                    w.insert(w.end(), word.begin(), word.end());
                    deposit(std::move(w), coeff * f[i]);
                }
            }
            if (n >= 1) {  // annihilation
                const S scale = ipow(rep.level_scale, n - 1);
                S qk(1);
                for (unsigned k = 0; k < n; ++k) {
                    if (!is_zero_value(bf[word[k]])) {
                        Word w;
                        w.reserve(n - 1);
                        for (unsigned j = 0; j < n; ++j)
                            if (j != k) w.push_back(word[j]);
                        deposit(std::move(w), coeff * scale * qk * bf[word[k]]);
                    }
                    qk = qk * rep.deform_q;
                }
            }
        }
        state = std::move(next);
    }
    auto it = state.find(Word{});
    return it == state.end() ? S(0) : it->second;
}

/// <chi_[0,s) | chi_[0,t)> = min(s, t).
inline double bm_covariance(double s_time, double t_time) {
    if (s_time < 0.0 || t_time < 0.0) throw std::domain_error("bm_covariance: negative time");
    return std::min(s_time, t_time);
}

/// Even moments of the q-discrete Brownian motion BM_t = G_q(chi_[0,t)):
/// t^n [1]_q [3]_q ... [2n-1]_q; odd moments vanish.
inline double bm_moment(double t, unsigned two_n, double q) {
    if (t < 0.0) throw std::domain_error("bm_moment: negative time");
    if (two_n % 2 == 1) return 0.0;
    const unsigned n = two_n / 2;
    return std::pow(t, n) * eval_at_q(mu_qI_moment(n), q);
}

inline Rational bm_moment(const Rational& t, unsigned two_n, const Rational& q) {
    if (t < 0) throw std::domain_error("bm_moment: negative time");
    if (two_n % 2 == 1) return 0;
    const unsigned n = two_n / 2;
    return ipow(t, n) * eval_at_q(mu_qI_moment(n), q);
}

}  // namespace qlab
