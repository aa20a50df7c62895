#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qlab/cumulants.hpp"
#include "qlab/jackson.hpp"
#include "qlab/qexact.hpp"

namespace qlab {

/// Gauss binomial evaluated inside an arbitrary commutative ring via the
/// q-Pascal rule [n,k] = [n-1,k-1] + q^k [n-1,k].
template <class S>
S gauss_binomial_at(unsigned n, unsigned k, const S& q) {
    if (k > n) throw std::domain_error("gauss_binomial_at: k > n");
    std::vector<S> row(n + 1, S(0));
    row[0] = S(1);
    for (unsigned i = 1; i <= n; ++i)
        for (unsigned j = std::min(i, k); j >= 1; --j) row[j] = row[j - 1] + ipow(q, j) * row[j];
    return row[k];
}

template <class S>
S q_integer_at(unsigned n, const S& q) {
    S acc(0);
    for (unsigned e = 0; e < n; ++e) acc += ipow(q, e);
    return acc;
}

template <class S>
S q_factorial_at(unsigned n, const S& q) {
    S acc(1);
    for (unsigned k = 1; k <= n; ++k) acc = acc * q_integer_at(k, q);
    return acc;
}

/// Carnovale-Koornwinder convolution at the moment level:
/// m_n = sum_k [n,k]_q a_k b_{n-k}. Exact for exact inputs.
template <class S>
MomentSequence<S> ck_convolve_moments(const MomentSequence<S>& a, const MomentSequence<S>& b, const S& q) {
    if (a.values.size() != b.values.size())
        throw std::invalid_argument("ck_convolve_moments: length mismatch");
    MomentSequence<S> out;
    out.label = a.label + " (x)_q " + b.label;
    const size_t len = a.values.size();
    out.values.assign(len, S(0));
    for (unsigned n = 0; n < len; ++n) {
        S acc(0);
        for (unsigned k = 0; k <= n; ++k)
            acc += gauss_binomial_at(n, k, q) * a.values[k] * b.values[n - k];
        out.values[n] = acc;
    }
    return out;
}

/// q^e for integer e of either sign; needs a field scalar.
template <class S>
S q_power(long e, const S& q) {
    if (e >= 0) return ipow(q, static_cast<unsigned long>(e));
    return S(1) / ipow(q, static_cast<unsigned long>(-e));
}

/// Function known by exact values on the two-sided q-lattice
/// {eps q^k : kmin <= k <= kmax, eps = +-1}, zero elsewhere. This is the
/// exact counterpart of LatticeFunction's table form: with symbolic q it
/// drives the fully exact convolution identities.
template <class S>
struct LatticeTable {
    int kmin = 0, kmax = -1;
    std::vector<S> pos, neg;  // index k - kmin

    static LatticeTable supported(int kmin, int kmax) {
        LatticeTable t;
        t.kmin = kmin;
        t.kmax = kmax;
        t.pos.assign(static_cast<size_t>(kmax - kmin + 1), S(0));
        t.neg.assign(static_cast<size_t>(kmax - kmin + 1), S(0));
        return t;
    }
    S value(int k, int sign) const {
        if (k < kmin || k > kmax) return S(0);
        return sign > 0 ? pos[static_cast<size_t>(k - kmin)] : neg[static_cast<size_t>(k - kmin)];
    }
    S& ref(int k, int sign) { return sign > 0 ? pos[static_cast<size_t>(k - kmin)] : neg[static_cast<size_t>(k - kmin)]; }
};

/// delta_q on a lattice table: (f(x) - f(qx)) / (x(1-q)) at x = eps q^k.
/// The support window grows by one step toward large |x|.
template <class S>
LatticeTable<S> lattice_q_derivative(const LatticeTable<S>& f, const S& q) {
    auto out = LatticeTable<S>::supported(f.kmin - 1, f.kmax);
    const S one_minus_q = S(1) - q;
    for (int sign : {+1, -1}) {
        for (int k = out.kmin; k <= out.kmax; ++k) {
            S diff = f.value(k, sign) - f.value(k + 1, sign);
            if (is_zero_value(diff)) continue;
            S x = q_power(k, q);
            if (sign < 0) x = S(0) - x;
            out.ref(k, sign) = diff / (x * one_minus_q);
        }
    }
    return out;
}

/// Raw Jackson moment: integral of f(x) x^n d_q x (finite exact sum).
template <class S>
S lattice_raw_moment(const LatticeTable<S>& f, unsigned n, const S& q) {
    S acc(0);
    for (int k = f.kmin; k <= f.kmax; ++k) {
        const S xn = q_power(static_cast<long>(k) * (static_cast<long>(n) + 1), q);
        S term = f.value(k, +1);
        if (n % 2 == 0)
            term += f.value(k, -1);
        else
            term -= f.value(k, -1);
        if (!is_zero_value(term)) acc += xn * term;
    }
    return (S(1) - q) * acc;
}

/// m_n^{disc}(f) = q^{binom(n,2)} * raw moment.
template <class S>
S lattice_disc_moment(const LatticeTable<S>& f, unsigned n, const S& q) {
    return ipow(q, static_cast<unsigned long>(n) * (n - 1) / 2) * lattice_raw_moment(f, n, q);
}

/// Function-level q-convolution on lattice tables,
///   f (x)_q g = sum_{n<=order} (-1)^n q^n m_n^{disc}(f) / [n]_q! delta_q^n g.
/// The printed form of the series omits the q^n dilation factor; it is
/// required for the moment identity m_n(f (x) g) = sum [n,k] m_k m_{n-k}
/// (see the q-integration-by-parts relation raw_n(delta g) =
/// -[n]_q q^{-n} raw_{n-1}(g)) and equals the braided-line composite.
template <class S>
LatticeTable<S> ck_convolve_lattice(const LatticeTable<S>& f, const LatticeTable<S>& g, const S& q,
                                    unsigned order) {
    auto result = LatticeTable<S>::supported(g.kmin - static_cast<int>(order), g.kmax);
    LatticeTable<S> dng = g;  // delta_q^n g
    for (unsigned n = 0; n <= order; ++n) {
        S coeff = lattice_disc_moment(f, n, q) * ipow(q, n) / q_factorial_at(n, q);
        if (n % 2 == 1) coeff = S(0) - coeff;
        if (!is_zero_value(coeff)) {
            for (int sign : {+1, -1})
                for (int k = dng.kmin; k <= dng.kmax; ++k) {
                    const S v = dng.value(k, sign);
                    if (!is_zero_value(v)) result.ref(k, sign) += coeff * v;
                }
        }
        if (n < order) dng = lattice_q_derivative(dng, q);
    }
    return result;
}

/// Numeric function-level convolution: f enters through its q-moments,
/// g through nested difference quotients on the q-lattice at x.
inline double ck_convolve_functions(const LatticeFunction& f, const std::function<double(double)>& g,
                                    double q, unsigned order, double x,
                                    const JacksonOptions& opts = {}) {
    if (q <= 0.0 || q >= 1.0) throw std::domain_error("ck_convolve_functions: q outside (0,1)");
    if (x == 0.0) throw std::domain_error("ck_convolve_functions: nested quotients need x != 0");
    std::vector<double> disc_moments(order + 1);
    for (unsigned n = 0; n <= order; ++n)
        disc_moments[n] = q_moment_disc([&](double t) { return f(t); }, n, q, opts);
    // g(x q^j) for j = 0..order, then repeated first differences in place.
    std::vector<double> w(order + 1);
    for (unsigned j = 0; j <= order; ++j) w[j] = g(x * std::pow(q, static_cast<int>(j)));
    double acc = 0.0;
    double qfact = 1.0;
    double sign = 1.0;
    double qn = 1.0;
    for (unsigned n = 0; n <= order; ++n) {
        if (n > 0) {
            for (unsigned j = 0; j + n <= order; ++j)
                w[j] = (w[j] - w[j + 1]) / (x * std::pow(q, static_cast<int>(j)) * (1.0 - q));
            qfact *= (1.0 - std::pow(q, static_cast<int>(n))) / (1.0 - q);
            sign = -sign;
            qn *= q;
        }
        acc += sign * qn * disc_moments[n] / qfact * w[0];
    }
    return acc;
}

/// Truncated element of the braided line C[[x]].
template <class S>
struct BraidedElement {
    unsigned order = 0;
    std::vector<S> coeffs;  // size order+1

    static BraidedElement zero(unsigned order) {
        BraidedElement e;
        e.order = order;
        e.coeffs.assign(order + 1, S(0));
        return e;
    }
    static BraidedElement monomial(unsigned k, unsigned order) {
        BraidedElement e = zero(order);
        if (k <= order) e.coeffs[k] = S(1);
        return e;
    }

    friend BraidedElement operator+(const BraidedElement& a, const BraidedElement& b) {
        if (a.order != b.order) throw std::invalid_argument("BraidedElement: order mismatch");
        BraidedElement r = a;
        for (unsigned k = 0; k <= r.order; ++k) r.coeffs[k] += b.coeffs[k];
        return r;
    }
    friend BraidedElement operator*(const BraidedElement& a, const BraidedElement& b) {
        if (a.order != b.order) throw std::invalid_argument("BraidedElement: order mismatch");
        BraidedElement r = zero(a.order);
        for (unsigned i = 0; i <= a.order; ++i) {
            if (is_zero_value(a.coeffs[i])) continue;
            for (unsigned j = 0; i + j <= a.order; ++j) r.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
        }
        return r;
    }
    bool operator==(const BraidedElement& o) const {
        if (order != o.order) return false;
        for (unsigned k = 0; k <= order; ++k)
            if (!is_zero_value(coeffs[k] - o.coeffs[k])) return false;
        return true;
    }
};

/// Finite sum of x^i (x) x^j with coefficients, kept in bilinear normal
/// form (merged monomial pairs, no zero entries).
template <class S>
struct TensorElement {
    unsigned order = 0;
    std::map<std::pair<unsigned, unsigned>, S> terms;

    void add(unsigned i, unsigned j, const S& c) {
        if (is_zero_value(c)) return;
        auto it = terms.find({i, j});
        if (it == terms.end()) {
            terms.emplace(std::make_pair(i, j), c);
        } else {
            it->second += c;
            if (is_zero_value(it->second)) terms.erase(it);
        }
    }
    bool operator==(const TensorElement& o) const {
        if (terms.size() != o.terms.size()) return false;
        for (const auto& [k, c] : terms) {
            auto it = o.terms.find(k);
            if (it == o.terms.end() || !is_zero_value(c - it->second)) return false;
        }
        return true;
    }
};

/// Delta(x^k) = sum_j [k,j]_q x^{k-j} (x) x^j.
template <class S>
TensorElement<S> braided_coproduct(unsigned k, const S& q, unsigned order) {
    TensorElement<S> t;
    t.order = order;
    for (unsigned j = 0; j <= k; ++j) t.add(k - j, j, gauss_binomial_at(k, j, q));
    return t;
}

template <class S>
TensorElement<S> braided_coproduct(const BraidedElement<S>& e, const S& q) {
    TensorElement<S> t;
    t.order = e.order;
    for (unsigned k = 0; k <= e.order; ++k) {
        if (is_zero_value(e.coeffs[k])) continue;
        for (unsigned j = 0; j <= k; ++j) t.add(k - j, j, e.coeffs[k] * gauss_binomial_at(k, j, q));
    }
    return t;
}

/// S(x^k) = (-1)^k q^{binom(k,2)} x^k, coefficient-wise.
template <class S>
BraidedElement<S> braided_antipode(const BraidedElement<S>& e, const S& q) {
    BraidedElement<S> r = e;
    for (unsigned k = 0; k <= e.order; ++k) {
        if (is_zero_value(r.coeffs[k])) continue;
        S f = ipow(q, static_cast<unsigned long>(k) * (k - 1) / 2);
        if (k % 2 == 1) f = S(0) - f;
        r.coeffs[k] = r.coeffs[k] * f;
    }
    return r;
}

/// epsilon(x^k) = delta_{k,0}.
template <class S>
S braided_counit(const BraidedElement<S>& e) {
    return e.coeffs.at(0);
}

/// Phi(x^k (x) x^l) = q^{kl} x^l (x) x^k, extended linearly.
template <class S>
TensorElement<S> braiding_phi(const TensorElement<S>& t, const S& q) {
    TensorElement<S> r;
    r.order = t.order;
    for (const auto& [kl, c] : t.terms)
        r.add(kl.second, kl.first, c * ipow(q, static_cast<unsigned long>(kl.first) * kl.second));
    return r;
}

/// delta_q on a truncated series: x^k -> [k]_q x^{k-1}.
template <class S>
BraidedElement<S> braided_q_derivative(const BraidedElement<S>& e, const S& q) {
    BraidedElement<S> r = BraidedElement<S>::zero(e.order);
    for (unsigned k = 1; k <= e.order; ++k) r.coeffs[k - 1] = e.coeffs[k] * q_integer_at(k, q);
    return r;
}

/// q-Taylor form of the coproduct: sum_j x^j/[j]_q! (x) delta_q^j f.
/// Coincides with the linear extension of braided_coproduct.
template <class S>
TensorElement<S> q_taylor_coproduct(const BraidedElement<S>& f, const S& q) {
    TensorElement<S> t;
    t.order = f.order;
    BraidedElement<S> d = f;
    for (unsigned j = 0; j <= f.order; ++j) {
        const S w = S(1) / q_factorial_at(j, q);
        for (unsigned k = 0; k <= f.order; ++k)
            if (!is_zero_value(d.coeffs[k])) t.add(j, k, w * d.coeffs[k]);
        if (j < f.order) d = braided_q_derivative(d, q);
    }
    return t;
}

/// Kempf-Majid convolution: coproduct of g, antipode then Q-dilation
/// (x^j -> q^j x^j) on the first tensor leg, then pairing of that leg
/// against the moment functional x^n -> raw_n = integral of f(t) t^n d_q t.
template <class S>
BraidedElement<S> km_convolve(const std::vector<S>& raw_moments, const BraidedElement<S>& g, const S& q) {
    if (raw_moments.size() < g.order + 1)
        throw std::invalid_argument("km_convolve: order mismatch (need raw moments up to series order)");
    const TensorElement<S> delta = braided_coproduct(g, q);
    BraidedElement<S> out = BraidedElement<S>::zero(g.order);
    for (const auto& [ij, c] : delta.terms) {
        const unsigned i = ij.first, j = ij.second;
        // antipode + Q on leg i, then <f, .>
        S f = ipow(q, static_cast<unsigned long>(i) * (i - 1) / 2 + i) * raw_moments[i];
        if (i % 2 == 1) f = S(0) - f;
        out.coeffs[j] += c * f;
    }
    return out;
}

/// The convolution series evaluated on a truncated-series g (terminates
/// on polynomials): sum_n (-1)^n q^n m_n^{disc} / [n]_q! delta_q^n g.
template <class S>
BraidedElement<S> ck_convolve_series(const std::vector<S>& raw_moments, const BraidedElement<S>& g,
                                     const S& q) {
    if (raw_moments.size() < g.order + 1)
        throw std::invalid_argument("ck_convolve_series: order mismatch");
    BraidedElement<S> out = BraidedElement<S>::zero(g.order);
    BraidedElement<S> d = g;
    for (unsigned n = 0; n <= g.order; ++n) {
        S disc = ipow(q, static_cast<unsigned long>(n) * (n - 1) / 2) * raw_moments[n];
        S coeff = ipow(q, n) * disc / q_factorial_at(n, q);
        if (n % 2 == 1) coeff = S(0) - coeff;
        for (unsigned k = 0; k <= g.order; ++k) out.coeffs[k] += coeff * d.coeffs[k];
        if (n < g.order) d = braided_q_derivative(d, q);
    }
    return out;
}

}  // namespace qlab
