#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "qlab/jackson.hpp"
#include "qlab/qexact.hpp"

namespace qlab {

/// Monic polynomial in x whose coefficients are exact objects in q:
/// QPoly coefficients for the continuous and type-I families, QRational
/// (Laurent in q) for the type-II family.
using XPoly = Polynomial<QPoly>;
using XPolyL = Polynomial<QRational>;

/// Symmetric Jacobi recurrence data: x p_n = p_{n+1} + b_n p_{n-1}.
template <class S>
struct JacobiData {
    std::vector<S> b;  // b[0] = b_1
};

namespace detail {

template <class C>
std::vector<Polynomial<C>> monic_family(unsigned n_max, const std::function<C(unsigned)>& b) {
    std::vector<Polynomial<C>> p;
    p.reserve(n_max + 1);
    p.push_back(Polynomial<C>(1));
    if (n_max == 0) return p;
    p.push_back(Polynomial<C>::variable());
    for (unsigned n = 1; n < n_max; ++n) {
        Polynomial<C> next = p[n].shifted(1) - p[n - 1].scaled(b(n));
        p.push_back(std::move(next));
    }
    return p;
}

}  // namespace detail

/// Continuous q-Hermite: x H_n = H_{n+1} + [n]_q H_{n-1}, H_0 = 1, H_1 = x.
inline XPoly continuous_q_hermite(unsigned n) {
    return detail::monic_family<QPoly>(n, [](unsigned k) { return q_integer(k); })[n];
}

/// Discrete q-Hermite of type I: x h_n = h_{n+1} + q^{n-1} [n]_q h_{n-1}.
inline XPoly discrete_q_hermite_I(unsigned n) {
    return detail::monic_family<QPoly>(n, [](unsigned k) { return q_integer(k).shifted(k - 1); })[n];
}

/// Discrete q-Hermite of type II, the transform i^{-n} h_n(ix; 1/q) of the
/// type-I family: x h~_n = h~_{n+1} - q^{2(1-n)} [n]_q h~_{n-1}. The
/// substitution q -> 1/q makes the coefficients Laurent in q, hence the
/// QRational coefficient type.
inline XPolyL discrete_q_hermite_II(unsigned n) {
    return detail::monic_family<QRational>(n, [](unsigned k) {
        // b_k = -q^{2-2k} [k]_q
        return QRational(-q_integer(k), QPoly::monomial(2 * k - 2, 1));
    })[n];
}

/// Lattice-normalized type I: x h_n = h_{n+1} + q^{n-1}(1-q^n) h_{n-1}.
/// This is the scaling h_n(x) -> (1-q)^{n/2} h_n(x / sqrt(1-q)) whose
/// orthogonality measure lives on the q-lattice in [-1,1] with weight
/// E_{q^2}(-q^2 x^2); norms are proportional to q^{binom(n,2)} (q;q)_n.
inline XPoly discrete_q_hermite_I_lattice(unsigned n) {
    return detail::monic_family<QPoly>(n, [](unsigned k) {
        return (QPoly(1) - QPoly::variable().shifted(k - 1)).shifted(k - 1);  // q^{k-1}(1-q^k)
    })[n];
}

/// Lattice-normalized type II: x h~_n = h~_{n+1} + q^{1-2n}(1-q^n) h~_{n-1};
/// orthogonal on the bilateral q-lattice with weight e_{q^2}(-x^2), norms
/// proportional to q^{-n^2} (q;q)_n.
inline XPolyL discrete_q_hermite_II_lattice(unsigned n) {
    return detail::monic_family<QRational>(n, [](unsigned k) {
        return QRational(QPoly(1) - QPoly::monomial(k, 1), QPoly::monomial(2 * k - 1, 1));
    })[n];
}

/// Moments of the spectral measure at the vacuum of the Jacobi matrix:
/// m_power = <x^power delta_0, delta_0>, the Dyck-path weight sum. Odd
/// powers vanish. Requires b entries up to power/2.
template <class S>
S moments_from_jacobi(const JacobiData<S>& j, unsigned power) {
    const unsigned top = power / 2;
    if (j.b.size() < top) throw std::invalid_argument("moments_from_jacobi: not enough recurrence weights");
    std::vector<S> c(top + 1, S(0));
    c[0] = S(1);
    for (unsigned step = 0; step < power; ++step) {
        std::vector<S> next(top + 1, S(0));
        for (unsigned k = 0; k <= top; ++k) {
            if (is_zero_value(c[k])) continue;
            if (k + 1 <= top) next[k + 1] += c[k];                      // x p_k -> p_{k+1}
            if (k >= 1) next[k - 1] += c[k] * j.b[k - 1];               // ... + b_k p_{k-1}
        }
        c = std::move(next);
    }
    return c[0];
}

inline JacobiData<QPoly> jacobi_continuous(unsigned n_max) {
    JacobiData<QPoly> j;
    for (unsigned k = 1; k <= n_max; ++k) j.b.push_back(q_integer(k));
    return j;
}

inline JacobiData<QPoly> jacobi_discrete_I(unsigned n_max) {
    JacobiData<QPoly> j;
    for (unsigned k = 1; k <= n_max; ++k) j.b.push_back(q_integer(k).shifted(k - 1));
    return j;
}

/// Even moments of mu_q^I: integral of x^{2n} equals [1]_q [3]_q ... [2n-1]_q.
inline QPoly mu_qI_moment(unsigned n) {
    QPoly p(1);
    for (unsigned k = 1; k <= n; ++k) p = p * q_integer(2 * k - 1);
    return p;
}

/// Density of the continuous q-Hermite orthogonality measure on
/// [-2/sqrt(1-q), 2/sqrt(1-q)]:
///   (1/pi) sqrt(1-q) sin(theta) prod_{n>=1} (1-q^n) |1 - q^n e^{2 i theta}|^2
/// with 2 cos(theta) = x sqrt(1-q). The product truncates once q^n < tol.
inline double continuous_density(double x, double q, double tol = 1e-14) {
    if (q < 0.0 || q >= 1.0) throw std::domain_error("continuous_density: q outside [0,1)");
    const double support = 2.0 / std::sqrt(1.0 - q);
    if (std::abs(x) > support * (1.0 + 1e-12)) throw std::domain_error("continuous_density: x outside support");
    const double c = std::clamp(x / support, -1.0, 1.0);
    const double theta = std::acos(c);
    const double sin_theta = std::sin(theta);
    const double cos2t = std::cos(2.0 * theta);
    double prod = 1.0;
    double qn = q;
    while (qn >= tol) {
        prod *= (1.0 - qn) * (1.0 - 2.0 * qn * cos2t + qn * qn);
        qn *= q;
    }
    return std::sqrt(1.0 - q) / M_PI * sin_theta * prod;
}

namespace detail {

/// integral of f against the continuous q-Hermite measure, via the
/// substitution x = L cos(theta) (the integrand vanishes smoothly at the
/// endpoints); composite Simpson with quad_points subintervals.
inline double continuous_measure_integral(const std::function<double(double)>& f, double q,
                                          unsigned quad_points) {
    const double support = 2.0 / std::sqrt(1.0 - q);
    const unsigned n = quad_points + (quad_points % 2);  // Simpson needs even
    const double h = M_PI / n;
    auto g = [&](double theta) {
        const double x = support * std::cos(theta);
        return f(x) * continuous_density(x, q) * support * std::sin(theta);
    };
    CompensatedSum sum;
    sum.add(g(0.0));
    sum.add(g(M_PI));
    for (unsigned i = 1; i < n; ++i) sum.add((i % 2 ? 4.0 : 2.0) * g(i * h));
    return sum.value() * h / 3.0;
}

inline std::vector<double> xpoly_to_doubles(const XPoly& p, double q) {
    std::vector<double> c(static_cast<size_t>(std::max(p.degree(), 0)) + 1, 0.0);
    for (const auto& [e, coeff] : p.coefficients()) c[e] = eval_at_q(coeff, q);
    return c;
}

inline std::vector<double> xpoly_to_doubles(const XPolyL& p, double q) {
    std::vector<double> c(static_cast<size_t>(std::max(p.degree(), 0)) + 1, 0.0);
    for (const auto& [e, coeff] : p.coefficients()) c[e] = eval_at_q(coeff, q);
    return c;
}

inline double horner(const std::vector<double>& c, double x) {
    double acc = 0.0;
    for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
}

}  // namespace detail

/// |quadrature of H_n H_m against the continuous density - [n]_q! delta_nm|.
inline double orthogonality_check_continuous(unsigned n, unsigned m, double q, unsigned quad_points = 4096) {
    const auto cn = detail::xpoly_to_doubles(continuous_q_hermite(n), q);
    const auto cm = detail::xpoly_to_doubles(continuous_q_hermite(m), q);
    const double integral = detail::continuous_measure_integral(
        [&](double x) { return detail::horner(cn, x) * detail::horner(cm, x); }, q, quad_points);
    const double expected = (n == m) ? eval_at_q(q_factorial(n), q) : 0.0;
    return std::abs(integral - expected);
}

/// Total mass of the continuous density by the same quadrature.
inline double continuous_density_mass(double q, unsigned quad_points = 4096) {
    return detail::continuous_measure_integral([](double) { return 1.0; }, q, quad_points);
}

enum class DiscreteHermiteType { type_I, type_II };

/// Jackson-integral Gram entry <h_n, h_m> of the lattice-normalized
/// discrete families against their weights: type I on [-1,1] with
/// E_{q^2}(-q^2 x^2), type II bilateral with e_{q^2}(-x^2) evaluated as
/// 1 / E_{q^2}(x^2) for convergence. The weight is evaluated first so a
/// vanished weight short-circuits the polynomial factor.
inline double discrete_hermite_gram(DiscreteHermiteType type, unsigned n, unsigned m, double q,
                                    const JacksonOptions& opts = {}) {
    if (q <= 0.0 || q >= 1.0) throw std::domain_error("discrete_hermite_gram: q outside (0,1)");
    if (type == DiscreteHermiteType::type_I) {
        const auto cn = detail::xpoly_to_doubles(discrete_q_hermite_I_lattice(n), q);
        const auto cm = detail::xpoly_to_doubles(discrete_q_hermite_I_lattice(m), q);
        auto f = [&](double x) {
            const double w = numeric_E_product(-q * q * x * x, q * q);
            if (w == 0.0) return 0.0;
            return detail::horner(cn, x) * detail::horner(cm, x) * w;
        };
        // integral over [-1,1]: both-sign unilateral lattice
        return jackson_integral_unilateral(f, 1.0, q, opts) +
               jackson_integral_unilateral([&](double x) { return f(-x); }, 1.0, q, opts);
    }
    const auto cn = detail::xpoly_to_doubles(discrete_q_hermite_II_lattice(n), q);
    const auto cm = detail::xpoly_to_doubles(discrete_q_hermite_II_lattice(m), q);
    auto f = [&](double x) {
        const double big = numeric_E_product(x * x, q * q);
        if (!std::isfinite(big) || big == 0.0) return 0.0;
        const double w = 1.0 / big;
        if (w == 0.0) return 0.0;
        return detail::horner(cn, x) * detail::horner(cm, x) * w;
    };
    return jackson_integral_bilateral(f, q, opts);
}

struct DiscreteOrthoCheck {
    double gram = 0.0;              // raw Gram entry
    double offdiag_residual = 0.0;  // |G_nm| / sqrt(G_nn G_mm), n != m
    double diag_ratio = 0.0;        // G_nn / reference(n), n == m
};

/// Reference diagonal without the measure normalization: type I
/// q^{binom(n,2)} (q;q)_n, type II q^{-n^2} (q;q)_n; the Gram/reference
/// ratio equals the (n-independent) total-mass constant of the weight.
inline double discrete_diag_reference(DiscreteHermiteType type, unsigned n, double q) {
    const double poch = eval_at_q(q_pochhammer(n), q);
    if (type == DiscreteHermiteType::type_I) return std::pow(q, 0.5 * n * (n - 1.0)) * poch;
    return std::pow(q, -static_cast<double>(n) * n) * poch;
}

inline DiscreteOrthoCheck orthogonality_check_discrete(DiscreteHermiteType type, unsigned n, unsigned m,
                                                       double q, const JacksonOptions& opts = {}) {
    DiscreteOrthoCheck out;
    out.gram = discrete_hermite_gram(type, n, m, q, opts);
    if (n == m) {
        out.diag_ratio = out.gram / discrete_diag_reference(type, n, q);
    } else {
        const double dn = discrete_hermite_gram(type, n, n, q, opts);
        const double dm = discrete_hermite_gram(type, m, m, q, opts);
        out.offdiag_residual = std::abs(out.gram) / std::sqrt(dn * dm);
    }
    return out;
}

}  // namespace qlab
