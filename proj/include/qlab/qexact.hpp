#pragma once

#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qlab/polynomial.hpp"

namespace qlab {

/// [n]_q = 1 + q + ... + q^{n-1}; [0]_q = 0.
inline QPoly q_integer(unsigned n) {
    QPoly p;
    for (unsigned e = 0; e < n; ++e) p.set_coeff(e, 1);
    return p;
}

/// [n]_q! = [1]_q [2]_q ... [n]_q; empty product for n = 0.
inline QPoly q_factorial(unsigned n) {
    QPoly p(1);
    for (unsigned k = 1; k <= n; ++k) p = p * q_integer(k);
    return p;
}

/// (a; q)_k = (1-a)(1-aq)...(1-aq^{k-1}) for a polynomial first argument.
inline QPoly q_pochhammer(const QPoly& a, unsigned k) {
    QPoly p(1);
    const QPoly one(1);
    for (unsigned j = 0; j < k; ++j) p = p * (one - a.shifted(j));
    return p;
}

/// Specialized (q; q)_k.
inline QPoly q_pochhammer(unsigned k) { return q_pochhammer(QPoly::variable(), k); }

/// Gauss binomial [n over k]_q; the division is always exact.
inline QPoly gauss_binomial(unsigned n, unsigned k) {
    if (k > n) throw std::domain_error("gauss_binomial: k > n");
    if (k == 0 || k == n) return QPoly(1);
    return q_factorial(n).divide_exact(q_factorial(k) * q_factorial(n - k));
}

/// Truncated formal power series in z with QRational coefficients.
/// Arithmetic truncates consistently at `order`.
struct QSeries {
    unsigned order = 0;
    std::vector<QRational> coeffs;  // size order+1, index = power of z

    static QSeries zero(unsigned order) {
        QSeries s;
        s.order = order;
        s.coeffs.assign(order + 1, QRational(0));
        return s;
    }
    static QSeries one(unsigned order) {
        QSeries s = zero(order);
        s.coeffs[0] = QRational(1);
        return s;
    }

    QSeries negated_argument() const {  // z -> -z
        QSeries s = *this;
        for (unsigned k = 1; k <= order; k += 2) s.coeffs[k] = -s.coeffs[k];
        return s;
    }

    friend QSeries operator+(const QSeries& a, const QSeries& b) {
        if (a.order != b.order) throw std::invalid_argument("QSeries: order mismatch");
        QSeries r = a;
        for (unsigned k = 0; k <= r.order; ++k) r.coeffs[k] += b.coeffs[k];
        return r;
    }
    friend QSeries operator*(const QSeries& a, const QSeries& b) {
        if (a.order != b.order) throw std::invalid_argument("QSeries: order mismatch");
        QSeries r = zero(a.order);
        for (unsigned i = 0; i <= a.order; ++i) {
            if (a.coeffs[i].is_zero()) continue;
            for (unsigned j = 0; i + j <= a.order; ++j) r.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
        }
        return r;
    }
    bool operator==(const QSeries& o) const {
        if (order != o.order) return false;
        for (unsigned k = 0; k <= order; ++k)
            if (coeffs[k] != o.coeffs[k]) return false;
        return true;
    }
};

/// e_q(z) = sum z^k / (q;q)_k, truncated. All coefficients share the
/// common denominator (q;q)_order so that series arithmetic stays cheap.
inline QSeries e_q_series(unsigned order) {
    QSeries s = QSeries::zero(order);
    const QPoly den = q_pochhammer(order);
    QPoly tail(1);  // (q;q)_order / (q;q)_k, built downward
    std::vector<QPoly> nums(order + 1);
    nums[order] = tail;
    for (unsigned k = order; k-- > 0;) {
        tail = tail * (QPoly(1) - QPoly::variable().shifted(k));  // factor (1 - q^{k+1})
        nums[k] = tail;
    }
    for (unsigned k = 0; k <= order; ++k) s.coeffs[k] = QRational(nums[k], den);
    return s;
}

/// E_q(z) = sum q^{binom(k,2)} z^k / (q;q)_k, truncated.
inline QSeries E_q_series(unsigned order) {
    QSeries s = e_q_series(order);
    for (unsigned k = 0; k <= order; ++k)
        s.coeffs[k] = QRational(s.coeffs[k].num().shifted(k * (k - 1) / 2), s.coeffs[k].den());
    return s;
}

inline Rational eval_at_q(const QPoly& p, const Rational& q) { return p.eval(q); }
inline Rational eval_at_q(const QRational& r, const Rational& q) { return r.eval(q); }

/// Float evaluation path (convenience; never used inside identity tests).
inline double eval_at_q(const QPoly& p, double q) {
    return p.map_coeffs([](const Rational& c) { return to_double(c); }).eval(q);
}
inline double eval_at_q(const QRational& r, double q) {
    double d = r.den().map_coeffs([](const Rational& c) { return to_double(c); }).eval(q);
    if (d == 0.0) throw std::domain_error("eval_at_q: pole at evaluation point");
    return r.num().map_coeffs([](const Rational& c) { return to_double(c); }).eval(q) / d;
}

/// E_q(z) as the infinite product prod_{n>=0} (1 + q^n z), truncated once
/// |q^n z| < tol. Requires 0 <= q < 1.
inline double numeric_E_product(double z, double q, double tol = 1e-15) {
    if (q < 0.0 || q >= 1.0) throw std::domain_error("numeric_E_product: q outside [0,1)");
    double prod = 1.0;
    double qn = 1.0;
    while (std::abs(qn * z) >= tol) {
        prod *= 1.0 + qn * z;
        qn *= q;
        if (qn == 0.0) break;
    }
    return prod;
}

/// e_q(z) evaluated as 1 / E_q(-z); valid wherever the product is nonzero,
/// which avoids the divergent-series regime of the direct sum.
inline double numeric_e_q(double z, double q, double tol = 1e-15) {
    double denom = numeric_E_product(-z, q, tol);
    if (denom == 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / denom;
}

/// JSON-ready view of an exact polynomial: {"exponent": "num/den"}.
inline std::map<std::string, std::string> poly_to_json_map(const QPoly& p) {
    std::map<std::string, std::string> m;
    for (const auto& [e, c] : p.coefficients()) m[std::to_string(e)] = to_string(c);
    return m;
}

}  // namespace qlab
