#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qlab/rational.hpp"

namespace qlab {

template <class T>
bool is_zero_value(const T& x) {
    return x == T(0);
}

/// Sparse polynomial in one formal variable over a commutative coefficient
/// ring T (exact: no rounding happens in here). The zero polynomial is the
/// empty coefficient map; zero coefficients are never stored.
template <class T>
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(int constant) {  // NOLINT: implicit by design, 0/1 literals
        if (!is_zero_value(T(constant))) coeffs_[0] = T(constant);
    }
    explicit Polynomial(const T& constant) {
        if (!is_zero_value(constant)) coeffs_[0] = constant;
    }

    static Polynomial variable() { return monomial(1, T(1)); }
    static Polynomial monomial(unsigned exponent, const T& coeff) {
        Polynomial p;
        if (!is_zero_value(coeff)) p.coeffs_[exponent] = coeff;
        return p;
    }

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return coeffs_.empty() ? -1 : static_cast<int>(coeffs_.rbegin()->first); }

    T coeff(unsigned exponent) const {
        auto it = coeffs_.find(exponent);
        return it == coeffs_.end() ? T(0) : it->second;
    }
    void set_coeff(unsigned exponent, const T& value) {
        if (is_zero_value(value))
            coeffs_.erase(exponent);
        else
            coeffs_[exponent] = value;
    }

    const std::map<unsigned, T>& coefficients() const { return coeffs_; }

    Polynomial& operator+=(const Polynomial& o) {
        for (const auto& [e, c] : o.coeffs_) {
            auto it = coeffs_.find(e);
            if (it == coeffs_.end()) {
                coeffs_.emplace(e, c);
            } else {
                it->second = it->second + c;
                if (is_zero_value(it->second)) coeffs_.erase(it);
            }
        }
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) { return *this += -o; }

    Polynomial operator-() const {
        Polynomial r;
        for (const auto& [e, c] : coeffs_) r.coeffs_.emplace(e, T(0) - c);
        return r;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        // Dense accumulation buffer: degrees here are modest and the map
        // rebuild afterwards keeps the invariant in one pass.
        std::vector<T> buf(static_cast<size_t>(a.degree() + b.degree()) + 1, T(0));
        for (const auto& [ea, ca] : a.coeffs_)
            for (const auto& [eb, cb] : b.coeffs_) buf[ea + eb] = buf[ea + eb] + ca * cb;
        Polynomial r;
        for (size_t e = 0; e < buf.size(); ++e)
            if (!is_zero_value(buf[e])) r.coeffs_.emplace_hint(r.coeffs_.end(), static_cast<unsigned>(e), std::move(buf[e]));
        return r;
    }

    Polynomial scaled(const T& factor) const {
        Polynomial r;
        if (is_zero_value(factor)) return r;
        for (const auto& [e, c] : coeffs_) {
            T v = c * factor;
            if (!is_zero_value(v)) r.coeffs_.emplace_hint(r.coeffs_.end(), e, std::move(v));
        }
        return r;
    }

    /// Multiplication by the monomial x^k.
    Polynomial shifted(unsigned k) const {
        Polynomial r;
        for (const auto& [e, c] : coeffs_) r.coeffs_.emplace_hint(r.coeffs_.end(), e + k, c);
        return r;
    }

    bool operator==(const Polynomial& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    /// Horner evaluation at a point of the coefficient ring.
    T eval(const T& x) const {
        T acc(0);
        int prev = -1;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            if (prev >= 0) acc = acc * ipow(x, static_cast<unsigned long>(prev - static_cast<int>(it->first)));
            acc = acc + it->second;
            prev = static_cast<int>(it->first);
        }
        if (prev > 0) acc = acc * ipow(x, static_cast<unsigned long>(prev));
        return acc;
    }

    /// Coefficient-wise transform into a polynomial over another ring.
    template <class F>
    auto map_coeffs(F&& f) const -> Polynomial<decltype(f(std::declval<T>()))> {
        Polynomial<decltype(f(std::declval<T>()))> r;
        for (const auto& [e, c] : coeffs_) r.set_coeff(e, f(c));
        return r;
    }

    /// Exact long division; throws std::domain_error when the division
    /// leaves a remainder. Requires T to be a field.
    Polynomial divide_exact(const Polynomial& divisor) const {
        if (divisor.is_zero()) throw std::domain_error("Polynomial: division by zero polynomial");
        Polynomial rem = *this;
        Polynomial quot;
        const unsigned dd = static_cast<unsigned>(divisor.degree());
        const T& dlead = divisor.coeffs_.rbegin()->second;
        while (!rem.is_zero() && rem.degree() >= static_cast<int>(dd)) {
            const unsigned e = static_cast<unsigned>(rem.degree()) - dd;
            T c = rem.coeffs_.rbegin()->second / dlead;
            Polynomial term = monomial(e, c);
            quot += term;
            rem -= term * divisor;
        }
        if (!rem.is_zero()) throw std::domain_error("Polynomial: inexact division");
        return quot;
    }
};

template <class T>
bool is_zero_value(const Polynomial<T>& p) {
    return p.is_zero();
}

/// Quotient of two polynomials over T. Not kept in any canonical (gcd)
/// form; equality is cross-multiplication equality.
template <class T>
class RationalFunction {
public:
    RationalFunction() : num_(), den_(1) {}
    RationalFunction(int constant) : num_(constant), den_(1) {}  // NOLINT
    explicit RationalFunction(Polynomial<T> p) : num_(std::move(p)), den_(1) {}
    RationalFunction(Polynomial<T> numerator, Polynomial<T> denominator)
        : num_(std::move(numerator)), den_(std::move(denominator)) {
        if (den_.is_zero()) throw std::domain_error("RationalFunction: zero denominator");
    }

    const Polynomial<T>& num() const { return num_; }
    const Polynomial<T>& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        if (a.den_ == b.den_) return {a.num_ + b.num_, a.den_};
        return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
        if (a.den_ == b.den_) return {a.num_ - b.num_, a.den_};
        return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
    }
    RationalFunction operator-() const { return {-num_, den_}; }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        if (a.is_zero() || b.is_zero()) return {};
        return {a.num_ * b.num_, a.den_ * b.den_};
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.is_zero()) throw std::domain_error("RationalFunction: division by zero");
        return {a.num_ * b.den_, a.den_ * b.num_};
    }
    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }

    bool operator==(const RationalFunction& o) const { return num_ * o.den_ == o.num_ * den_; }
    bool operator!=(const RationalFunction& o) const { return !(*this == o); }

    /// Throws std::domain_error when the denominator vanishes at x.
    T eval(const T& x) const {
        T d = den_.eval(x);
        if (is_zero_value(d)) throw std::domain_error("RationalFunction: pole at evaluation point");
        return num_.eval(x) / d;
    }

private:
    Polynomial<T> num_, den_;
};

template <class T>
bool is_zero_value(const RationalFunction<T>& r) {
    return r.is_zero();
}

/// Exact polynomial in the deformation variable q.
using QPoly = Polynomial<Rational>;
/// Ratio of two QPoly (e.g. truncated q-exponential coefficients).
using QRational = RationalFunction<Rational>;
/// Bivariate layer: polynomial in s whose coefficients are QPoly in q.
using QSPoly = Polynomial<QPoly>;

inline std::string poly_to_string(const QPoly& p, const std::string& var = "q") {
    if (p.is_zero()) return "0";
    std::string out;
    for (const auto& [e, c] : p.coefficients()) {
        std::string term;
        if (e == 0) {
            term = to_string(c);
        } else {
            std::string pow = (e == 1) ? var : var + "^" + std::to_string(e);
            if (c == 1)
                term = pow;
            else if (c == -1)
                term = "-" + pow;
            else
                term = to_string(c) + "*" + pow;
        }
        if (out.empty()) {
            out = term;
        } else if (!term.empty() && term[0] == '-') {
            out += " - " + term.substr(1);
        } else {
            out += " + " + term;
        }
    }
    return out;
}

}  // namespace qlab
