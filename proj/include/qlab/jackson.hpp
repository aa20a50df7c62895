#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qlab/rational.hpp"

namespace qlab {

/// A Jackson sum or norm estimate failed to certify its tail.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Neumaier compensated accumulator; q^k spans many orders of magnitude,
/// so plain summation would lose the small lattice tails.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Real function seen through the q-lattice; either a plain evaluator or
/// a table over {±q^k : kmin <= k <= kmax} (zero off the window).
class LatticeFunction {
public:
    LatticeFunction(std::function<double(double)> evaluator,
                    std::optional<double> derivative_at_zero = std::nullopt)
        : eval_(std::move(evaluator)), deriv0_(derivative_at_zero) {}

    static LatticeFunction from_table(double q, int kmin, int kmax, std::vector<double> pos,
                                      std::vector<double> neg, double at_zero = 0.0) {
        if (q <= 0.0 || q >= 1.0) throw std::domain_error("LatticeFunction: q outside (0,1)");
        const size_t count = static_cast<size_t>(kmax - kmin + 1);
        if (pos.size() != count || neg.size() != count)
            throw std::invalid_argument("LatticeFunction: table size does not match window");
        auto lookup = [q, kmin, kmax, pos = std::move(pos), neg = std::move(neg), at_zero](double x) {
            if (x == 0.0) return at_zero;
            const double k_real = std::log(std::abs(x)) / std::log(q);
            const int k = static_cast<int>(std::lround(k_real));
            if (k < kmin || k > kmax || std::abs(k_real - k) > 1e-6) return 0.0;
            return x > 0 ? pos[static_cast<size_t>(k - kmin)] : neg[static_cast<size_t>(k - kmin)];
        };
        return LatticeFunction(lookup);
    }

    double operator()(double x) const { return eval_(x); }
    std::optional<double> derivative_at_zero() const { return deriv0_; }

private:
    std::function<double(double)> eval_;
    std::optional<double> deriv0_;
};

/// delta_q f(x) = (f(x) - f(qx)) / (x - qx); at x = 0 the supplied f'(0).
inline double q_derivative(const LatticeFunction& f, double x, double q) {
    if (x == 0.0) {
        if (auto d0 = f.derivative_at_zero()) return *d0;
        throw std::domain_error("q_derivative: x = 0 without derivative information");
    }
    return (f(x) - f(q * x)) / (x - q * x);
}

struct JacksonOptions {
    double tol = 1e-12;
    int start_kmin = -64;   // bilateral lower window edge (large |x| side)
    int start_kmax = 256;   // upper window edge (x -> 0 side)
    int hard_kmin = -4096;
    int hard_kmax = 65536;
    double safety = 10.0;   // factor on empirical tail bounds
};

/// Unilateral Jackson integral (1-q) sum_{k>=0} f(q^k x) q^k x. The tail
/// is certified with an empirical sup bound on |f| near 0 times `safety`.
inline double jackson_integral_unilateral(const std::function<double(double)>& f, double x, double q,
                                          const JacksonOptions& opts = {}) {
    if (q <= 0.0 || q >= 1.0) throw std::domain_error("jackson_integral_unilateral: q outside (0,1)");
    if (x == 0.0) return 0.0;
    CompensatedSum sum;
    double qk = 1.0;
    double recent_sup = 0.0;
    for (int k = 0; k <= opts.hard_kmax; ++k) {
        const double fv = f(qk * x);
        if (!std::isfinite(fv)) throw ConvergenceError("jackson_integral_unilateral: non-finite sample");
        sum.add(fv * qk * x);
        recent_sup = std::max(std::abs(fv), recent_sup * 0.5);
        // Remaining tail: |x| sum_{j>k} q^j (1-q) sup|f| = |x| q^{k+1} sup|f|.
        const double tail = opts.safety * recent_sup * std::abs(x) * qk * q;
        if (k >= 8 && tail < opts.tol) return (1.0 - q) * sum.value();
        qk *= q;
    }
    throw ConvergenceError("jackson_integral_unilateral: tail did not certify");
}

/// Bilateral Jackson integral (1-q) sum_{k in Z} sum_{eps=+-1} q^k f(eps q^k).
/// Both window edges are extended until their tail certificates pass:
/// geometric sup bound toward x -> 0, empirical ratio test toward |x| -> oo.
inline double jackson_integral_bilateral(const std::function<double(double)>& f, double q,
                                         const JacksonOptions& opts = {}) {
    if (q <= 0.0 || q >= 1.0) throw std::domain_error("jackson_integral_bilateral: q outside (0,1)");
    auto term = [&](int k) {
        const double xk = std::pow(q, k);
        const double a = f(xk), b = f(-xk);
        if (!std::isfinite(a) || !std::isfinite(b))
            throw ConvergenceError("jackson_integral_bilateral: non-finite sample");
        return xk * (a + b);
    };

    CompensatedSum sum;
    // Upward side (k -> +infinity, lattice accumulating at 0).
    {
        double qk = 1.0;
        double recent_sup = 0.0;
        for (int k = 0;; ++k) {
            const double a = f(qk), b = f(-qk);
            if (!std::isfinite(a) || !std::isfinite(b))
                throw ConvergenceError("jackson_integral_bilateral: non-finite sample");
            sum.add(qk * (a + b));
            recent_sup = std::max({std::abs(a), std::abs(b), recent_sup * 0.5});
            const double tail = 2.0 * opts.safety * recent_sup * qk * q;
            if (k >= opts.start_kmax && tail < opts.tol) break;
            if (k >= opts.hard_kmax)
                throw ConvergenceError("jackson_integral_bilateral: upper tail did not certify");
            qk *= q;
        }
    }
    // Downward side (k -> -infinity, lattice escaping to +-infinity);
    // requires q^k f(+-q^k) summable, certified by a ratio test.
    {
        const double first = term(-1);
        sum.add(first);
        double prev = std::abs(first);
        int quiet = 0;
        for (int k = -2;; --k) {
            const double t = term(k);
            sum.add(t);
            const double cur = std::abs(t);
            if (cur == 0.0 && prev == 0.0) {
                if (++quiet >= 4 && -k >= -opts.start_kmin) break;
            } else {
                quiet = 0;
                const double ratio = prev > 0.0 ? cur / prev : (cur > 0.0 ? 2.0 : 0.0);
                if (ratio < 0.97 && -k >= -opts.start_kmin) {
                    const double tail = opts.safety * cur * ratio / (1.0 - ratio);
                    if (tail < opts.tol) break;
                }
            }
            if (k <= opts.hard_kmin)
                throw ConvergenceError("jackson_integral_bilateral: lower tail did not certify (growth)");
            prev = cur;
        }
    }
    return (1.0 - q) * sum.value();
}

/// m_n^{disc}(f) = q^{binom(n,2)} * bilateral Jackson integral of f(x) x^n.
inline double q_moment_disc(const std::function<double(double)>& f, unsigned n, double q,
                            const JacksonOptions& opts = {}) {
    auto integrand = [&](double x) {
        const double fx = f(x);
        return fx == 0.0 ? 0.0 : fx * std::pow(x, static_cast<int>(n));
    };
    return std::pow(q, 0.5 * n * (n - 1.0)) * jackson_integral_bilateral(integrand, q, opts);
}

}  // namespace qlab
