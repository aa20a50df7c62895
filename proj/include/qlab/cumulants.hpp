#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "qlab/linalg.hpp"
#include "qlab/parallel.hpp"
#include "qlab/partitions.hpp"
#include "qlab/polynomial.hpp"

namespace qlab {

/// Which crossing statistic weights the partition sum in the
/// moment-cumulant formula.
enum class CumulantStatistic { biane_cr, nica_c0 };

inline const char* to_string(CumulantStatistic s) {
    return s == CumulantStatistic::biane_cr ? "biane_cr" : "nica_c0";
}

/// Finite moment sequence m_0..m_N with a provenance label.
template <class S>
struct MomentSequence {
    std::vector<S> values;
    std::string label;
};

/// Cumulants R(1)..R(N) for one of the two statistics.
template <class S>
struct CumulantSequence {
    std::vector<S> values;
    CumulantStatistic statistic = CumulantStatistic::biane_cr;

    const S& r(unsigned n) const { return values.at(n - 1); }
};

namespace detail {

/// Partition sums grouped by (sorted block sizes, statistic value); the
/// grouping collapses Bell(n) partitions into a handful of weighted terms
/// so repeated transforms stay cheap.
struct PartitionTermTable {
    struct Entry {
        std::vector<unsigned> block_sizes;  // sorted ascending
        unsigned stat = 0;
        std::int64_t count = 0;
        bool full_block = false;  // the single-block partition {1..n}
    };
    std::vector<Entry> entries;
};

inline const PartitionTermTable& partition_term_table(unsigned n, CumulantStatistic statistic) {
    static std::map<std::pair<unsigned, int>, PartitionTermTable> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    const auto key = std::make_pair(n, static_cast<int>(statistic));
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    std::map<std::pair<std::vector<unsigned>, unsigned>, std::int64_t> grouped;
    for_each_set_partition(n, [&](const SetPartition& v) {
        std::vector<unsigned> sizes;
        sizes.reserve(v.blocks.size());
        for (const auto& b : v.blocks) sizes.push_back(static_cast<unsigned>(b.size()));
        std::sort(sizes.begin(), sizes.end());
        const unsigned stat =
            statistic == CumulantStatistic::biane_cr ? restricted_crossings(v) : nica_c0(v);
        ++grouped[{std::move(sizes), stat}];
    });
    PartitionTermTable table;
    for (const auto& [k, count] : grouped) {
        PartitionTermTable::Entry e;
        e.block_sizes = k.first;
        e.stat = k.second;
        e.count = count;
        e.full_block = (e.block_sizes.size() == 1 && e.block_sizes[0] == n);
        table.entries.push_back(std::move(e));
    }
    return cache.emplace(key, std::move(table)).first->second;
}

}  // namespace detail

inline constexpr unsigned kDefaultMomentLengthCap = 12;

/// m_n = sum over P(n) of q^{stat(V)} prod_B R(|B|). Exact for exact S.
template <class S>
MomentSequence<S> moments_from_cumulants(const CumulantSequence<S>& r, const S& q,
                                         unsigned cap = kDefaultMomentLengthCap) {
    const unsigned n_max = static_cast<unsigned>(r.values.size());
    if (n_max > cap) throw std::domain_error("moments_from_cumulants: length above cap");
    MomentSequence<S> m;
    m.label = "from_cumulants";
    m.values.assign(n_max + 1, S(0));
    m.values[0] = S(1);
    for (unsigned n = 1; n <= n_max; ++n) {
        const auto& table = detail::partition_term_table(n, r.statistic);
        S acc(0);
        for (const auto& e : table.entries) {
            S term = ipow(q, e.stat) * S(static_cast<int>(e.count));
            for (unsigned b : e.block_sizes) term = term * r.r(b);
            acc += term;
        }
        m.values[n] = acc;
    }
    return m;
}

/// Triangular inversion of the partition sum: the single-block partition
/// carries statistic 0, so R(n) = m_n - (terms with >= 2 blocks).
template <class S>
CumulantSequence<S> cumulants_from_moments(const MomentSequence<S>& m, const S& q,
                                           CumulantStatistic statistic,
                                           unsigned cap = kDefaultMomentLengthCap) {
    if (m.values.empty() || !is_zero_value(m.values[0] - S(1)))
        throw std::invalid_argument("cumulants_from_moments: m_0 must be 1");
    const unsigned n_max = static_cast<unsigned>(m.values.size()) - 1;
    if (n_max > cap) throw std::domain_error("cumulants_from_moments: length above cap");
    CumulantSequence<S> r;
    r.statistic = statistic;
    r.values.assign(n_max, S(0));
    for (unsigned n = 1; n <= n_max; ++n) {
        const auto& table = detail::partition_term_table(n, statistic);
        S rest(0);
        for (const auto& e : table.entries) {
            if (e.full_block) continue;
            S term = ipow(q, e.stat) * S(static_cast<int>(e.count));
            for (unsigned b : e.block_sizes) term = term * r.r(b);
            rest += term;
        }
        r.values[n - 1] = m.values[n] - rest;
    }
    return r;
}

/// Biane *_q convolution: transform to cumulants, add, transform back.
template <class S>
MomentSequence<S> biane_convolve(const MomentSequence<S>& m1, const MomentSequence<S>& m2, const S& q,
                                 CumulantStatistic statistic = CumulantStatistic::biane_cr,
                                 unsigned cap = kDefaultMomentLengthCap) {
    if (m1.values.size() != m2.values.size())
        throw std::invalid_argument("biane_convolve: length mismatch");
    auto r1 = cumulants_from_moments(m1, q, statistic, cap);
    const auto r2 = cumulants_from_moments(m2, q, statistic, cap);
    for (size_t i = 0; i < r1.values.size(); ++i) r1.values[i] += r2.values[i];
    auto m = moments_from_cumulants(r1, q, cap);
    m.label = m1.label + " *_q " + m2.label;
    return m;
}

struct HankelReport {
    bool psd = false;
    double min_eigenvalue = 0.0;
};

/// Builds H[i][j] = m_{i+j} for 0 <= i,j <= size and reports the smallest
/// eigenvalue; PSD iff it is >= -tol_rel * max|entry|.
inline HankelReport hankel_psd_check(const std::vector<double>& moments, unsigned size,
                                     double tol_rel = 1e-10) {
    if (moments.size() < 2 * static_cast<size_t>(size) + 1)
        throw std::invalid_argument("hankel_psd_check: need moments up to m_{2 size}");
    Eigen::MatrixXd h(size + 1, size + 1);
    double scale = 0.0;
    for (unsigned i = 0; i <= size; ++i)
        for (unsigned j = 0; j <= size; ++j) {
            h(i, j) = moments[i + j];
            scale = std::max(scale, std::abs(h(i, j)));
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
    HankelReport rep;
    rep.min_eigenvalue = es.eigenvalues().minCoeff();
    rep.psd = rep.min_eigenvalue >= -tol_rel * std::max(scale, 1.0);
    return rep;
}

inline std::vector<double> to_doubles(const std::vector<Rational>& v) {
    std::vector<double> d;
    d.reserve(v.size());
    for (const auto& x : v) d.push_back(to_double(x));
    return d;
}

/// A parametrized family of exact moment sequences (m_0..m_{length-1}).
struct MomentFamily {
    std::string name;
    std::function<std::vector<Rational>(const Rational& param, unsigned length)> moments;
};

/// Symmetric two-point measure (delta_{-t} + delta_{+t})/2.
inline MomentFamily bernoulli_family() {
    return {"bernoulli", [](const Rational& t, unsigned length) {
                std::vector<Rational> m(length, 0);
                for (unsigned n = 0; n < length; n += 2) m[n] = ipow(t, n);
                return m;
            }};
}

/// Centered Gaussian with variance v: m_{2k} = (2k-1)!! v^k.
inline MomentFamily gaussian_family() {
    return {"gaussian", [](const Rational& v, unsigned length) {
                std::vector<Rational> m(length, 0);
                for (unsigned n = 0; n < length; n += 2)
                    m[n] = Rational(double_factorial_odd(n / 2)) * ipow(v, n / 2);
                return m;
            }};
}

struct ScanConfig {
    std::vector<Rational> params1, params2, q_grid;
    unsigned depth = 5;
    CumulantStatistic statistic = CumulantStatistic::biane_cr;
    double tol_rel = 1e-10;
};

/// One grid evaluation of the positivity scan; `convolved` is the full
/// reproduction certificate for any reported violation.
struct ScanRecord {
    std::string family1, family2;
    Rational param1, param2, q;
    unsigned depth = 0;
    bool psd = true;
    double min_eigenvalue = 0.0;
    bool exact_recheck_done = false;
    bool exact_psd = true;
    std::vector<Rational> convolved;
};

/// Numeric Hankel scan of the *_q convolution over a (param1, param2, q)
/// grid. Candidate violations are re-verified in exact rational
/// arithmetic; the scan reports evidence, never a proof.
inline std::vector<ScanRecord> positivity_scan(const MomentFamily& family1, const MomentFamily& family2,
                                               const ScanConfig& config) {
    const unsigned length = 2 * config.depth + 1;
    if (length - 1 > kDefaultMomentLengthCap)
        throw std::domain_error("positivity_scan: depth above moment length cap");
    // Warm the partition tables before going parallel.
    for (unsigned n = 1; n < length; ++n) detail::partition_term_table(n, config.statistic);

    const size_t total = config.params1.size() * config.params2.size() * config.q_grid.size();
    std::vector<ScanRecord> records(total);
    parallel_for_indexed(total, configured_threads(), [&](size_t idx) {
        const size_t nq = config.q_grid.size();
        const size_t np2 = config.params2.size();
        const Rational& p1 = config.params1[idx / (np2 * nq)];
        const Rational& p2 = config.params2[(idx / nq) % np2];
        const Rational& q = config.q_grid[idx % nq];

        MomentSequence<Rational> m1{family1.moments(p1, length), family1.name};
        MomentSequence<Rational> m2{family2.moments(p2, length), family2.name};
        auto conv = biane_convolve(m1, m2, q, config.statistic);
        const auto hankel = hankel_psd_check(to_doubles(conv.values), config.depth, config.tol_rel);

        ScanRecord rec;
        rec.family1 = family1.name;
        rec.family2 = family2.name;
        rec.param1 = p1;
        rec.param2 = p2;
        rec.q = q;
        rec.depth = config.depth;
        rec.psd = hankel.psd;
        rec.min_eigenvalue = hankel.min_eigenvalue;
        rec.convolved = conv.values;
        if (!rec.psd) {
            DenseMatrix<Rational> h(config.depth + 1, config.depth + 1);
            for (unsigned i = 0; i <= config.depth; ++i)
                for (unsigned j = 0; j <= config.depth; ++j) h.at(i, j) = conv.values[i + j];
            rec.exact_recheck_done = true;
            rec.exact_psd = psd_exact_rational(h);
            if (rec.exact_psd) rec.psd = true;  // numeric ghost, overruled by exact arithmetic
        }
        records[idx] = std::move(rec);
    });
    return records;
}

}  // namespace qlab
