#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qlab/polynomial.hpp"

namespace qlab {

/// Pair partition of {1..2n} in canonical form: openers strictly
/// increasing, opener < closer, every point covered exactly once.
struct PairPartition {
    std::vector<std::pair<unsigned, unsigned>> pairs;  // 1-based

    unsigned points() const { return static_cast<unsigned>(2 * pairs.size()); }
};

/// Set partition of {1..n}: blocks sorted internally, blocks ordered by
/// their minimum element.
struct SetPartition {
    std::vector<std::vector<unsigned>> blocks;  // 1-based

    unsigned points() const {
        unsigned n = 0;
        for (const auto& b : blocks) n += static_cast<unsigned>(b.size());
        return n;
    }
};

struct Permutation {
    std::vector<unsigned> images;  // images[i] = sigma(i+1), values 1..n
};

inline constexpr unsigned kDefaultPairPointCap = 16;
inline constexpr unsigned kDefaultSetPointCap = 12;

/// Statistics of a pair partition. cr: a<c<b<d, nest: a<c<d<b,
/// ip: sum of interior point counts over pairs.
inline unsigned crossings(const PairPartition& v) {
    unsigned count = 0;
    const auto& p = v.pairs;
    for (size_t i = 0; i < p.size(); ++i)
        for (size_t j = i + 1; j < p.size(); ++j) {
            // openers sorted: p[i].first < p[j].first
            if (p[i].first < p[j].first && p[j].first < p[i].second && p[i].second < p[j].second) ++count;
        }
    return count;
}

inline unsigned nestings(const PairPartition& v) {
    unsigned count = 0;
    const auto& p = v.pairs;
    for (size_t i = 0; i < p.size(); ++i)
        for (size_t j = i + 1; j < p.size(); ++j) {
            if (p[i].first < p[j].first && p[j].second < p[i].second) ++count;
        }
    return count;
}

inline unsigned interior_points(const PairPartition& v) {
    unsigned total = 0;
    for (const auto& [a, b] : v.pairs) total += b - a - 1;
    return total;
}

/// e0 = nest + 2*cr (equivalently ip/2 + cr).
inline unsigned e0_statistic(const PairPartition& v) { return nestings(v) + 2 * crossings(v); }

namespace detail {

template <class Visitor>
void pair_partition_rec(std::vector<unsigned>& unused, std::vector<std::pair<unsigned, unsigned>>& acc,
                        const Visitor& visit) {
    if (unused.empty()) {
        visit(PairPartition{acc});
        return;
    }
    const unsigned opener = unused.front();
    for (size_t j = 1; j < unused.size(); ++j) {
        const unsigned closer = unused[j];
        std::vector<unsigned> rest;
        rest.reserve(unused.size() - 2);
        for (size_t k = 1; k < unused.size(); ++k)
            if (k != j) rest.push_back(unused[k]);
        acc.emplace_back(opener, closer);
        pair_partition_rec(rest, acc, visit);
        acc.pop_back();
    }
}

template <class Visitor>
void set_partition_rec(unsigned next, unsigned n, std::vector<std::vector<unsigned>>& blocks, const Visitor& visit) {
    if (next > n) {
        visit(SetPartition{blocks});
        return;
    }
    for (auto& b : blocks) {
        b.push_back(next);
        set_partition_rec(next + 1, n, blocks, visit);
        b.pop_back();
    }
    blocks.push_back({next});
    set_partition_rec(next + 1, n, blocks, visit);
    blocks.pop_back();
}

}  // namespace detail

/// Streams all (2n-1)!! pair partitions of {1..two_n} in canonical form.
template <class Visitor>
void for_each_pair_partition(unsigned two_n, const Visitor& visit, unsigned cap = kDefaultPairPointCap) {
    if (two_n % 2 != 0) throw std::domain_error("for_each_pair_partition: odd point count");
    if (two_n > cap) throw std::domain_error("for_each_pair_partition: point count above cap");
    std::vector<unsigned> all(two_n);
    for (unsigned i = 0; i < two_n; ++i) all[i] = i + 1;
    std::vector<std::pair<unsigned, unsigned>> acc;
    acc.reserve(two_n / 2);
    detail::pair_partition_rec(all, acc, visit);
}

/// Streams all Bell(n) set partitions of {1..n}; blocks arrive ordered by
/// minimum element because elements are inserted in increasing order.
template <class Visitor>
void for_each_set_partition(unsigned n, const Visitor& visit, unsigned cap = kDefaultSetPointCap) {
    if (n > cap) throw std::domain_error("for_each_set_partition: n above cap");
    if (n == 0) {
        visit(SetPartition{});
        return;
    }
    std::vector<std::vector<unsigned>> blocks;
    detail::set_partition_rec(1, n, blocks, visit);
}

/// Consecutive-arc crossings of a set partition: each block {b1<...<bm} is
/// drawn as the chain of arcs (b1,b2),...,(b_{m-1},b_m); counts arc pairs
/// (a,b),(c,d) with a<c<b<d. Restricted to pair partitions this is the
/// ordinary crossing number.
inline unsigned restricted_crossings(const SetPartition& v) {
    std::vector<std::pair<unsigned, unsigned>> arcs;
    for (const auto& b : v.blocks)
        for (size_t i = 0; i + 1 < b.size(); ++i) arcs.emplace_back(b[i], b[i + 1]);
    unsigned count = 0;
    for (size_t i = 0; i < arcs.size(); ++i)
        for (size_t j = 0; j < arcs.size(); ++j) {
            if (i == j) continue;
            // a<c<b<d with (a,b)=arcs[i], (c,d)=arcs[j]; each unordered
            // crossing pair satisfies this for exactly one ordering.
            if (arcs[i].first < arcs[j].first && arcs[j].first < arcs[i].second && arcs[i].second < arcs[j].second)
                ++count;
        }
    return count;
}

/// Nica's left-reduced crossing number c0: quadruples m1<m2<m3<m4 with
/// m1~m3, m2~m4, m2 !~ m3, and m1, m2 minimal in their blocks.
inline unsigned nica_c0(const SetPartition& v) {
    const unsigned n = v.points();
    std::vector<unsigned> block_of(n + 1, 0);
    std::vector<unsigned> block_min(v.blocks.size(), 0);
    for (unsigned b = 0; b < v.blocks.size(); ++b) {
        block_min[b] = v.blocks[b].front();
        for (unsigned x : v.blocks[b]) block_of[x] = b;
    }
    unsigned count = 0;
    for (unsigned m1 = 1; m1 <= n; ++m1) {
        if (block_min[block_of[m1]] != m1) continue;
        for (unsigned m2 = m1 + 1; m2 <= n; ++m2) {
            if (block_min[block_of[m2]] != m2) continue;
            for (unsigned m3 = m2 + 1; m3 <= n; ++m3) {
                if (block_of[m3] != block_of[m1] || block_of[m3] == block_of[m2]) continue;
                for (unsigned m4 = m3 + 1; m4 <= n; ++m4)
                    if (block_of[m4] == block_of[m2]) ++count;
            }
        }
    }
    return count;
}

inline unsigned inversions(const Permutation& p) {
    unsigned count = 0;
    for (size_t i = 0; i < p.images.size(); ++i)
        for (size_t j = i + 1; j < p.images.size(); ++j)
            if (p.images[i] > p.images[j]) ++count;
    return count;
}

/// Generic partition-weighted Wick sum:
///   sum over V in P2(2n) of weight(cr,nest,ip) * prod_{(i,j) in V} cov[i-1][j-1].
/// Exact whenever the scalar type S is exact.
template <class S, class Weight>
S wick_sum(unsigned two_n, const std::vector<std::vector<S>>& covariance, const Weight& weight,
           unsigned cap = kDefaultPairPointCap) {
    if (covariance.size() != two_n) throw std::invalid_argument("wick_sum: covariance dimension mismatch");
    for (const auto& row : covariance)
        if (row.size() != two_n) throw std::invalid_argument("wick_sum: covariance dimension mismatch");
    S total(0);
    for_each_pair_partition(
        two_n,
        [&](const PairPartition& v) {
            S prod(1);
            bool vanished = false;
            for (const auto& [a, b] : v.pairs) {
                const S& c = covariance[a - 1][b - 1];
                if (is_zero_value(c)) {
                    vanished = true;
                    break;
                }
                prod = prod * c;
            }
            if (vanished) return;
            total += weight(crossings(v), nestings(v), interior_points(v)) * prod;
        },
        cap);
    return total;
}

}  // namespace qlab
