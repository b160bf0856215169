#include "sandlab/walks.hpp"

#include <algorithm>

namespace sandlab::walks {

void CorridorQuery::validate() const {
    if (edge < 1) throw std::invalid_argument("CorridorQuery: edge must be >= 1");
    if (start < 1 || start > edge)
        throw std::invalid_argument("CorridorQuery: start must lie in [1, edge]");
    if (steps < 0) throw std::invalid_argument("CorridorQuery: steps must be >= 0");
}

BigInt count_end(long t, long k) {
    if (t < 0) throw std::invalid_argument("count_end: t must be >= 0");
    if (std::abs(k) > t) return 0;
    if (((t + k) & 1) != 0) return 0;
    return binomial(t, (t + k) / 2);
}

BigInt count_end_max(long t, long k, long m) {
    if (t < 0) throw std::invalid_argument("count_end_max: t must be >= 0");
    if (m < 0) throw std::invalid_argument("count_end_max: m must be >= 0");
    if (k > m) throw std::invalid_argument("count_end_max: requires k <= m");
    // reflection: #{end=k, max>=m} = #{end=2m-k}
    return count_end(t, 2 * m - k) - count_end(t, 2 * (m + 1) - k);
}

std::vector<BigInt> corridor_count_sweep(int start, int edge, long t_max) {
    CorridorQuery{start, edge, std::max<long>(t_max, 0)}.validate();
    const std::size_t n = static_cast<std::size_t>(edge);
    std::vector<BigInt> cur(n + 2, 0), nxt(n + 2, 0);
    cur[static_cast<std::size_t>(start)] = 1;
    std::vector<BigInt> out(static_cast<std::size_t>(t_max) + 1, 0);
    out[0] = (start == edge) ? 1 : 0;
    for (long t = 1; t <= t_max; ++t) {
        for (std::size_t p = 0; p < n + 2; ++p) nxt[p] = 0;
        for (std::size_t p = 1; p <= n; ++p) {
            if (cur[p].is_zero()) continue;
            if (p - 1 >= 1) nxt[p - 1] += cur[p];
            if (p + 1 <= n) nxt[p + 1] += cur[p];
        }
        cur.swap(nxt);
        out[static_cast<std::size_t>(t)] = cur[n];
    }
    return out;
}

BigInt corridor_count(const CorridorQuery& q) {
    q.validate();
    return corridor_count_sweep(q.start, q.edge, q.steps)[static_cast<std::size_t>(q.steps)];
}

Rational prob_corridor(const CorridorQuery& q) {
    return Rational(corridor_count(q), pow2(q.steps));
}

std::vector<BigInt> min_above_count_sweep(int start, long t_max) {
    if (start < 1) throw std::invalid_argument("min_above_count_sweep: start must be >= 1");
    if (t_max < 0) throw std::invalid_argument("min_above_count_sweep: t_max must be >= 0");
    const std::size_t top = static_cast<std::size_t>(start) + static_cast<std::size_t>(t_max);
    std::vector<BigInt> cur(top + 2, 0), nxt(top + 2, 0);
    cur[static_cast<std::size_t>(start)] = 1;
    std::vector<BigInt> out(static_cast<std::size_t>(t_max) + 1, 0);
    out[0] = 1;
    for (long t = 1; t <= t_max; ++t) {
        for (std::size_t p = 0; p < top + 2; ++p) nxt[p] = 0;
        BigInt alive = 0;
        for (std::size_t p = 1; p <= top; ++p) {
            if (cur[p].is_zero()) continue;
            if (p - 1 >= 1) nxt[p - 1] += cur[p];
            nxt[p + 1] += cur[p];
        }
        cur.swap(nxt);
        for (std::size_t p = 1; p <= top + 1; ++p) alive += cur[p];
        out[static_cast<std::size_t>(t)] = alive;
    }
    return out;
}

BigInt brute_force_count(int t, const PathPredicate& predicate) {
    if (t < 0) throw std::invalid_argument("brute_force_count: t must be >= 0");
    if (t > kBruteForceCap)
        throw std::invalid_argument("brute_force_count: t exceeds enumeration cap");
    std::vector<int> path(static_cast<std::size_t>(t) + 1, 0);
    BigInt count = 0;
    const std::uint64_t total = 1ull << t;
    for (std::uint64_t bits = 0; bits < total; ++bits) {
        int pos = 0;
        for (int s = 0; s < t; ++s) {
            pos += (bits >> s) & 1 ? 1 : -1;
            path[static_cast<std::size_t>(s) + 1] = pos;
        }
        if (predicate(std::span<const int>(path))) ++count;
    }
    return count;
}

double neg_binom_sum(long t1, int d, long cap) {
    if (t1 < 0) throw std::invalid_argument("neg_binom_sum: t1 must be >= 0");
    if (d < 2) throw std::invalid_argument("neg_binom_sum: d must be >= 2");
    if (cap < 1) throw std::invalid_argument("neg_binom_sum: cap must be >= 1");
    // term(s) = C(t1+s, s) (d-1)^s / d^(t1+s), accumulated with the ratio
    // recurrence term(s+1)/term(s) = (t1+s+1)/(s+1) * (d-1)/d
    long double term = std::pow(static_cast<long double>(d), static_cast<long double>(-t1));
    long double sum = term;
    const long double ratio_base = static_cast<long double>(d - 1) / static_cast<long double>(d);
    for (long s = 0; s < cap; ++s) {
        term *= ratio_base * static_cast<long double>(t1 + s + 1) / static_cast<long double>(s + 1);
        sum += term;
    }
    return static_cast<double>(sum);
}

Rational corner_potential_series(int n, int u1, int u2, long t_cap) {
    if (n < 2) throw std::invalid_argument("corner_potential_series: n must be >= 2");
    const int half = (n + 1) / 2;
    if (u1 < 1 || u2 < 1 || u1 > half || u2 > half)
        throw std::invalid_argument("corner_potential_series: u must be in the top-left quadrant");
    if (t_cap < 0) throw std::invalid_argument("corner_potential_series: t_cap must be >= 0");
    if (t_cap < 2) return Rational(0);

    // first-visit factor: (1/2) * corridor(u_d -> edge n-1) after t-1 steps
    const std::vector<BigInt> a = corridor_count_sweep(u1, n - 1, t_cap - 1);
    const std::vector<BigInt> b = corridor_count_sweep(u2, n - 1, t_cap - 1);

    // common denominator 4^t_cap:
    //   term = C(t1+t2, t1) a[t1-1] b[t2-1] / 4^(t1+t2)
    BigInt total = 0;
    for (long t1 = 1; t1 < t_cap; ++t1) {
        const BigInt& a1 = a[static_cast<std::size_t>(t1 - 1)];
        if (a1.is_zero()) continue;
        // running binomial, C(t1+t2, t1) starting at t2 = 1
        BigInt binom = t1 + 1;
        for (long t2 = 1; t2 + t1 <= t_cap; ++t2) {
            const BigInt& b2 = b[static_cast<std::size_t>(t2 - 1)];
            if (!b2.is_zero()) {
                const long t = t1 + t2;
                total += binom * a1 * b2 * (BigInt(1) << static_cast<unsigned>(2 * (t_cap - t)));
            }
            // C(t1+t2+1, t1) = C(t1+t2, t1) * (t1+t2+1)/(t2+1)
            binom *= (t1 + t2 + 1);
            binom /= (t2 + 1);
        }
    }
    return Rational(total, BigInt(1) << static_cast<unsigned>(2 * t_cap));
}

std::string lemma_name(WalkLemma id) {
    switch (id) {
        case WalkLemma::numWalks: return "numWalks";
        case WalkLemma::goesAbove: return "goesAbove";
        case WalkLemma::endn: return "endn";
        case WalkLemma::stirling: return "stirling";
        case WalkLemma::binBound: return "binBound";
        case WalkLemma::probLeft: return "probLeft";
        case WalkLemma::probRight: return "probRight";
        case WalkLemma::leftWorse: return "leftWorse";
        case WalkLemma::probLeftRight: return "probLeftRight";
        case WalkLemma::upperProbLeftRight: return "upperProbLeftRight";
        case WalkLemma::chernoff: return "chernoff";
        case WalkLemma::binSumInf: return "binSumInf";
        case WalkLemma::binSumInfHigher: return "binSumInfHigher";
        case WalkLemma::divideWalkinHalf: return "divideWalkinHalf";
        case WalkLemma::sumBoundForMaxMinEnd: return "sumBoundForMaxMinEnd";
        case WalkLemma::simpleMaxforProductProb: return "simpleMaxforProductProb";
        case WalkLemma::MaxIsAbovenSquared: return "MaxIsAbovenSquared";
        case WalkLemma::upperBoundMaxSum: return "upperBoundMaxSum";
        case WalkLemma::upperBoundSum: return "upperBoundSum";
    }
    throw std::invalid_argument("unknown walk lemma id");
}

}  // namespace sandlab::walks
