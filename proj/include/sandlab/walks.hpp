#ifndef SANDLAB_WALKS_HPP
#define SANDLAB_WALKS_HPP

#include "sandlab/numeric.hpp"
#include "sandlab/report.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace sandlab::walks {

// Event parameters for {w^(t) = n, max^(t) = n, min^(t) >= 1} with w^(0) = i.
struct CorridorQuery {
    int start = 1;   // i
    int edge = 1;    // n, corridor right edge
    long steps = 0;  // t

    void validate() const;
};

// Number of t-step +-1 walks from 0 ending at k; 0 on parity mismatch.
BigInt count_end(long t, long k);

// Number of t-step walks from 0 ending at k with maximum position exactly m,
// via the reflection principle.
BigInt count_end_max(long t, long k, long m);

// Number of t-step walks from `start` staying inside [1, edge] and ending at
// `edge`; prob_corridor = count / 2^t.
BigInt corridor_count(const CorridorQuery& q);
Rational prob_corridor(const CorridorQuery& q);

// One DP pass: corridor end-counts for every t = 0..t_max.
std::vector<BigInt> corridor_count_sweep(int start, int edge, long t_max);

// Counts of walks from `start` with min >= 1 (no upper wall), for every
// t = 0..t_max.
std::vector<BigInt> min_above_count_sweep(int start, long t_max);

// Exhaustive enumeration of sign sequences; the predicate sees the full path
// w^(0..t) with w^(0) = 0.
using PathPredicate = std::function<bool(std::span<const int>)>;
BigInt brute_force_count(int t, const PathPredicate& predicate);
inline constexpr int kBruteForceCap = 22;

// Partial sum of the negative (multi)nomial series
//   sum_{s=0..cap} C(t1+s, s) (d-1)^s / d^(t1+s),
// which converges to d.
double neg_binom_sum(long t1, int d, long cap);

enum class WalkLemma {
    numWalks,
    goesAbove,
    endn,
    stirling,
    binBound,
    probLeft,
    probRight,
    leftWorse,
    probLeftRight,
    upperProbLeftRight,
    chernoff,
    binSumInf,
    binSumInfHigher,
    divideWalkinHalf,
    sumBoundForMaxMinEnd,
    simpleMaxforProductProb,
    MaxIsAbovenSquared,
    upperBoundMaxSum,
    upperBoundSum,
};

std::string lemma_name(WalkLemma id);

// Parameter grid for verify_walk_lemma; unused fields are ignored by lemmas
// that do not need them. Empty vectors select the lemma's default grid.
struct ParamGrid {
    std::vector<int> n;
    std::vector<int> c;
    std::vector<int> i;
    std::vector<long> t;
    std::vector<long> t1;
    long cap = 0;
    double tolerance = 0.0;
};

std::vector<LemmaReport> verify_walk_lemma(WalkLemma id, const ParamGrid& grid);

// Interleaving lower bound for the grid corner potential pi_(n,n)(u): partial
// sum over split step counts t1 + t2 <= t_cap of
//   C(t1+t2, t1)/2^(t1+t2) * (1/2) P(u1, t1-1) * (1/2) P(u2, t2-1)
// where P(i, s) is the corridor probability with edge n-1.
Rational corner_potential_series(int n, int u1, int u2, long t_cap);

}  // namespace sandlab::walks

#endif
