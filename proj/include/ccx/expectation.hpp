#pragma once

#include <cstdint>
#include <vector>

#include "ccx/bigint.hpp"
#include "ccx/convexity.hpp"

namespace ccx {

inline constexpr int kExactExpectationGuard = 60;

// f(r, m): sum over compositions (a_1..a_m) of r with every part >= 2 of
// prod a_j!; zero when r < 2m.
Count composition_weight(int r, int m);

// Expected number of nontrivial characters convex on both the standard
// caterpillar and a uniformly random one, as an exact rational:
//   sum_{ell=0}^{n-4} C(n,ell) sum_{m=2}^{floor((n-ell)/2)} m!/(n-ell)! f(n-ell, m)
Ratio exact_expected_nontrivial(int n, int guard = kExactExpectationGuard);

// Test oracle: the same expectation averaged over all n! permutations.
Ratio brute_force_expected_nontrivial(int n, int guard = 8);

struct McResult {
    std::uint64_t samples = 0;
    Count sum;     // of per-sample shared nontrivial counts
    Count sum_sq;
    Ratio mean() const { return Ratio(sum, samples); }
    // (standard error of the mean)^2, exact; zero when samples == 1.
    Ratio se_squared() const;
    double std_error() const;
    // |mean - reference| <= z * SE, decided in exact arithmetic.
    bool within_se(const Ratio& reference, int z) const;
};

McResult monte_carlo_expected(int n, std::uint64_t samples, std::uint64_t seed, int threads = 0,
                              int guard = kConvexEnumGuard);

struct TrendRow {
    int n = 0;
    Ratio expectation;          // E(n)
    Ratio ratio;                // E(n) * n^2 / 2^n
    Ratio expectation_total;    // 2^n - n + E(n)
};

std::vector<TrendRow> trend_table(int n_from, int n_to, int guard = kExactExpectationGuard);

} // namespace ccx
