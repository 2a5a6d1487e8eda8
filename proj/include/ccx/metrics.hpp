#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ccx/coconvex.hpp"

namespace ccx {

// Per-k shared convex-character counts and the derived distances for one tree
// pair. d_k = 2*C(2n-k-1, k-1) - 2*shared_k, for 2 <= k <= n-2.
struct DistanceReport {
    int n = 0;
    struct Row {
        int k = 0;
        Count shared;
        Count dk;
    };
    std::vector<Row> per_k;
    Count d_total;
    long long rf = 0;
    long long quartet = 0;

    void write_csv(std::ostream& out) const; // rows: k,shared,dk
    std::string to_json() const;
};

inline constexpr int kQuartetGuard = 50;

DistanceReport distance_report(const Tree& a, const Tree& b, int guard = kConvexEnumGuard,
                               int quartet_guard = kQuartetGuard);

Count dk_distance(const Tree& a, const Tree& b, int k, int guard = kConvexEnumGuard);

// |P(T) Δ P(F)| = sum of d_k over 2 <= k <= n-2.
Count character_distance(const Tree& a, const Tree& b, int guard = kConvexEnumGuard);

// Symmetric difference of the nontrivial splits (independent of d_2's route).
long long rf_distance(const Tree& a, const Tree& b);

// Number of 4-subsets whose induced quartets differ; brute force over all
// C(n,4) restrictions (independent of d_{n-2}'s route).
long long quartet_distance(const Tree& a, const Tree& b, int guard = kQuartetGuard);

enum class Metric { kDk, kCharacter, kRf, kQuartet };

// Square matrix over all pairs; entries as exact counts.
std::vector<std::vector<Count>> distance_matrix(std::span<const Tree> trees, Metric metric,
                                                int k = 0, int threads = 0,
                                                int guard = kConvexEnumGuard,
                                                int quartet_guard = kQuartetGuard);

void write_matrix_csv(std::ostream& out, const std::vector<std::vector<Count>>& m);

} // namespace ccx
