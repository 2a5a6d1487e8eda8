#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ccx/bigint.hpp"
#include "ccx/coconvex.hpp"

namespace ccx {

inline constexpr int kExhaustiveGuard = 9;
inline constexpr int kExhaustiveHardCap = 11; // flat permutation buffer; see README
inline constexpr int kSnkGuard = 7;

// One minimized quantity plus the witnesses that achieve it. The first tree is
// always the standard caterpillar; witnesses are canonical permutations of the
// second tree, in lexicographic order, capped at witness_cap.
struct ExtremalResult {
    int n = 0;
    std::optional<int> k; // empty for the all-k total
    Count value;
    std::vector<Caterpillar> witnesses;
    std::uint64_t witness_count = 0; // all minimizers, beyond the stored cap
    std::uint64_t search_space = 0;  // candidate permutations examined
};

// One scan of all canonical caterpillars yields the minimum for every k and
// for the total simultaneously.
struct ExtremalTable {
    int n = 0;
    std::vector<ExtremalResult> per_k; // index 0..n; entries for k = 1..n
    ExtremalResult total;
};

struct ScanOptions {
    int threads = 0;       // 0 = all cores
    int witness_cap = 100;
    int guard = kExhaustiveGuard;
    std::string checkpoint_path;        // empty = no checkpointing
    std::uint64_t checkpoint_every = 64; // merged chunks between writes
};

ExtremalTable exhaustive_scan(int n, const ScanOptions& opts = {});
ExtremalResult exhaustive_cnk(int n, int k, const ScanOptions& opts = {});
ExtremalResult exhaustive_cn(int n, const ScanOptions& opts = {});

// The small-k construction: odd labels of [1, ceil(2n/3)] descending, odd
// labels above ascending, even labels above descending, even labels of the
// first interval ascending.
Caterpillar thm42_permutation(int n);

// Shared 2-big-block witness families for a pair (standard, T_pi) at a given
// singleton count ell; n must be a multiple of 4, n >= 8, n/2 <= ell <= n-4.
std::vector<Partition> thm31_witnesses(const Caterpillar& pi, int ell);

// Lower bound (family size floor) for the witness construction at ell.
Count thm31_floor(int n, int ell);

// The modular-blocks family: identity, the block concatenation rho, the m
// within-block reversals, and the 2(m-2) block swaps; 3m-2 permutations total.
std::vector<Caterpillar> thm62_family(int n, int m);
// Residue blocks D_0..D_{m-1} (ascending within block).
std::vector<std::vector<int>> thm62_blocks(int n, int m);

// Leaf set of a longest monotone subsequence of pi2^{-1} ∘ pi1 (ties prefer
// increasing); both caterpillars induce the same subtree on it. Returned
// ascending.
std::vector<int> lis_agreement(const Caterpillar& pi1, const Caterpillar& pi2);

// Iterated version for t >= 2 permutations; the common subtree survives all.
std::vector<int> multi_lis_agreement(std::span<const Caterpillar> perms);

// Per-k lower bounds, next to exhaustive values when available.
struct BoundRow {
    int k = 0;
    Count trivial_floor;                 // C(n, k-1), valid for k <= n-1
    std::optional<Count> bound31;        // trivial floor + family-size sum at ell = k-2
    std::optional<Ratio> bound32_exact;  // the smoothed closed form
    std::optional<Count> bound32;        // its ceiling
    std::optional<Count> exhaustive;
};

struct BoundTable {
    int n = 0;
    std::vector<BoundRow> rows; // k = 1..n
    Count cn_floor;             // 2^n - n plus all admissible extras
    std::optional<Count> cn_exhaustive;

    void write_csv(std::ostream& out) const;
    std::string to_json() const;
};

BoundTable bound_tables(int n, const ExtremalTable* exhaustive = nullptr);

// Cross-check over all binary tree pairs (not just caterpillars), exhaustive
// at very small n via shape representatives.
struct SnkTable {
    int n = 0;
    std::vector<Count> by_k; // index 0..n
    Count total;
};

SnkTable exhaustive_snk(int n, int guard = kSnkGuard);

// Every labeled topology on [n], by sequential leaf insertion ((2n-5)!! trees).
std::vector<Tree> all_labeled_topologies(int n, int guard = 8);

} // namespace ccx
