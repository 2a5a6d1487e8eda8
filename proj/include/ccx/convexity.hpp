#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ccx/bigint.hpp"
#include "ccx/caterpillar.hpp"
#include "ccx/partition.hpp"
#include "ccx/tree.hpp"

namespace ccx {

// Exact census of convex characters, split by block count k and singleton
// count ell. Everything is derivable from the (k, ell) cells: a character is
// nontrivial iff it has at least two big blocks, i.e. ell <= k - 2.
struct CountTable {
    int n = 0;
    std::vector<Count> by_k;            // index 0..n
    std::vector<Count> by_k_nontrivial; // index 0..n
    std::map<std::pair<int, int>, Count> by_k_ell;
    Count total = 0;

    static CountTable from_cells(int n, std::map<std::pair<int, int>, Count> cells);

    // Rows: n,k,ell,nontrivial,count — one per (k, ell) cell.
    void write_csv(std::ostream& out) const;
    std::string to_json() const;
};

// Steiner-subtree disjointness: the defining membership test. The partition
// must be over [n] matching the tree's labels.
bool is_convex(const Tree& tree, const Partition& p);

// Caterpillar fast path: big blocks must occupy pairwise disjoint position
// intervals. Agreement with is_convex is a tested property, not an assumption.
bool is_convex_caterpillar(const Caterpillar& c, const Partition& p);

// Caller-owned scratch buffers so repeated membership queries stay
// allocation-free; one per thread.
struct ConvexScratch {
    std::vector<uint8_t> claimed;
    std::vector<int32_t> down;
    std::vector<uint8_t> in_block;
    std::vector<std::pair<int32_t, int32_t>> spans;
};

// Preprocessed membership for one tree, for repeated queries. Uses the
// interval test when the tree is a caterpillar (unless disabled).
class ConvexityTester {
public:
    explicit ConvexityTester(const Tree& tree, bool allow_caterpillar_fast_path = true);
    bool contains(const Partition& p) const;
    bool contains(const Partition& p, ConvexScratch& scratch) const;
    int n() const { return tree_.leaf_count(); }
    bool uses_interval_path() const { return !pos_.empty(); }

private:
    Tree tree_;
    std::vector<int32_t> pos_;    // nonempty iff caterpillar path active
    std::vector<int32_t> order_;  // post-order, root last
    std::vector<int32_t> parent_; // -1 at root
};

inline constexpr int kOracleGuard = 12;
inline constexpr int kConvexEnumGuard = 18;

// Ground truth by exhaustion: leaf partitions induced by all 2^(2n-3) edge
// subsets, deduplicated. Returned sorted in canonical order.
std::vector<Partition> convex_oracle(const Tree& tree, int guard = kOracleGuard);

using StatsFilter = std::function<bool(const PartitionStats&)>;

// Streams every convex character of `tree` exactly once, in a deterministic
// order, by assigning open/closed block states over a rooted copy. The filter
// only selects what is emitted.
void enumerate_convex(const Tree& tree, const std::function<void(const Partition&)>& emit,
                      const StatsFilter& filter = nullptr, int guard = kConvexEnumGuard);

std::vector<Partition> enumerate_convex_list(const Tree& tree, const StatsFilter& filter = nullptr,
                                             int guard = kConvexEnumGuard);

// Dynamic program over (closed blocks, singletons) states; polynomial in n, so
// usable far beyond enumeration range.
CountTable count_convex(const Tree& tree);

// Big-block data of many partitions, flattened for tight membership loops
// (extremal search, Monte-Carlo sampling).
struct CharacterPack {
    int n = 0;
    std::vector<int32_t> labels;         // big-block members, concatenated
    std::vector<int32_t> block_end;      // prefix end into labels, per big block
    std::vector<int32_t> part_block_end; // prefix end into block_end, per partition
    std::vector<int16_t> k_of;
    std::vector<int16_t> ell_of;

    size_t size() const { return part_block_end.size(); }
    void add(const Partition& p);
    // Are the big-block spans of partition idx pairwise disjoint under pos[]
    // (0-based positions per label)?
    bool spans_disjoint(size_t idx, const int32_t* pos) const;
};

CharacterPack pack_convex_characters(const Tree& tree, const StatsFilter& filter = nullptr,
                                     int guard = kConvexEnumGuard);

} // namespace ccx
