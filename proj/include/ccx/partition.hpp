#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ccx {

// k = s + ell always; a character is trivial when s <= 1.
struct PartitionStats {
    int k = 0;   // number of blocks
    int s = 0;   // blocks of size >= 2
    int ell = 0; // singleton blocks
    int gap = 0; // sum of per-block gaps
    bool nontrivial() const { return s >= 2; }
};

// A partition of [n] into nonempty blocks. Canonical form: every block sorted
// ascending, blocks ordered by their minimum element. The restricted-growth
// sequence (rgs) is the hashing/enumeration encoding: rgs[i] is the 0-based
// index, in order of first appearance, of the block containing element i+1.
class Partition {
public:
    Partition() = default;

    // Validates: blocks nonempty, disjoint, union exactly {1..n}.
    static Partition from_blocks(std::vector<std::vector<int>> blocks);

    // Trusted path for enumerators that guarantee a valid cover; still sorts
    // into canonical form.
    static Partition from_blocks_unchecked(std::vector<std::vector<int>> blocks);

    static Partition from_rgs(std::span<const int> rgs);

    // Text format: blocks joined by '|', elements by ',', e.g. "1,2,3|4,5|6,7".
    static Partition parse(std::string_view text);
    std::string format() const;

    static Partition discrete(int n);
    static Partition single_block(int n);

    int n() const { return n_; }
    const std::vector<std::vector<int>>& blocks() const { return blocks_; }
    std::vector<int> rgs() const;
    PartitionStats stats() const;

    bool operator==(const Partition& o) const { return blocks_ == o.blocks_; }
    bool operator!=(const Partition& o) const { return !(*this == o); }
    bool operator<(const Partition& o) const { return blocks_ < o.blocks_; }

private:
    int n_ = 0;
    std::vector<std::vector<int>> blocks_;
};

// gap(X) = max(X) - min(X) + 1 - |X| for a nonempty set of distinct positive
// integers (any input order).
int gap_of_set(std::span<const int> x);
int gap_of_partition(const Partition& p);

// Blocks of size >= 2 first, ordered by the leftmost position of any member
// under the caterpillar permutation `perm` (values 1..n); singletons follow in
// ascending element order.
std::vector<std::vector<int>> standard_listing(const Partition& p,
                                               std::span<const int> perm);

inline constexpr int kPartitionEnumGuard = 12;

// All partitions of [n], in lexicographic rgs order (Bell(n) of them). The
// optional filter selects on stats only; enumeration still visits everything.
void enumerate_all_partitions(
    int n, const std::function<void(const Partition&)>& emit,
    const std::function<bool(const PartitionStats&)>& filter = nullptr,
    int guard = kPartitionEnumGuard);

} // namespace ccx
