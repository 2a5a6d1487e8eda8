#include "ccx/partition.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

#include "ccx/errors.hpp"

namespace ccx {

namespace {

void canonicalize(std::vector<std::vector<int>>& blocks) {
    for (auto& b : blocks) std::sort(b.begin(), b.end());
    std::sort(blocks.begin(), blocks.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

} // namespace

Partition Partition::from_blocks(std::vector<std::vector<int>> blocks) {
    int n = 0;
    for (const auto& b : blocks) {
        if (b.empty()) throw std::invalid_argument("partition: empty block");
        n += static_cast<int>(b.size());
    }
    std::vector<char> seen(static_cast<size_t>(n) + 1, 0);
    for (const auto& b : blocks) {
        for (int e : b) {
            if (e < 1 || e > n)
                throw std::invalid_argument("partition: element " + std::to_string(e) +
                                            " outside [" + std::to_string(n) + "]");
            if (seen[static_cast<size_t>(e)])
                throw std::invalid_argument("partition: duplicate element " + std::to_string(e));
            seen[static_cast<size_t>(e)] = 1;
        }
    }
    return from_blocks_unchecked(std::move(blocks));
}

Partition Partition::from_blocks_unchecked(std::vector<std::vector<int>> blocks) {
    Partition p;
    canonicalize(blocks);
    for (const auto& b : blocks) p.n_ += static_cast<int>(b.size());
    p.blocks_ = std::move(blocks);
    return p;
}

Partition Partition::from_rgs(std::span<const int> rgs) {
    std::vector<std::vector<int>> blocks;
    int next = 0;
    for (size_t i = 0; i < rgs.size(); ++i) {
        int id = rgs[i];
        if (id < 0 || id > next)
            throw std::invalid_argument("partition: not a restricted-growth sequence");
        if (id == next) {
            blocks.emplace_back();
            ++next;
        }
        blocks[static_cast<size_t>(id)].push_back(static_cast<int>(i) + 1);
    }
    return from_blocks_unchecked(std::move(blocks));
}

std::vector<int> Partition::rgs() const {
    std::vector<int> out(static_cast<size_t>(n_), -1);
    // Blocks are ordered by minimum, which is exactly first-appearance order.
    for (size_t bi = 0; bi < blocks_.size(); ++bi)
        for (int e : blocks_[bi]) out[static_cast<size_t>(e) - 1] = static_cast<int>(bi);
    return out;
}

Partition Partition::parse(std::string_view text) {
    std::vector<std::vector<int>> blocks;
    std::vector<int> cur;
    bool in_number = false;
    long long value = 0;
    auto flush_number = [&](bool required) {
        if (!in_number) {
            if (required) throw ParseError("partition: empty element");
            return;
        }
        if (value < 1 || value > 1000000) throw ParseError("partition: element out of range");
        cur.push_back(static_cast<int>(value));
        in_number = false;
        value = 0;
    };
    for (char c : text) {
        if (c >= '0' && c <= '9') {
            in_number = true;
            value = value * 10 + (c - '0');
            if (value > 1000000) throw ParseError("partition: element out of range");
        } else if (c == ',') {
            flush_number(true);
        } else if (c == '|') {
            flush_number(true);
            if (cur.empty()) throw ParseError("partition: empty block");
            blocks.push_back(std::move(cur));
            cur.clear();
        } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            // permissive about whitespace around separators
            if (in_number) flush_number(true);
        } else {
            throw ParseError(std::string("partition: unexpected character '") + c + "'");
        }
    }
    flush_number(false);
    if (cur.empty()) throw ParseError("partition: empty block");
    blocks.push_back(std::move(cur));
    try {
        return from_blocks(std::move(blocks));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

std::string Partition::format() const {
    std::string out;
    for (size_t bi = 0; bi < blocks_.size(); ++bi) {
        if (bi) out += '|';
        for (size_t i = 0; i < blocks_[bi].size(); ++i) {
            if (i) out += ',';
            out += std::to_string(blocks_[bi][i]);
        }
    }
    return out;
}

Partition Partition::discrete(int n) {
    std::vector<std::vector<int>> blocks;
    blocks.reserve(static_cast<size_t>(n));
    for (int i = 1; i <= n; ++i) blocks.push_back({i});
    return from_blocks_unchecked(std::move(blocks));
}

Partition Partition::single_block(int n) {
    std::vector<int> b(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) b[static_cast<size_t>(i)] = i + 1;
    return from_blocks_unchecked({std::move(b)});
}

PartitionStats Partition::stats() const {
    PartitionStats st;
    st.k = static_cast<int>(blocks_.size());
    for (const auto& b : blocks_) {
        if (b.size() >= 2) ++st.s;
        st.gap += b.back() - b.front() + 1 - static_cast<int>(b.size());
    }
    st.ell = st.k - st.s;
    return st;
}

int gap_of_set(std::span<const int> x) {
    if (x.empty()) throw std::invalid_argument("gap: empty set");
    int lo = x[0], hi = x[0];
    for (int e : x) {
        lo = std::min(lo, e);
        hi = std::max(hi, e);
    }
    return hi - lo + 1 - static_cast<int>(x.size());
}

int gap_of_partition(const Partition& p) {
    int g = 0;
    for (const auto& b : p.blocks()) g += gap_of_set(b);
    return g;
}

std::vector<std::vector<int>> standard_listing(const Partition& p,
                                               std::span<const int> perm) {
    const int n = p.n();
    if (static_cast<int>(perm.size()) != n)
        throw std::invalid_argument("standard_listing: permutation size mismatch");
    std::vector<int> pos(static_cast<size_t>(n) + 1, 0);
    for (int i = 0; i < n; ++i) pos[static_cast<size_t>(perm[static_cast<size_t>(i)])] = i;

    std::vector<std::pair<int, const std::vector<int>*>> big;
    std::vector<const std::vector<int>*> singles;
    for (const auto& b : p.blocks()) {
        if (b.size() >= 2) {
            int leftmost = n;
            for (int e : b) leftmost = std::min(leftmost, pos[static_cast<size_t>(e)]);
            big.emplace_back(leftmost, &b);
        } else {
            singles.push_back(&b);
        }
    }
    std::sort(big.begin(), big.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::vector<int>> out;
    out.reserve(p.blocks().size());
    for (const auto& [_, b] : big) out.push_back(*b);
    for (const auto* b : singles) out.push_back(*b); // already in min-element order
    return out;
}

void enumerate_all_partitions(int n, const std::function<void(const Partition&)>& emit,
                              const std::function<bool(const PartitionStats&)>& filter,
                              int guard) {
    if (n < 1) throw std::invalid_argument("enumerate_all_partitions: n must be >= 1");
    if (n > guard) throw GuardError("enumerate_all_partitions", n, guard);
    // Lexicographic restricted-growth sequences: a[0] = 0, a[i] <= 1 + max(a[0..i-1]).
    // mp[i] holds max(a[0..i-1]), so position i is incrementable iff a[i] <= mp[i].
    std::vector<int> a(static_cast<size_t>(n), 0);
    std::vector<int> mp(static_cast<size_t>(n), 0);
    for (;;) {
        Partition p = Partition::from_rgs(a);
        if (!filter || filter(p.stats())) emit(p);
        int i = n - 1;
        while (i >= 1 && a[static_cast<size_t>(i)] > mp[static_cast<size_t>(i)]) --i;
        if (i < 1) return;
        ++a[static_cast<size_t>(i)];
        for (int j = i + 1; j < n; ++j) {
            mp[static_cast<size_t>(j)] = std::max(mp[static_cast<size_t>(j) - 1],
                                                  a[static_cast<size_t>(j) - 1]);
            a[static_cast<size_t>(j)] = 0;
        }
    }
}

} // namespace ccx
