#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ccx/tree.hpp"

namespace ccx {

// A labeled caterpillar, encoded by the left-to-right order of its leaves
// below the backbone. Swapping the first two entries, swapping the last two,
// or reversing the whole permutation leaves the labeled tree unchanged, so
// each caterpillar corresponds to an orbit of permutations (size 8 for n >= 4).
class Caterpillar {
public:
    Caterpillar() = default;
    explicit Caterpillar(std::vector<int> perm); // validates a bijection on [n]
    static Caterpillar identity(int n);
    // Whitespace- or comma-separated values, e.g. "5 3 1 7 6 2 4".
    static Caterpillar parse(std::string_view text);

    int size() const { return static_cast<int>(perm_.size()); }
    const std::vector<int>& perm() const { return perm_; }
    int at(int position) const { return perm_[static_cast<size_t>(position)]; } // 0-based

    // pos[label] = 0-based position of `label`; index 0 unused.
    std::vector<int32_t> positions() const;

    // Lexicographically least member of the symmetry-orbit closure, computed
    // by expanding the orbit itself rather than by a closed-form rule.
    Caterpillar canonical() const;
    bool is_canonical() const { return *this == canonical(); }

    std::string to_string() const; // space separated

    bool operator==(const Caterpillar& o) const { return perm_ == o.perm_; }
    bool operator!=(const Caterpillar& o) const { return perm_ != o.perm_; }
    bool operator<(const Caterpillar& o) const { return perm_ < o.perm_; }

private:
    std::vector<int> perm_;
};

Caterpillar canonical_caterpillar(std::span<const int> perm);

// Full symmetry orbit (deduplicated, sorted); size 8 exactly when n >= 4.
std::vector<Caterpillar> caterpillar_orbit(const Caterpillar& c);

// The tree T_pi: backbone of n-2 internal vertices, leaves attached in
// permutation order (two at each end).
Tree caterpillar_tree(const Caterpillar& c);

// Canonical permutation if removing all leaves of `tree` leaves a path,
// nullopt otherwise.
std::optional<Caterpillar> as_permutation(const Tree& tree);

// Uniform over all n! permutations (hence uniform over the n!/8 labeled
// caterpillars for n >= 4).
Caterpillar random_permutation(int n, std::uint64_t seed);

inline constexpr int kCaterpillarEnumGuard = 11;

// Every canonical caterpillar permutation exactly once, in lexicographic
// order: n!/8 of them for n >= 4, one for n <= 3.
void enumerate_canonical_caterpillars(int n, const std::function<void(const Caterpillar&)>& emit,
                                      int guard = kCaterpillarEnumGuard);

std::uint64_t canonical_caterpillar_count(int n);

} // namespace ccx
