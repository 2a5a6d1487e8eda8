#pragma once

#include <span>
#include <vector>

#include "ccx/convexity.hpp"

namespace ccx {

// Convex on every tree of the collection (conjunction of is_convex).
bool is_coconvex(std::span<const Tree> trees, const Partition& p);

// Streams P(T_1) ∩ ... ∩ P(T_t), each member once: enumerate the first tree,
// keep what the remaining trees accept (interval fast path for caterpillars).
void coconvex_enumerate(std::span<const Tree> trees,
                        const std::function<void(const Partition&)>& emit,
                        const StatsFilter& filter = nullptr, int guard = kConvexEnumGuard);

std::vector<Partition> coconvex_list(std::span<const Tree> trees,
                                     const StatsFilter& filter = nullptr,
                                     int guard = kConvexEnumGuard);

// Enumerate-and-filter census of the intersection.
CountTable coconvex_counts(std::span<const Tree> trees, int guard = kConvexEnumGuard);

} // namespace ccx
