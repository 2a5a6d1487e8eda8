#include "ccx/coconvex.hpp"

#include <stdexcept>

namespace ccx {

namespace {

void require_collection(std::span<const Tree> trees) {
    if (trees.empty()) throw std::invalid_argument("coconvex: empty tree collection");
    const int n = trees.front().leaf_count();
    for (const auto& t : trees)
        if (t.leaf_count() != n || !t.has_standard_labels())
            throw std::invalid_argument("coconvex: mismatched leaf sets");
}

} // namespace

bool is_coconvex(std::span<const Tree> trees, const Partition& p) {
    require_collection(trees);
    for (const auto& t : trees)
        if (!is_convex(t, p)) return false;
    return true;
}

void coconvex_enumerate(std::span<const Tree> trees,
                        const std::function<void(const Partition&)>& emit,
                        const StatsFilter& filter, int guard) {
    require_collection(trees);
    std::vector<ConvexityTester> testers;
    testers.reserve(trees.size() - 1);
    for (size_t i = 1; i < trees.size(); ++i) testers.emplace_back(trees[i]);
    ConvexScratch scratch;
    enumerate_convex(
        trees.front(),
        [&](const Partition& p) {
            for (const auto& tester : testers)
                if (!tester.contains(p, scratch)) return;
            emit(p);
        },
        filter, guard);
}

std::vector<Partition> coconvex_list(std::span<const Tree> trees, const StatsFilter& filter,
                                     int guard) {
    std::vector<Partition> out;
    coconvex_enumerate(trees, [&](const Partition& p) { out.push_back(p); }, filter, guard);
    return out;
}

CountTable coconvex_counts(std::span<const Tree> trees, int guard) {
    std::map<std::pair<int, int>, Count> cells;
    coconvex_enumerate(
        trees,
        [&](const Partition& p) {
            auto st = p.stats();
            cells[{st.k, st.ell}] += 1;
        },
        nullptr, guard);
    return CountTable::from_cells(trees.front().leaf_count(), std::move(cells));
}

} // namespace ccx
