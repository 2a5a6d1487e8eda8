#include "ccx/expectation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ccx/errors.hpp"
#include "ccx/parallel.hpp"
#include "ccx/rng.hpp"

namespace ccx {

namespace {

// f[r][m] for all r <= r_max, m <= r/2, by the recurrence
// f(r, 1) = r!, f(r, m) = sum_{a=2}^{r-2(m-1)} a! f(r-a, m-1).
std::vector<std::vector<Count>> composition_weight_table(int r_max) {
    std::vector<Count> fact(static_cast<size_t>(r_max) + 1);
    fact[0] = 1;
    for (int i = 1; i <= r_max; ++i) fact[static_cast<size_t>(i)] = fact[static_cast<size_t>(i) - 1] * i;
    const int m_max = r_max / 2;
    std::vector<std::vector<Count>> f(static_cast<size_t>(r_max) + 1,
                                      std::vector<Count>(static_cast<size_t>(m_max) + 1));
    for (int r = 2; r <= r_max; ++r) f[static_cast<size_t>(r)][1] = fact[static_cast<size_t>(r)];
    for (int m = 2; m <= m_max; ++m)
        for (int r = 2 * m; r <= r_max; ++r) {
            Count sum = 0;
            for (int a = 2; a <= r - 2 * (m - 1); ++a)
                sum += fact[static_cast<size_t>(a)] * f[static_cast<size_t>(r) - static_cast<size_t>(a)][static_cast<size_t>(m) - 1];
            f[static_cast<size_t>(r)][static_cast<size_t>(m)] = std::move(sum);
        }
    return f;
}

} // namespace

Count composition_weight(int r, int m) {
    if (m < 1) throw std::invalid_argument("composition_weight: m must be >= 1");
    if (r < 2 * m) return 0; // infeasible
    auto f = composition_weight_table(r);
    return f[static_cast<size_t>(r)][static_cast<size_t>(m)];
}

Ratio exact_expected_nontrivial(int n, int guard) {
    if (n < 4) throw std::invalid_argument("exact_expected_nontrivial: requires n >= 4");
    if (n > guard) throw GuardError("exact_expected_nontrivial", n, guard);
    auto f = composition_weight_table(n);
    std::vector<Count> fact(static_cast<size_t>(n) + 1);
    fact[0] = 1;
    for (int i = 1; i <= n; ++i) fact[static_cast<size_t>(i)] = fact[static_cast<size_t>(i) - 1] * i;
    Ratio e = 0;
    for (int ell = 0; ell <= n - 4; ++ell) {
        const int r = n - ell;
        Ratio inner = 0;
        for (int m = 2; m <= r / 2; ++m)
            inner += Ratio(fact[static_cast<size_t>(m)] * f[static_cast<size_t>(r)][static_cast<size_t>(m)],
                           fact[static_cast<size_t>(r)]);
        e += Ratio(binomial(n, ell)) * inner;
    }
    return e;
}

namespace {

CharacterPack nontrivial_pack(int n, int guard) {
    Tree tid = caterpillar_tree(Caterpillar::identity(n));
    return pack_convex_characters(
        tid, [](const PartitionStats& s) { return s.s >= 2; }, guard);
}

std::uint32_t count_shared(const CharacterPack& pack, const int32_t* pos) {
    std::uint32_t tot = 0;
    for (size_t idx = 0; idx < pack.size(); ++idx)
        if (pack.spans_disjoint(idx, pos)) ++tot;
    return tot;
}

} // namespace

Ratio brute_force_expected_nontrivial(int n, int guard) {
    if (n < 4) throw std::invalid_argument("brute_force_expected_nontrivial: requires n >= 4");
    if (n > guard) throw GuardError("brute_force_expected_nontrivial", n, guard);
    CharacterPack pack = nontrivial_pack(n, guard);
    std::vector<int> perm(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<size_t>(i)] = i + 1;
    std::vector<int32_t> pos(static_cast<size_t>(n) + 1, 0);
    Count sum = 0;
    std::uint64_t perms = 0;
    do {
        for (int i = 0; i < n; ++i) pos[static_cast<size_t>(perm[static_cast<size_t>(i)])] = i;
        sum += count_shared(pack, pos.data());
        ++perms;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return Ratio(sum, perms);
}

Ratio McResult::se_squared() const {
    if (samples <= 1) return 0;
    Count num = Count(samples) * sum_sq - sum * sum;
    return Ratio(num, Count(samples) * samples * (Count(samples) - 1));
}

double McResult::std_error() const { return std::sqrt(se_squared().convert_to<double>()); }

bool McResult::within_se(const Ratio& reference, int z) const {
    Ratio diff = mean() - reference;
    return diff * diff <= Ratio(z * z) * se_squared();
}

McResult monte_carlo_expected(int n, std::uint64_t samples, std::uint64_t seed, int threads,
                              int guard) {
    if (n < 4) throw std::invalid_argument("monte_carlo_expected: requires n >= 4");
    if (samples < 1) throw std::invalid_argument("monte_carlo_expected: requires samples >= 1");
    if (n > guard) throw GuardError("monte_carlo_expected", n, guard);
    CharacterPack pack = nontrivial_pack(n, guard);

    const int workers = effective_threads(threads);
    std::vector<Count> sums(static_cast<size_t>(workers), Count(0));
    std::vector<Count> sums_sq(static_cast<size_t>(workers), Count(0));
    const std::uint64_t per = (samples + static_cast<std::uint64_t>(workers) - 1) /
                              static_cast<std::uint64_t>(workers);
    parallel_for_jobs(static_cast<size_t>(workers), workers, [&](size_t w) {
        const std::uint64_t begin = static_cast<std::uint64_t>(w) * per;
        const std::uint64_t end = std::min(samples, begin + per);
        std::vector<int> perm(static_cast<size_t>(n));
        std::vector<int32_t> pos(static_cast<size_t>(n) + 1, 0);
        Count sum = 0, sum_sq = 0;
        for (std::uint64_t s = begin; s < end; ++s) {
            // sample s is a pure function of (seed, s): schedule independence
            SplitMix64 rng(seed, s);
            for (int i = 0; i < n; ++i) perm[static_cast<size_t>(i)] = i + 1;
            for (int i = n - 1; i >= 1; --i) {
                int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
                std::swap(perm[static_cast<size_t>(i)], perm[static_cast<size_t>(j)]);
            }
            for (int i = 0; i < n; ++i) pos[static_cast<size_t>(perm[static_cast<size_t>(i)])] = i;
            std::uint64_t x = count_shared(pack, pos.data());
            sum += x;
            sum_sq += Count(x) * x;
        }
        sums[w] = std::move(sum);
        sums_sq[w] = std::move(sum_sq);
    });

    McResult r;
    r.samples = samples;
    r.sum = 0;
    r.sum_sq = 0;
    for (int w = 0; w < workers; ++w) {
        r.sum += sums[static_cast<size_t>(w)];
        r.sum_sq += sums_sq[static_cast<size_t>(w)];
    }
    return r;
}

std::vector<TrendRow> trend_table(int n_from, int n_to, int guard) {
    if (n_from < 4 || n_to < n_from) throw std::invalid_argument("trend_table: bad range");
    if (n_to > guard) throw GuardError("trend_table", n_to, guard);
    std::vector<TrendRow> rows;
    for (int n = n_from; n <= n_to; ++n) {
        TrendRow row;
        row.n = n;
        row.expectation = exact_expected_nontrivial(n, guard);
        row.ratio = row.expectation * Ratio(Count(n) * n, pow2(n));
        row.expectation_total = Ratio(pow2(n) - n) + row.expectation;
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace ccx
