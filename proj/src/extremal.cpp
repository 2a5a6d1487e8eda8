#include "ccx/extremal.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <memory>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "ccx/errors.hpp"
#include "ccx/parallel.hpp"

namespace ccx {

// --- Exhaustive scan over canonical caterpillars -----------------------------------

namespace {

constexpr std::uint32_t kNoValue = std::numeric_limits<std::uint32_t>::max();

struct KState {
    std::uint32_t min = kNoValue;
    std::uint64_t count = 0;
    std::vector<std::uint32_t> wit; // canonical-permutation indices, ascending

    void observe(std::uint32_t value, std::uint32_t pi_idx, size_t cap) {
        if (value < min) {
            min = value;
            count = 1;
            wit.assign(1, pi_idx);
        } else if (value == min) {
            ++count;
            if (wit.size() < cap) wit.push_back(pi_idx);
        }
    }

    void merge(const KState& o, size_t cap) {
        if (o.min < min) {
            min = o.min;
            count = o.count;
            wit = o.wit;
            if (wit.size() > cap) wit.resize(cap);
        } else if (o.min == min && o.min != kNoValue) {
            count += o.count;
            for (std::uint32_t w : o.wit) {
                if (wit.size() >= cap) break;
                wit.push_back(w);
            }
        }
    }
};

struct ScanState {
    std::vector<KState> per_k; // index 0..n
    KState total;
    std::uint64_t examined = 0;
};

nlohmann::json kstate_to_json(const KState& s) {
    return {{"min", s.min}, {"count", s.count}, {"wit", s.wit}};
}

KState kstate_from_json(const nlohmann::json& j) {
    KState s;
    s.min = j.at("min").get<std::uint32_t>();
    s.count = j.at("count").get<std::uint64_t>();
    s.wit = j.at("wit").get<std::vector<std::uint32_t>>();
    return s;
}

void write_checkpoint(const std::string& path, int n, std::uint64_t chunk_size, int witness_cap,
                      std::uint64_t merged_chunks, const ScanState& state) {
    nlohmann::json j;
    j["schema"] = "ccx.scan.v1";
    j["n"] = n;
    j["chunk_size"] = chunk_size;
    j["witness_cap"] = witness_cap;
    j["merged_chunks"] = merged_chunks;
    j["examined"] = state.examined;
    auto& pk = j["per_k"] = nlohmann::json::array();
    for (size_t k = 0; k < state.per_k.size(); ++k) {
        auto row = kstate_to_json(state.per_k[k]);
        row["k"] = k;
        pk.push_back(std::move(row));
    }
    j["total"] = kstate_to_json(state.total);
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cannot write checkpoint: " + tmp);
        out << j.dump() << '\n';
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot move checkpoint into place: " + path);
}

// Returns merged chunk count, or 0 when no usable checkpoint exists.
std::uint64_t load_checkpoint(const std::string& path, int n, std::uint64_t chunk_size,
                              int witness_cap, ScanState& state) {
    std::ifstream in(path);
    if (!in) return 0;
    nlohmann::json j;
    in >> j;
    if (j.at("schema") != "ccx.scan.v1" || j.at("n").get<int>() != n ||
        j.at("chunk_size").get<std::uint64_t>() != chunk_size ||
        j.at("witness_cap").get<int>() != witness_cap)
        throw std::runtime_error("checkpoint does not match this search: " + path);
    state.examined = j.at("examined").get<std::uint64_t>();
    state.per_k.assign(static_cast<size_t>(n) + 1, KState{});
    for (const auto& row : j.at("per_k"))
        state.per_k[row.at("k").get<size_t>()] = kstate_from_json(row);
    state.total = kstate_from_json(j.at("total"));
    return j.at("merged_chunks").get<std::uint64_t>();
}

} // namespace

ExtremalTable exhaustive_scan(int n, const ScanOptions& opts) {
    if (n < 4) throw std::invalid_argument("exhaustive_scan: requires n >= 4");
    if (n > opts.guard) throw GuardError("exhaustive_scan", n, opts.guard);
    if (n > kExhaustiveHardCap) throw GuardError("exhaustive_scan (hard cap)", n, kExhaustiveHardCap);
    const size_t cap = static_cast<size_t>(std::max(opts.witness_cap, 0));

    // All canonical permutations, flat (n small; at n=11 this is ~55 MB).
    std::vector<std::int8_t> flat;
    flat.reserve(static_cast<size_t>(canonical_caterpillar_count(n)) * static_cast<size_t>(n));
    enumerate_canonical_caterpillars(
        n,
        [&](const Caterpillar& c) {
            for (int v : c.perm()) flat.push_back(static_cast<std::int8_t>(v));
        },
        kExhaustiveHardCap);
    const std::uint64_t total_perms = flat.size() / static_cast<size_t>(n);

    // Nontrivial convex characters of the standard caterpillar; the trivial
    // ones are shared by every pair and added back at the end.
    Tree tid = caterpillar_tree(Caterpillar::identity(n));
    CharacterPack pack =
        pack_convex_characters(tid, [](const PartitionStats& s) { return s.s >= 2; });

    const std::uint64_t chunk_size = 2048;
    const std::uint64_t n_chunks = (total_perms + chunk_size - 1) / chunk_size;

    ScanState global;
    global.per_k.assign(static_cast<size_t>(n) + 1, KState{});
    std::uint64_t start_chunk = 0;
    if (!opts.checkpoint_path.empty())
        start_chunk =
            load_checkpoint(opts.checkpoint_path, n, chunk_size, opts.witness_cap, global);
    if (start_chunk > n_chunks) throw std::runtime_error("checkpoint beyond search space");

    std::vector<std::unique_ptr<ScanState>> results(n_chunks - start_chunk);
    std::mutex merge_mu;
    std::uint64_t merged = start_chunk;
    std::uint64_t merged_since_checkpoint = 0;

    parallel_for_jobs(n_chunks - start_chunk, opts.threads, [&](size_t job) {
        const std::uint64_t chunk = start_chunk + job;
        const std::uint64_t begin = chunk * chunk_size;
        const std::uint64_t end = std::min(total_perms, begin + chunk_size);
        auto local = std::make_unique<ScanState>();
        local->per_k.assign(static_cast<size_t>(n) + 1, KState{});
        std::vector<std::int32_t> pos(static_cast<size_t>(n) + 1, 0);
        std::vector<std::uint32_t> cnt(static_cast<size_t>(n) + 1, 0);
        for (std::uint64_t p = begin; p < end; ++p) {
            const std::int8_t* perm = flat.data() + p * static_cast<size_t>(n);
            for (int i = 0; i < n; ++i) pos[static_cast<size_t>(perm[i])] = i;
            std::fill(cnt.begin(), cnt.end(), 0);
            std::uint32_t tot = 0;
            for (size_t idx = 0; idx < pack.size(); ++idx) {
                if (pack.spans_disjoint(idx, pos.data())) {
                    ++cnt[static_cast<size_t>(pack.k_of[idx])];
                    ++tot;
                }
            }
            const auto pi_idx = static_cast<std::uint32_t>(p);
            for (int k = 1; k <= n; ++k)
                local->per_k[static_cast<size_t>(k)].observe(cnt[static_cast<size_t>(k)], pi_idx,
                                                             cap);
            local->total.observe(tot, pi_idx, cap);
        }
        local->examined = end - begin;

        std::lock_guard<std::mutex> lock(merge_mu);
        results[job] = std::move(local);
        while (merged < n_chunks && results[merged - start_chunk]) {
            ScanState& r = *results[merged - start_chunk];
            for (int k = 1; k <= n; ++k)
                global.per_k[static_cast<size_t>(k)].merge(r.per_k[static_cast<size_t>(k)], cap);
            global.total.merge(r.total, cap);
            global.examined += r.examined;
            results[merged - start_chunk].reset();
            ++merged;
            ++merged_since_checkpoint;
            if (!opts.checkpoint_path.empty() && opts.checkpoint_every > 0 &&
                (merged_since_checkpoint >= opts.checkpoint_every || merged == n_chunks)) {
                write_checkpoint(opts.checkpoint_path, n, chunk_size, opts.witness_cap, merged,
                                 global);
                merged_since_checkpoint = 0;
            }
        }
    });

    if (merged != n_chunks) throw std::logic_error("exhaustive_scan: incomplete merge");

    auto materialize = [&](const KState& s, std::optional<int> k, const Count& base) {
        ExtremalResult r;
        r.n = n;
        r.k = k;
        r.value = base + s.min;
        r.witness_count = s.count;
        r.search_space = global.examined;
        for (std::uint32_t w : s.wit) {
            const std::int8_t* perm = flat.data() + static_cast<size_t>(w) * static_cast<size_t>(n);
            r.witnesses.emplace_back(std::vector<int>(perm, perm + n));
        }
        return r;
    };

    ExtremalTable table;
    table.n = n;
    table.per_k.resize(static_cast<size_t>(n) + 1);
    for (int k = 1; k <= n; ++k) {
        Count trivial = k <= n - 1 ? binomial(n, k - 1) : Count(1);
        table.per_k[static_cast<size_t>(k)] =
            materialize(global.per_k[static_cast<size_t>(k)], k, trivial);
    }
    table.total = materialize(global.total, std::nullopt, pow2(n) - n);
    return table;
}

ExtremalResult exhaustive_cnk(int n, int k, const ScanOptions& opts) {
    if (k < 1 || k > n) throw std::invalid_argument("exhaustive_cnk: k out of range");
    return exhaustive_scan(n, opts).per_k[static_cast<size_t>(k)];
}

ExtremalResult exhaustive_cn(int n, const ScanOptions& opts) {
    return exhaustive_scan(n, opts).total;
}

// --- Constructions -----------------------------------------------------------------

Caterpillar thm42_permutation(int n) {
    if (n < 4) throw std::invalid_argument("thm42_permutation: requires n >= 4");
    const int c = (2 * n + 2) / 3; // ceil(2n/3)
    std::vector<int> p;
    p.reserve(static_cast<size_t>(n));
    int first_odd = c % 2 == 1 ? c : c - 1;
    for (int v = first_odd; v >= 1; v -= 2) p.push_back(v); // odds of [1,c], descending
    int start = c % 2 == 0 ? c + 1 : c + 2;
    for (int v = start; v <= n; v += 2) p.push_back(v); // odds of (c,n], ascending
    int last_even = n % 2 == 0 ? n : n - 1;
    for (int v = last_even; v >= c + 1; v -= 2) p.push_back(v); // evens of (c,n], descending
    for (int v = 2; v <= c; v += 2) p.push_back(v);             // evens of [1,c], ascending
    return Caterpillar(std::move(p));
}

std::vector<Partition> thm31_witnesses(const Caterpillar& pi, int ell) {
    const int n = pi.size();
    if (n % 4 != 0 || n < 8)
        throw std::invalid_argument("thm31_witnesses: n must be a multiple of 4, n >= 8");
    if (ell < n / 2 || ell > n - 4)
        throw std::invalid_argument("thm31_witnesses: requires n/2 <= ell <= n-4");

    const int half = n / 2, quarter = n / 4;
    std::vector<char> in_x(static_cast<size_t>(n) + 1, 0);
    for (int i = 0; i < half; ++i) in_x[static_cast<size_t>(pi.at(i))] = 1;
    std::vector<int> ax, bx, ay, by;
    for (int v = 1; v <= n; ++v) {
        bool a_side = v <= half;
        if (in_x[static_cast<size_t>(v)])
            (a_side ? ax : bx).push_back(v);
        else
            (a_side ? ay : by).push_back(v);
    }
    // Pick the heavier diagonal; on a tie, the (A∩X, B∩Y) branch.
    const bool first = ax.size() + by.size() >= ay.size() + bx.size();
    const std::vector<int>& s1 = first ? ax : ay;
    const std::vector<int>& s2 = first ? by : bx;

    const int t = n - ell;
    std::vector<Partition> out;
    auto for_each_subset = [](const std::vector<int>& set, int r,
                              const std::function<void(const std::vector<int>&)>& fn) {
        std::vector<int> idx(static_cast<size_t>(r));
        for (int i = 0; i < r; ++i) idx[static_cast<size_t>(i)] = i;
        std::vector<int> subset(static_cast<size_t>(r));
        const int m = static_cast<int>(set.size());
        for (;;) {
            for (int i = 0; i < r; ++i)
                subset[static_cast<size_t>(i)] = set[static_cast<size_t>(idx[static_cast<size_t>(i)])];
            fn(subset);
            int i = r - 1;
            while (i >= 0 && idx[static_cast<size_t>(i)] == m - r + i) --i;
            if (i < 0) return;
            ++idx[static_cast<size_t>(i)];
            for (int j = i + 1; j < r; ++j)
                idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j) - 1] + 1;
        }
    };

    std::vector<char> used(static_cast<size_t>(n) + 1, 0);
    const int lo = std::max(2, t - quarter);
    const int hi = std::min(t - 2, quarter);
    for (int i = lo; i <= hi; ++i) {
        if (i > static_cast<int>(s1.size()) || t - i > static_cast<int>(s2.size())) continue;
        for_each_subset(s1, i, [&](const std::vector<int>& z1) {
            for_each_subset(s2, t - i, [&](const std::vector<int>& z2) {
                std::vector<std::vector<int>> blocks{z1, z2};
                std::fill(used.begin(), used.end(), 0);
                for (int v : z1) used[static_cast<size_t>(v)] = 1;
                for (int v : z2) used[static_cast<size_t>(v)] = 1;
                for (int v = 1; v <= n; ++v)
                    if (!used[static_cast<size_t>(v)]) blocks.push_back({v});
                out.push_back(Partition::from_blocks_unchecked(std::move(blocks)));
            });
        });
    }
    return out;
}

Count thm31_floor(int n, int ell) {
    if (n % 4 != 0 || n < 8 || ell < n / 2 || ell > n - 4) return 0;
    const int quarter = n / 4, t = n - ell;
    Count sum = 0;
    for (int i = std::max(2, t - quarter); i <= std::min(t - 2, quarter); ++i)
        sum += binomial(quarter, i) * binomial(quarter, t - i);
    return sum;
}

std::vector<std::vector<int>> thm62_blocks(int n, int m) {
    if (m < 3 || m >= n) throw std::invalid_argument("thm62: requires 3 <= m < n");
    std::vector<std::vector<int>> blocks(static_cast<size_t>(m));
    for (int v = 1; v <= n; ++v) blocks[static_cast<size_t>(v % m)].push_back(v);
    return blocks;
}

std::vector<Caterpillar> thm62_family(int n, int m) {
    auto blocks = thm62_blocks(n, m);
    auto concat = [&](const std::vector<std::vector<int>>& parts) {
        std::vector<int> p;
        p.reserve(static_cast<size_t>(n));
        for (const auto& b : parts) p.insert(p.end(), b.begin(), b.end());
        return Caterpillar(std::move(p));
    };
    std::vector<Caterpillar> family;
    family.push_back(Caterpillar::identity(n));
    family.push_back(concat(blocks));
    for (int i = 0; i < m; ++i) {
        auto parts = blocks;
        std::reverse(parts[static_cast<size_t>(i)].begin(), parts[static_cast<size_t>(i)].end());
        family.push_back(concat(parts));
    }
    for (int i = 1; i <= m - 2; ++i) {
        auto parts = blocks;
        std::swap(parts[0], parts[static_cast<size_t>(i)]);
        family.push_back(concat(parts));
    }
    for (int i = 1; i <= m - 2; ++i) {
        auto parts = blocks;
        std::swap(parts[static_cast<size_t>(i)], parts[static_cast<size_t>(m) - 1]);
        family.push_back(concat(parts));
    }
    return family;
}

// --- Agreement subsequences ----------------------------------------------------------

namespace {

// Indices of one longest strictly monotone subsequence; deterministic.
std::vector<int> monotone_indices(const std::vector<int>& v, bool decreasing) {
    const int n = static_cast<int>(v.size());
    auto before = [&](int a, int b) { return decreasing ? a > b : a < b; };
    std::vector<int> tails, prev(static_cast<size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        int lo = 0, hi = static_cast<int>(tails.size());
        while (lo < hi) {
            int mid = (lo + hi) / 2;
            if (before(v[static_cast<size_t>(tails[static_cast<size_t>(mid)])],
                       v[static_cast<size_t>(i)]))
                lo = mid + 1;
            else
                hi = mid;
        }
        if (lo > 0) prev[static_cast<size_t>(i)] = tails[static_cast<size_t>(lo) - 1];
        if (lo == static_cast<int>(tails.size()))
            tails.push_back(i);
        else
            tails[static_cast<size_t>(lo)] = i;
    }
    std::vector<int> idx;
    for (int cur = tails.back(); cur != -1; cur = prev[static_cast<size_t>(cur)])
        idx.push_back(cur);
    std::reverse(idx.begin(), idx.end());
    return idx;
}

} // namespace

std::vector<int> multi_lis_agreement(std::span<const Caterpillar> perms) {
    if (perms.empty()) throw std::invalid_argument("multi_lis_agreement: no permutations");
    const int n = perms.front().size();
    for (const auto& p : perms)
        if (p.size() != n) throw std::invalid_argument("multi_lis_agreement: mismatched sizes");
    // seq holds the surviving labels in the shared caterpillar order.
    std::vector<int> seq = perms.front().perm();
    for (size_t j = 1; j < perms.size(); ++j) {
        auto pos = perms[j].positions();
        std::vector<int> vals(seq.size());
        for (size_t i = 0; i < seq.size(); ++i)
            vals[i] = pos[static_cast<size_t>(seq[i])];
        auto inc = monotone_indices(vals, false);
        auto dec = monotone_indices(vals, true);
        const auto& pick = inc.size() >= dec.size() ? inc : dec;
        std::vector<int> next;
        next.reserve(pick.size());
        for (int i : pick) next.push_back(seq[static_cast<size_t>(i)]);
        seq = std::move(next);
    }
    std::sort(seq.begin(), seq.end());
    return seq;
}

std::vector<int> lis_agreement(const Caterpillar& pi1, const Caterpillar& pi2) {
    const Caterpillar pair[2] = {pi1, pi2};
    return multi_lis_agreement(pair);
}

// --- Bound tables ---------------------------------------------------------------------

BoundTable bound_tables(int n, const ExtremalTable* exhaustive) {
    if (n < 4) throw std::invalid_argument("bound_tables: requires n >= 4");
    BoundTable table;
    table.n = n;
    const bool admissible = n % 4 == 0 && n >= 8;
    Count extras = 0;
    for (int k = 1; k <= n; ++k) {
        BoundRow row;
        row.k = k;
        row.trivial_floor = k <= n - 1 ? binomial(n, k - 1) : Count(1);
        if (admissible && k - 2 >= n / 2 && k - 2 <= n - 4)
            row.bound31 = row.trivial_floor + thm31_floor(n, k - 2);
        if (admissible && 4 * k >= 3 * n && k <= n - 2) {
            Ratio factor = Ratio(1) - Ratio(4, n - k + 3);
            Ratio exact = Ratio(binomial(n, k - 1)) + factor * Ratio(binomial(n / 2, n - k + 2));
            row.bound32_exact = exact;
            row.bound32 = ceil_div(numerator(exact), denominator(exact));
        }
        Count best = row.trivial_floor;
        if (row.bound31) best = std::max(best, *row.bound31);
        if (row.bound32) best = std::max(best, *row.bound32);
        if (k <= n - 1) extras += best - row.trivial_floor;
        if (exhaustive) row.exhaustive = exhaustive->per_k[static_cast<size_t>(k)].value;
        table.rows.push_back(std::move(row));
    }
    table.cn_floor = pow2(n) - n + extras;
    if (exhaustive) table.cn_exhaustive = exhaustive->total.value;
    return table;
}

void BoundTable::write_csv(std::ostream& out) const {
    out << "# schema=ccx.bounds.v1\n";
    out << "n,k,value,bound_31,bound_32,witness_count\n";
    for (const auto& row : rows) {
        out << n << ',' << row.k << ',';
        if (row.exhaustive) out << *row.exhaustive;
        out << ',';
        if (row.bound31) out << *row.bound31;
        out << ',';
        if (row.bound32) out << *row.bound32;
        out << ',';
        out << '\n';
    }
    out << n << ",total,";
    if (cn_exhaustive) out << *cn_exhaustive;
    out << ',' << cn_floor << ",,\n";
}

std::string BoundTable::to_json() const {
    nlohmann::json j;
    j["schema"] = "ccx.bounds.v1";
    j["n"] = n;
    auto& rows_j = j["rows"] = nlohmann::json::array();
    for (const auto& row : rows) {
        nlohmann::json r{{"k", row.k}, {"trivial_floor", row.trivial_floor.str()}};
        if (row.bound31) r["bound_31"] = row.bound31->str();
        if (row.bound32) {
            r["bound_32"] = row.bound32->str();
            r["bound_32_exact"] = row.bound32_exact->str();
        }
        if (row.exhaustive) r["exhaustive"] = row.exhaustive->str();
        rows_j.push_back(std::move(r));
    }
    j["cn_floor"] = cn_floor.str();
    if (cn_exhaustive) j["cn_exhaustive"] = cn_exhaustive->str();
    return j.dump();
}

// --- All binary trees at tiny n -----------------------------------------------------

std::vector<Tree> all_labeled_topologies(int n, int guard) {
    if (n < 2) throw std::invalid_argument("all_labeled_topologies: n must be >= 2");
    if (n > guard) throw GuardError("all_labeled_topologies", n, guard);
    struct Edge {
        int u, v;
    };
    std::vector<Tree> out;
    std::vector<Edge> edges{{1, 2}};
    auto build = [n](const std::vector<Edge>& es) {
        Tree t;
        int max_id = 0;
        for (const auto& e : es) max_id = std::max({max_id, e.u, e.v});
        std::vector<int> vid(static_cast<size_t>(max_id) + 1, -1);
        for (int lbl = 1; lbl <= n; ++lbl) vid[static_cast<size_t>(lbl)] = t.add_vertex(lbl);
        for (int v = n + 1; v <= max_id; ++v) vid[static_cast<size_t>(v)] = t.add_vertex(0);
        for (const auto& e : es)
            t.add_edge(vid[static_cast<size_t>(e.u)], vid[static_cast<size_t>(e.v)]);
        t.validate();
        return t;
    };
    // depth-first leaf insertion; each labeled topology arises exactly once
    std::function<void(std::vector<Edge>&, int, int)> gen = [&](std::vector<Edge>& es, int leaf,
                                                                int next_internal) {
        if (leaf > n) {
            out.push_back(build(es));
            return;
        }
        const size_t count = es.size();
        for (size_t i = 0; i < count; ++i) {
            Edge old = es[i];
            es[i] = {old.u, next_internal};
            es.push_back({next_internal, old.v});
            es.push_back({next_internal, leaf});
            gen(es, leaf + 1, next_internal + 1);
            es.pop_back();
            es.pop_back();
            es[i] = old;
        }
    };
    if (n == 2) {
        out.push_back(build(edges));
        return out;
    }
    gen(edges, 3, n + 1);
    return out;
}

namespace {

std::string shape_string(const Tree& t, int v, int parent) {
    if (t.is_leaf(v)) return "()";
    std::vector<std::string> kids;
    for (int32_t w : t.adjacency()[static_cast<size_t>(v)])
        if (w != parent) kids.push_back(shape_string(t, static_cast<int>(w), v));
    std::sort(kids.begin(), kids.end());
    std::string out = "(";
    for (const auto& k : kids) out += k;
    out += ')';
    return out;
}

std::string canonical_shape(const Tree& t) {
    std::string best;
    for (int v = 0; v < t.vertex_count(); ++v) {
        std::string s = shape_string(t, v, -1);
        if (best.empty() || s < best) best = std::move(s);
    }
    return best;
}

} // namespace

SnkTable exhaustive_snk(int n, int guard) {
    if (n < 4) throw std::invalid_argument("exhaustive_snk: requires n >= 4");
    if (n > guard) throw GuardError("exhaustive_snk", n, guard);
    auto topologies = all_labeled_topologies(n);

    // Relabeling both trees at once is free, so the first tree only needs one
    // representative per unlabeled shape.
    std::vector<const Tree*> reps;
    {
        std::set<std::string> seen;
        for (const auto& t : topologies)
            if (seen.insert(canonical_shape(t)).second) reps.push_back(&t);
    }

    SnkTable table;
    table.n = n;
    table.by_k.assign(static_cast<size_t>(n) + 1, Count(-1));
    table.total = -1;
    std::vector<std::uint32_t> cnt(static_cast<size_t>(n) + 1, 0);
    for (const Tree* rep : reps) {
        auto chars = enumerate_convex_list(*rep);
        for (const auto& f : topologies) {
            ConvexityTester tester(f);
            ConvexScratch scratch;
            std::fill(cnt.begin(), cnt.end(), 0);
            std::uint32_t tot = 0;
            for (const auto& p : chars)
                if (tester.contains(p, scratch)) {
                    ++cnt[static_cast<size_t>(p.blocks().size())];
                    ++tot;
                }
            for (int k = 1; k <= n; ++k) {
                Count c = cnt[static_cast<size_t>(k)];
                if (table.by_k[static_cast<size_t>(k)] < 0 || c < table.by_k[static_cast<size_t>(k)])
                    table.by_k[static_cast<size_t>(k)] = c;
            }
            if (table.total < 0 || Count(tot) < table.total) table.total = tot;
        }
    }
    return table;
}

} // namespace ccx
