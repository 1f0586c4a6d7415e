#include "recon/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <functional>
#include <limits>

#include "recon/geometry.hpp"

namespace recon {

namespace {

constexpr long long kInf = std::numeric_limits<long long>::max() / 4;

// Complete search over injections T -> S: process sources one at a time, state
// = subset of targets already covered.  Exact by induction over the source
// list; layer i holds optima using only the first i sources, so the witness
// can be peeled off backwards.  O(|S| 2^|T| |T|) time, O(|S| 2^|T|) memory.
OracleResult subset_dp_matching(int num_sources, int num_targets,
                                const std::function<long long(int, int)> &cost) {
    if (num_targets > num_sources) throw InfeasibleError("more targets than sources");
    if (num_targets > 16) throw InputError("oracle subset search limited to 16 targets");

    const int full = (1 << num_targets) - 1;
    std::vector<std::vector<long long>> layer(
        static_cast<size_t>(num_sources) + 1,
        std::vector<long long>(static_cast<size_t>(full) + 1, kInf));
    layer[0][0] = 0;
    for (int i = 0; i < num_sources; ++i) {
        layer[static_cast<size_t>(i) + 1] = layer[static_cast<size_t>(i)];  // source unused
        for (int m = 0; m <= full; ++m) {
            const long long base = layer[static_cast<size_t>(i)][static_cast<size_t>(m)];
            if (base >= kInf) continue;
            for (int j = 0; j < num_targets; ++j) {
                if (m & (1 << j)) continue;
                const long long cand = base + cost(i, j);
                long long &slot =
                    layer[static_cast<size_t>(i) + 1][static_cast<size_t>(m | (1 << j))];
                if (cand < slot) slot = cand;
            }
        }
    }
    if (layer[static_cast<size_t>(num_sources)][static_cast<size_t>(full)] >= kInf)
        throw InfeasibleError("no complete matching exists");

    OracleResult res;
    res.weight = layer[static_cast<size_t>(num_sources)][static_cast<size_t>(full)];
    std::vector<int> source_of(static_cast<size_t>(num_targets), -1);
    int mask = full;
    for (int i = num_sources; i >= 1; --i) {
        const long long here = layer[static_cast<size_t>(i)][static_cast<size_t>(mask)];
        if (layer[static_cast<size_t>(i) - 1][static_cast<size_t>(mask)] == here) continue;
        bool placed = false;
        for (int j = 0; j < num_targets && !placed; ++j) {
            if (!(mask & (1 << j))) continue;
            const long long prev =
                layer[static_cast<size_t>(i) - 1][static_cast<size_t>(mask ^ (1 << j))];
            if (prev < kInf && prev + cost(i - 1, j) == here) {
                source_of[static_cast<size_t>(j)] = i - 1;
                mask ^= 1 << j;
                placed = true;
            }
        }
        assert(placed);
    }
    assert(mask == 0);
    res.matching.resize(static_cast<size_t>(num_targets));
    for (int j = 0; j < num_targets; ++j)
        res.matching[static_cast<size_t>(j)] = {source_of[static_cast<size_t>(j)], j};
    return res;
}

}  // namespace

OracleResult brute_force_min_matching(const Geometry &g, const std::vector<Vertex> &S,
                                      const std::vector<Vertex> &T) {
    for (Vertex v : S)
        if (!g.in_bounds(v)) throw InputError("oracle: source out of bounds");
    for (Vertex v : T)
        if (!g.in_bounds(v)) throw InputError("oracle: target out of bounds");
    OracleResult res = subset_dp_matching(
        static_cast<int>(S.size()), static_cast<int>(T.size()), [&](int i, int j) {
            return static_cast<long long>(
                manhattan_distance(g, S[static_cast<size_t>(i)], T[static_cast<size_t>(j)]));
        });
    for (auto &[s, t] : res.matching) {
        s = S[static_cast<size_t>(s)];
        t = T[static_cast<size_t>(t)];
    }
    return res;
}

OracleResult hungarian_min_matching(const Geometry &g, const std::vector<Vertex> &S,
                                    const std::vector<Vertex> &T) {
    const int n = static_cast<int>(T.size());  // rows
    const int m = static_cast<int>(S.size());  // cols
    if (n > m) throw InfeasibleError("more targets than sources");
    for (Vertex v : S)
        if (!g.in_bounds(v)) throw InputError("oracle: source out of bounds");
    for (Vertex v : T)
        if (!g.in_bounds(v)) throw InputError("oracle: target out of bounds");
    OracleResult res;
    if (n == 0) return res;

    auto cost = [&](int row, int col) {
        return static_cast<long long>(
            manhattan_distance(g, T[static_cast<size_t>(row)], S[static_cast<size_t>(col)]));
    };

    // potentials-based shortest augmenting row insertion, 1-indexed scratch
    std::vector<long long> u(static_cast<size_t>(n) + 1, 0), v(static_cast<size_t>(m) + 1, 0);
    std::vector<int> match(static_cast<size_t>(m) + 1, 0);  // col -> row
    std::vector<int> way(static_cast<size_t>(m) + 1, 0);
    for (int i = 1; i <= n; ++i) {
        match[0] = i;
        int j0 = 0;
        std::vector<long long> minv(static_cast<size_t>(m) + 1, kInf);
        std::vector<char> used(static_cast<size_t>(m) + 1, 0);
        do {
            used[static_cast<size_t>(j0)] = 1;
            const int i0 = match[static_cast<size_t>(j0)];
            long long delta = kInf;
            int j1 = -1;
            for (int j = 1; j <= m; ++j) {
                if (used[static_cast<size_t>(j)]) continue;
                const long long cur =
                    cost(i0 - 1, j - 1) - u[static_cast<size_t>(i0)] - v[static_cast<size_t>(j)];
                if (cur < minv[static_cast<size_t>(j)]) {
                    minv[static_cast<size_t>(j)] = cur;
                    way[static_cast<size_t>(j)] = j0;
                }
                if (minv[static_cast<size_t>(j)] < delta) {
                    delta = minv[static_cast<size_t>(j)];
                    j1 = j;
                }
            }
            for (int j = 0; j <= m; ++j) {
                if (used[static_cast<size_t>(j)]) {
                    u[static_cast<size_t>(match[static_cast<size_t>(j)])] += delta;
                    v[static_cast<size_t>(j)] -= delta;
                } else {
                    minv[static_cast<size_t>(j)] -= delta;
                }
            }
            j0 = j1;
        } while (match[static_cast<size_t>(j0)] != 0);
        while (j0 != 0) {
            const int j1 = way[static_cast<size_t>(j0)];
            match[static_cast<size_t>(j0)] = match[static_cast<size_t>(j1)];
            j0 = j1;
        }
    }

    res.matching.resize(static_cast<size_t>(n));
    for (int j = 1; j <= m; ++j) {
        const int row = match[static_cast<size_t>(j)];
        if (row == 0) continue;
        res.matching[static_cast<size_t>(row) - 1] = {S[static_cast<size_t>(j) - 1],
                                                      T[static_cast<size_t>(row) - 1]};
        res.weight += cost(row - 1, j - 1);
    }
    return res;
}

long long brute_force_line_matching(const std::vector<long long> &sources,
                                    const std::vector<long long> &targets) {
    if (targets.empty()) return 0;
    OracleResult r = subset_dp_matching(
        static_cast<int>(sources.size()), static_cast<int>(targets.size()), [&](int i, int j) {
            return std::llabs(sources[static_cast<size_t>(i)] - targets[static_cast<size_t>(j)]);
        });
    return r.weight;
}

long long brute_force_line_matching_bounded(const std::vector<long long> &positions,
                                            const std::vector<int> &min_use,
                                            const std::vector<int> &max_use,
                                            const std::vector<long long> &targets) {
    const size_t p = positions.size();
    if (min_use.size() != p || max_use.size() != p)
        throw InputError("oracle: bounds size mismatch");
    long long min_total = 0, max_total = 0;
    for (size_t i = 0; i < p; ++i) {
        if (min_use[i] < 0 || max_use[i] < min_use[i])
            throw InputError("oracle: invalid usage bounds");
        min_total += min_use[i];
        max_total += max_use[i];
    }
    const int k = static_cast<int>(targets.size());
    if (min_total > k || max_total < k) return -1;

    std::vector<int> used(p, 0);
    long long best = -1;
    // assign targets left to right; deficit = outstanding mandatory uses
    std::function<void(int, long long, long long)> rec = [&](int t, long long acc,
                                                             long long deficit) {
        if (deficit > k - t) return;
        if (best >= 0 && acc >= best) return;
        if (t == k) {
            best = acc;
            return;
        }
        for (size_t i = 0; i < p; ++i) {
            if (used[i] >= max_use[i]) continue;
            const long long step = std::llabs(positions[i] - targets[static_cast<size_t>(t)]);
            ++used[i];
            rec(t + 1, acc + step, deficit - (used[i] <= min_use[i] ? 1 : 0));
            --used[i];
        }
    };
    rec(0, 0, min_total);
    return best;
}

EquivalenceVerdict check_equivalence(long long solver_weight, long long oracle_weight,
                                     bool expect_exact) {
    EquivalenceVerdict v;
    v.gap = solver_weight - oracle_weight;
    v.ok = expect_exact ? (v.gap == 0) : (v.gap >= 0);
    return v;
}

}  // namespace recon
