#include "recon/exact1d.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <queue>

namespace recon {

namespace {

constexpr long long kInf = std::numeric_limits<long long>::max() / 4;

// ---------------------------------------------------------------------------
// Exact assignment cost on a line in O(E log E): maintain the convex
// piecewise-linear g(x) = min cost with running balance x (picked-up tokens
// minus served targets), as breakpoint heaps with multiplicities.  Steep
// "walls" pin the initial state to x = 0; a gap of length d adds d·|x|
// (carrying |x| tokens across it), a source flattens (pick up or skip), a
// target shifts the function left (one unit consumed or owed).
// ---------------------------------------------------------------------------

class CostCertifier {
  public:
    explicit CostCertifier(long long wall) {
        left_.push({0, wall});
        right_.push({0, wall});
    }

    // add cnt·|x - a|
    void add_abs(long long a, long long cnt) {
        add_left_hinge(a, cnt);
        add_right_hinge(a, cnt);
    }

    void source(long long multiplicity) { off_right_ += multiplicity; }

    void target(long long count) {
        off_left_ -= count;
        off_right_ -= count;
    }

    // min over x >= 0 (leftover balance is free, debt is infeasible)
    long long finish() {
        long long ans = min_value_;
        while (!right_.empty() && right_top() < 0) {
            const auto [raw, cnt] = right_.top();
            right_.pop();
            ans += cnt * (0 - (raw + off_right_));
        }
        return ans;
    }

  private:
    // (raw position, count); actual position = raw + offset
    using Entry = std::pair<long long, long long>;

    long long left_top() const { return left_.top().first + off_left_; }
    long long right_top() const { return right_.top().first + off_right_; }

    // add cnt·(a - x)+ : rising to the left of a
    void add_left_hinge(long long a, long long cnt) {
        long long remaining = cnt, moved = 0;
        while (remaining > 0 && !right_.empty() && right_top() < a) {
            auto [raw, c] = right_.top();
            right_.pop();
            const long long pos = raw + off_right_;
            const long long m = std::min(c, remaining);
            min_value_ += m * (a - pos);
            left_.push({pos - off_left_, m});
            if (c > m) right_.push({raw, c - m});
            remaining -= m;
            moved += m;
        }
        if (moved > 0) right_.push({a - off_right_, moved});
        if (remaining > 0) left_.push({a - off_left_, remaining});
    }

    // add cnt·(x - a)+ : rising to the right of a
    void add_right_hinge(long long a, long long cnt) {
        long long remaining = cnt, moved = 0;
        while (remaining > 0 && !left_.empty() && left_top() > a) {
            auto [raw, c] = left_.top();
            left_.pop();
            const long long pos = raw + off_left_;
            const long long m = std::min(c, remaining);
            min_value_ += m * (pos - a);
            right_.push({pos - off_right_, m});
            if (c > m) left_.push({raw, c - m});
            remaining -= m;
            moved += m;
        }
        if (moved > 0) left_.push({a - off_left_, moved});
        if (remaining > 0) right_.push({a - off_right_, remaining});
    }

    std::priority_queue<Entry> left_;  // max-heap over raw position
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> right_;  // min-heap
    long long off_left_ = 0, off_right_ = 0;
    long long min_value_ = 0;
};

long long certifier_cost(const std::vector<long long> &sources,
                         const std::vector<long long> &targets) {
    if (targets.empty()) return 0;
    if (sources.size() < targets.size()) throw InfeasibleError("fewer sources than targets");
    const long long lo = std::min(sources.front(), targets.front());
    const long long hi = std::max(sources.back(), targets.back());
    const long long span = hi - lo + 1;
    CostCertifier cert(span * span + 2);

    size_t si = 0, ti = 0;
    long long prev = lo;
    while (si < sources.size() || ti < targets.size()) {
        const long long ps = si < sources.size() ? sources[si] : kInf;
        const long long pt = ti < targets.size() ? targets[ti] : kInf;
        const long long pos = std::min(ps, pt);
        if (pos > prev) cert.add_abs(0, pos - prev);
        prev = pos;
        long long n_src = 0, n_tgt = 0;
        while (si < sources.size() && sources[si] == pos) {
            ++n_src;
            ++si;
        }
        while (ti < targets.size() && targets[ti] == pos) {
            ++n_tgt;
            ++ti;
        }
        if (n_src > 0) cert.source(n_src);
        if (n_tgt > 0) cert.target(n_tgt);
    }
    return cert.finish();
}

// ---------------------------------------------------------------------------
// Windowed block dynamic program: sorted source positions serve consecutive
// runs of sorted targets (an optimal structure by the exchange argument), with
// run lengths bounded per source.  Sliding-window minimum gives O(P·k).
// ---------------------------------------------------------------------------

struct DpSource {
    long long pos = 0;
    int min_use = 0;
    int max_use = 0;
};

struct DpResult {
    long long weight = 0;
    std::vector<int> use;  // per source
};

std::optional<DpResult> window_dp(const std::vector<DpSource> &src,
                                  const std::vector<long long> &tgt) {
    const int p = static_cast<int>(src.size());
    const int k = static_cast<int>(tgt.size());
    std::vector<long long> prev(static_cast<size_t>(k) + 1, kInf), cur(static_cast<size_t>(k) + 1);
    prev[0] = 0;
    std::vector<uint32_t> choice(static_cast<size_t>(p) * (static_cast<size_t>(k) + 1), 0);
    std::vector<long long> c(static_cast<size_t>(k) + 1, 0);  // prefix |pos - t|

    for (int i = 0; i < p; ++i) {
        const long long pos = src[static_cast<size_t>(i)].pos;
        const int lo = src[static_cast<size_t>(i)].min_use;
        const int hi = src[static_cast<size_t>(i)].max_use;
        for (int j = 1; j <= k; ++j)
            c[static_cast<size_t>(j)] =
                c[static_cast<size_t>(j) - 1] + std::llabs(pos - tgt[static_cast<size_t>(j) - 1]);

        std::fill(cur.begin(), cur.end(), kInf);
        std::deque<int> window;  // candidate j' with increasing prev[j'] - c[j']
        auto key = [&](int j2) {
            return prev[static_cast<size_t>(j2)] - c[static_cast<size_t>(j2)];
        };
        for (int j = 0; j <= k; ++j) {
            if (j - lo >= 0 && prev[static_cast<size_t>(j - lo)] < kInf) {
                const int cand = j - lo;
                while (!window.empty() && key(window.back()) >= key(cand)) window.pop_back();
                window.push_back(cand);
            }
            while (!window.empty() && window.front() < j - hi) window.pop_front();
            if (!window.empty()) {
                cur[static_cast<size_t>(j)] = c[static_cast<size_t>(j)] + key(window.front());
                choice[static_cast<size_t>(i) * (static_cast<size_t>(k) + 1) +
                       static_cast<size_t>(j)] = static_cast<uint32_t>(j - window.front());
            }
        }
        prev.swap(cur);
    }
    if (prev[static_cast<size_t>(k)] >= kInf) return std::nullopt;

    DpResult res;
    res.weight = prev[static_cast<size_t>(k)];
    res.use.assign(static_cast<size_t>(p), 0);
    int j = k;
    for (int i = p - 1; i >= 0; --i) {
        const int s = static_cast<int>(choice[static_cast<size_t>(i) * (static_cast<size_t>(k) + 1) +
                                              static_cast<size_t>(j)]);
        assert(s <= j);
        res.use[static_cast<size_t>(i)] = s;
        j -= s;
    }
    assert(j == 0);
    return res;
}

// ---------------------------------------------------------------------------
// Certified interval decomposition
// ---------------------------------------------------------------------------

struct RawBlock {
    std::vector<int> sources, targets;
};

// Maximal split: cut at every empty vertex where the running block is
// feasible and the remaining suffix stays feasible.
std::vector<RawBlock> candidate_blocks(int n, const std::vector<int> &S,
                                       const std::vector<int> &T) {
    std::vector<char> is_s(static_cast<size_t>(n), 0), is_t(static_cast<size_t>(n), 0);
    for (int v : S) is_s[static_cast<size_t>(v)] = 1;
    for (int v : T) is_t[static_cast<size_t>(v)] = 1;
    // suffix counts from v (inclusive)
    std::vector<int> suf_s(static_cast<size_t>(n) + 1, 0), suf_t(static_cast<size_t>(n) + 1, 0);
    for (int v = n - 1; v >= 0; --v) {
        suf_s[static_cast<size_t>(v)] = suf_s[static_cast<size_t>(v) + 1] + is_s[static_cast<size_t>(v)];
        suf_t[static_cast<size_t>(v)] = suf_t[static_cast<size_t>(v) + 1] + is_t[static_cast<size_t>(v)];
    }

    std::vector<RawBlock> blocks;
    RawBlock cur;
    for (int v = 0; v < n; ++v) {
        if (is_s[static_cast<size_t>(v)] || is_t[static_cast<size_t>(v)]) {
            if (is_s[static_cast<size_t>(v)]) cur.sources.push_back(v);
            if (is_t[static_cast<size_t>(v)]) cur.targets.push_back(v);
            continue;
        }
        if (cur.sources.size() >= cur.targets.size() &&
            suf_s[static_cast<size_t>(v)] >= suf_t[static_cast<size_t>(v)]) {
            if (!cur.sources.empty() || !cur.targets.empty()) blocks.push_back(std::move(cur));
            cur = RawBlock{};
        }
    }
    if (!cur.sources.empty() || !cur.targets.empty()) blocks.push_back(std::move(cur));
    return blocks;
}

std::vector<long long> widen(const std::vector<int> &v) {
    return std::vector<long long>(v.begin(), v.end());
}

// Certify that per-block optima sum to the global optimum; repair with one
// adjacent-merge sweep, then collapse to a single block if still uncertified.
std::vector<RawBlock> certified_blocks(int n, const std::vector<int> &S,
                                       const std::vector<int> &T) {
    std::vector<RawBlock> blocks = candidate_blocks(n, S, T);
    if (blocks.size() <= 1) return blocks;

    const long long global = certifier_cost(widen(S), widen(T));
    std::vector<long long> w(blocks.size());
    long long sum = 0;
    for (size_t i = 0; i < blocks.size(); ++i) {
        w[i] = certifier_cost(widen(blocks[i].sources), widen(blocks[i].targets));
        sum += w[i];
    }
    if (sum == global) return blocks;

    // merge neighbors wherever joining them is strictly cheaper
    size_t i = 0;
    while (i + 1 < blocks.size()) {
        RawBlock joined;
        joined.sources = blocks[i].sources;
        joined.targets = blocks[i].targets;
        joined.sources.insert(joined.sources.end(), blocks[i + 1].sources.begin(),
                              blocks[i + 1].sources.end());
        joined.targets.insert(joined.targets.end(), blocks[i + 1].targets.begin(),
                              blocks[i + 1].targets.end());
        const long long wj = certifier_cost(widen(joined.sources), widen(joined.targets));
        if (wj < w[i] + w[i + 1]) {
            blocks[i] = std::move(joined);
            w[i] = wj;
            blocks.erase(blocks.begin() + static_cast<long>(i) + 1);
            w.erase(w.begin() + static_cast<long>(i) + 1);
            if (i > 0) --i;  // a merge can enable one to the left
        } else {
            ++i;
        }
    }
    sum = std::accumulate(w.begin(), w.end(), 0LL);
    if (sum == global) return blocks;

    RawBlock whole;
    whole.sources = S;
    whole.targets = T;
    return {whole};
}

void validate_chain_instance(int n, const std::vector<int> &S, const std::vector<int> &T) {
    if (n <= 0) throw InputError("chain length must be positive");
    auto check = [&](const std::vector<int> &v, const char *what) {
        for (size_t i = 0; i < v.size(); ++i) {
            if (v[i] < 0 || v[i] >= n)
                throw InputError(std::string(what) + " vertex out of bounds");
            if (i > 0 && v[i] <= v[i - 1])
                throw InputError(std::string(what) + " vertices must be strictly increasing");
        }
    };
    check(S, "source");
    check(T, "target");
    if (S.size() < T.size()) throw InfeasibleError("fewer sources than targets (|S| < |T|)");
}

}  // namespace

// ---------------------------------------------------------------------------
// public operations
// ---------------------------------------------------------------------------

long long min_assignment_cost_1d(const std::vector<long long> &sources,
                                 const std::vector<long long> &targets) {
    std::vector<long long> s = sources, t = targets;
    std::sort(s.begin(), s.end());
    std::sort(t.begin(), t.end());
    return certifier_cost(s, t);
}

std::vector<int> level_vector(int n, const std::vector<int> &S, const std::vector<int> &T) {
    std::vector<int> delta(static_cast<size_t>(n), 0);
    std::vector<int> s_at(static_cast<size_t>(n), 0), t_at(static_cast<size_t>(n), 0);
    for (int v : S) s_at[static_cast<size_t>(v)] = 1;
    for (int v : T) t_at[static_cast<size_t>(v)] = 1;
    int s_pref = 0, t_pref = 0;  // t_pref trails by one vertex
    for (int i = 0; i < n; ++i) {
        s_pref += s_at[static_cast<size_t>(i)];
        delta[static_cast<size_t>(i)] = s_pref - t_pref;
        t_pref += t_at[static_cast<size_t>(i)];
    }
    return delta;
}

Matching1D assign_1d(int n, std::vector<int> S, std::vector<int> T) {
    std::sort(S.begin(), S.end());
    std::sort(T.begin(), T.end());
    validate_chain_instance(n, S, T);

    Matching1D out;
    out.use_count.assign(S.size(), 0);
    if (T.empty()) return out;

    const std::vector<RawBlock> blocks = certified_blocks(n, S, T);
    size_t s_base = 0;  // blocks partition S in ascending order
    for (const RawBlock &b : blocks) {
        if (b.targets.empty()) {
            s_base += b.sources.size();
            continue;
        }
        std::vector<DpSource> src(b.sources.size());
        for (size_t i = 0; i < b.sources.size(); ++i) src[i] = {b.sources[i], 0, 1};
        const auto res = window_dp(src, widen(b.targets));
        assert(res.has_value());  // block feasibility is by construction
        out.weight += res->weight;
        size_t t_ptr = 0;
        for (size_t i = 0; i < b.sources.size(); ++i) {
            out.use_count[s_base + i] = res->use[i];
            if (res->use[i] > 0) out.pairs.emplace_back(b.sources[i], b.targets[t_ptr++]);
        }
        assert(t_ptr == b.targets.size());
        s_base += b.sources.size();
    }
    return out;
}

Matching1D assign_1d_generalized(const Generalized1DInstance &instance) {
    long long supply = 0, mandatory = 0;
    std::vector<DpSource> src(instance.sources.size());
    for (size_t i = 0; i < instance.sources.size(); ++i) {
        const Generalized1DSource &s = instance.sources[i];
        if (s.multiplicity < 1) throw InputError("source multiplicity must be at least 1");
        if (s.min_use < 0 || s.min_use > s.multiplicity)
            throw InputError("source min_use outside [0, multiplicity]");
        if (i > 0 && s.pos <= instance.sources[i - 1].pos)
            throw InputError("source positions must be strictly increasing");
        src[i] = {s.pos, s.min_use, s.multiplicity};
        supply += s.multiplicity;
        mandatory += s.min_use;
    }
    for (size_t i = 1; i < instance.targets.size(); ++i)
        if (instance.targets[i] <= instance.targets[i - 1])
            throw InputError("target positions must be strictly increasing");
    const long long demand = static_cast<long long>(instance.targets.size());
    if (supply < demand) throw InfeasibleError("insufficient tokens for targets");
    if (mandatory > demand) throw InfeasibleError("mandatory draws exceed target count");

    const auto res = window_dp(src, instance.targets);
    if (!res) throw InfeasibleError("no assignment satisfies the usage bounds");

    Matching1D out;
    out.weight = res->weight;
    out.use_count = res->use;
    size_t t_ptr = 0;
    for (size_t i = 0; i < src.size(); ++i)
        for (int u = 0; u < res->use[i]; ++u)
            out.pairs.emplace_back(src[i].pos, instance.targets[t_ptr++]);
    assert(t_ptr == instance.targets.size());
    return out;
}

std::vector<Interval1D> decompose_1d(int n, const std::vector<int> &S,
                                     const std::vector<int> &T) {
    std::vector<int> s = S, t = T;
    std::sort(s.begin(), s.end());
    std::sort(t.begin(), t.end());
    validate_chain_instance(n, s, t);
    if (t.empty()) return {};

    std::vector<Interval1D> out;
    for (const RawBlock &b : certified_blocks(n, s, t)) {
        if (b.targets.empty()) continue;
        Interval1D iv;
        iv.sources = b.sources;
        iv.targets = b.targets;
        iv.lo = std::min(b.sources.front(), b.targets.front());
        iv.hi = std::max(b.sources.back(), b.targets.back());
        out.push_back(std::move(iv));
    }
    return out;
}

std::vector<Path> paths_from_matching(const Geometry &g, const Matching1D &m) {
    if (g.height != 1) throw InputError("1D paths require a chain geometry");
    std::vector<Path> paths;
    paths.reserve(m.pairs.size());
    for (const auto &[sp, tp] : m.pairs) {
        const int s = static_cast<int>(sp), t = static_cast<int>(tp);
        if (s < 0 || s >= g.width || t < 0 || t >= g.width)
            throw InputError("matched position outside the chain");
        Path p;
        p.orientation = t > s ? Orientation::right
                              : (t < s ? Orientation::left : Orientation::isolated);
        const int step = t > s ? 1 : (t < s ? -1 : 0);
        for (int v = s;; v += step) {
            p.vertices.push_back(v);
            if (v == t) break;
        }
        p.event_id = 0;
        p.src_column = s;
        p.dst_column = t;
        paths.push_back(std::move(p));
    }
    return paths;
}

std::vector<Path> resolve_nesting(std::vector<Path> paths) {
    // re-pair each orientation class by sorted order; total length invariant
    std::vector<size_t> rights, lefts;
    for (size_t i = 0; i < paths.size(); ++i) {
        if (paths[i].orientation == Orientation::right) rights.push_back(i);
        if (paths[i].orientation == Orientation::left) lefts.push_back(i);
    }
    auto repair = [&](std::vector<size_t> &ids, bool ascending) {
        std::vector<int> srcs, tgts;
        for (size_t i : ids) {
            srcs.push_back(paths[i].source());
            tgts.push_back(paths[i].target());
        }
        std::sort(srcs.begin(), srcs.end());
        std::sort(tgts.begin(), tgts.end());
        if (!ascending) {
            std::reverse(srcs.begin(), srcs.end());
            std::reverse(tgts.begin(), tgts.end());
        }
        std::sort(ids.begin(), ids.end(), [&](size_t a, size_t b) {
            return ascending ? paths[a].source() < paths[b].source()
                             : paths[a].source() > paths[b].source();
        });
        for (size_t k = 0; k < ids.size(); ++k) {
            Path &p = paths[ids[k]];
            const int s = srcs[k], t = tgts[k];
            p.vertices.clear();
            const int step = t > s ? 1 : -1;
            for (int v = s;; v += step) {
                p.vertices.push_back(v);
                if (v == t) break;
            }
            p.dst_column = t;
        }
    };
    repair(rights, true);
    repair(lefts, false);
    return paths;
}

std::vector<int> order_1d_intervals(
    const std::vector<std::pair<long long, long long>> &intervals) {
    std::vector<int> rights, lefts, isolated;
    for (size_t i = 0; i < intervals.size(); ++i) {
        const auto &[s, t] = intervals[i];
        if (t > s) rights.push_back(static_cast<int>(i));
        else if (t < s) lefts.push_back(static_cast<int>(i));
        else isolated.push_back(static_cast<int>(i));
    }
    std::sort(rights.begin(), rights.end(), [&](int a, int b) {
        return intervals[static_cast<size_t>(a)].second > intervals[static_cast<size_t>(b)].second;
    });
    std::sort(lefts.begin(), lefts.end(), [&](int a, int b) {
        return intervals[static_cast<size_t>(a)].second < intervals[static_cast<size_t>(b)].second;
    });
    std::vector<int> order;
    order.reserve(intervals.size());
    order.insert(order.end(), rights.begin(), rights.end());
    order.insert(order.end(), lefts.begin(), lefts.end());
    order.insert(order.end(), isolated.begin(), isolated.end());
    return order;
}

Ordering1D order_moves_1d(const std::vector<Path> &paths) {
    std::vector<std::pair<long long, long long>> intervals;
    intervals.reserve(paths.size());
    for (const Path &p : paths) intervals.emplace_back(p.source(), p.target());

    Ordering1D out;
    out.path_order = order_1d_intervals(intervals);
    for (int pid : out.path_order) {
        const auto moves = moves_of(paths[static_cast<size_t>(pid)]);
        out.schedule.insert(out.schedule.end(), moves.begin(), moves.end());
    }

    out.dag.node_count = static_cast<int>(paths.size());
    std::vector<int> rank(paths.size());
    for (size_t k = 0; k < out.path_order.size(); ++k)
        rank[static_cast<size_t>(out.path_order[k])] = static_cast<int>(k);

    // vertex-sharing pairs = span-overlap pairs; sweep keeps it output-sensitive
    struct Span {
        long long lo, hi;
        int id;
    };
    std::vector<Span> spans;
    spans.reserve(paths.size());
    for (size_t i = 0; i < paths.size(); ++i) {
        const auto &[s, t] = intervals[i];
        spans.push_back({std::min(s, t), std::max(s, t), static_cast<int>(i)});
    }
    std::sort(spans.begin(), spans.end(), [](const Span &a, const Span &b) {
        return a.lo != b.lo ? a.lo < b.lo : a.id < b.id;
    });
    std::multimap<long long, int> active;  // hi -> id
    for (const Span &sp : spans) {
        while (!active.empty() && active.begin()->first < sp.lo) active.erase(active.begin());
        for (const auto &[hi, other] : active) {
            (void)hi;
            const int a = rank[static_cast<size_t>(other)] < rank[static_cast<size_t>(sp.id)]
                              ? other
                              : sp.id;
            const int b = a == other ? sp.id : other;
            out.dag.add_edge(a, b);
        }
        active.emplace(sp.hi, sp.id);
    }
    return out;
}

Solution solve_1d(int n, const std::vector<int> &S, const std::vector<int> &T) {
    const Geometry g = Geometry::chain(n);
    const Matching1D m = assign_1d(n, S, T);
    std::vector<Path> paths = resolve_nesting(paths_from_matching(g, m));
    Ordering1D ord = order_moves_1d(paths);
    PathSystem ps;
    ps.paths = std::move(paths);
    return make_solution(std::move(ps), std::move(ord.dag), ord.path_order);
}

}  // namespace recon
