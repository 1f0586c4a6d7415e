#include "recon/virtual_line.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <map>
#include <numeric>
#include <unordered_map>

namespace recon {

// ---------------------------------------------------------------------------
// band derivation
// ---------------------------------------------------------------------------

BandSpec derive_centered_band(const Problem &problem) {
    const Geometry &g = problem.geometry;
    int y_lo = -1, y_hi = -1;

    if (problem.target_region) {
        y_lo = problem.target_region->row_lo(g);
        y_hi = problem.target_region->row_hi(g);
    } else {
        if (problem.targets.empty()) throw InputError("target band is empty");
        // column 0 defines the band; every column must repeat it exactly
        std::vector<std::vector<int>> rows(static_cast<size_t>(g.width));
        for (Vertex v : problem.targets.vertices()) {
            const Vec2 p = g.coords(v);
            rows[static_cast<size_t>(p.x)].push_back(p.y);
        }
        const std::vector<int> &first = rows[0];
        if (first.empty()) throw InputError("targets must form a centered full-width band");
        y_lo = first.front();
        y_hi = first.back();  // vertices() ascends, so per-column rows ascend
        if (y_hi - y_lo + 1 != static_cast<int>(first.size()))
            throw InputError("targets must form a centered full-width band");
        for (const std::vector<int> &col : rows)
            if (col != first) throw InputError("targets must form a centered full-width band");
        if (y_lo != (g.height - (y_hi - y_lo + 1)) / 2)
            throw InputError("targets must form a centered full-width band");
    }

    const int h_prime = y_hi - y_lo + 1;
    if (h_prime <= 0 || h_prime >= g.height)
        throw InputError("target band height must be in (0, H)");

    BandSpec band;
    band.lo = g.row_from_top(y_hi);
    band.hi = g.row_from_top(y_lo);
    return band;
}

SurplusVector compute_surpluses(const Problem &problem) {
    const BandSpec band = derive_centered_band(problem);
    SurplusVector surplus(static_cast<size_t>(problem.geometry.width), -band.h_prime());
    for (Vertex v : problem.sources.vertices())
        ++surplus[static_cast<size_t>(problem.geometry.coords(v).x)];
    return surplus;
}

// ---------------------------------------------------------------------------
// event construction
// ---------------------------------------------------------------------------

long long virtual_pos(const VirtualToken &token) {
    if (token.dist == 0) return token.depth;
    return token.top_side ? token.depth - token.dist : token.depth + token.dist;
}

VirtualToken virtual_token_at(const Geometry &g, BandSpec band, Vertex vertex, int receiver,
                              bool mandatory) {
    const Vec2 p = g.coords(vertex);
    VirtualToken t;
    t.vertex = vertex;
    t.column = p.x;
    t.depth = g.row_from_top(p.y);
    t.dist = std::abs(p.x - receiver);
    t.top_side = t.depth < band.lo;
    t.mandatory = mandatory;
    return t;
}

VirtualToken virtual_token_at_depth(const Geometry &g, BandSpec band, int column, int depth,
                                    int receiver, bool mandatory) {
    return virtual_token_at(g, band, g.id({column, g.y_of_top_row(depth)}), receiver, mandatory);
}

std::vector<VirtualToken> own_column_tokens(const Geometry &g, BandSpec band, int column,
                                            const std::vector<int> &depths) {
    std::vector<VirtualToken> tokens;
    tokens.reserve(depths.size());
    for (int depth : depths)
        tokens.push_back(virtual_token_at_depth(g, band, column, depth, column, band.contains(depth)));
    return tokens;
}

VirtualEvent build_virtual_event(const Geometry &g, int receiver, BandSpec band,
                                 std::vector<VirtualToken> tokens) {
    assert(receiver >= 0 && receiver < g.width);
    assert(band.lo >= 0 && band.hi < g.height && band.h_prime() >= 1);

    for (const VirtualToken &t : tokens) {
        assert(t.dist == std::abs(t.column - receiver));
        assert(g.coords(t.vertex).x == t.column);
        assert(g.row_from_top(g.coords(t.vertex).y) == t.depth);
        assert(t.dist > 0 || t.column == receiver);
        (void)t;
    }

    // draw preference: closest column first, left before right at equal
    // distance; same-column same-index repeats cannot occur
    std::sort(tokens.begin(), tokens.end(), [](const VirtualToken &a, const VirtualToken &b) {
        const long long pa = virtual_pos(a), pb = virtual_pos(b);
        if (pa != pb) return pa < pb;
        if (a.dist != b.dist) return a.dist < b.dist;
        if (a.column != b.column) return a.column < b.column;
        return a.vertex < b.vertex;
    });

    VirtualEvent event;
    event.receiver = receiver;
    event.band = band;
    event.instance.offset = -(g.width - 1);
    event.instance.length = g.height + 2 * (g.width - 1);
    for (int depth = band.lo; depth <= band.hi; ++depth) event.instance.targets.push_back(depth);

    for (size_t i = 0; i < tokens.size();) {
        const long long pos = virtual_pos(tokens[i]);
        Generalized1DSource src;
        src.pos = pos;
        src.multiplicity = 0;
        src.min_use = 0;
        event.origins.emplace_back();
        for (; i < tokens.size() && virtual_pos(tokens[i]) == pos; ++i) {
            ++src.multiplicity;
            if (tokens[i].mandatory) ++src.min_use;
            event.origins.back().push_back(tokens[i]);
        }
        event.instance.sources.push_back(src);
    }
    return event;
}

// ---------------------------------------------------------------------------
// physical realization
// ---------------------------------------------------------------------------

namespace {

Path physical_path(const Geometry &g, const VirtualToken &token, int receiver,
                   long long virtual_target) {
    const int y_to = g.y_of_top_row(static_cast<int>(virtual_target));
    const Vec2 from = g.coords(token.vertex);
    const Vec2 to{receiver, y_to};

    Path p;
    if (token.column == receiver) {
        const int step = to.y > from.y ? 1 : -1;
        for (int y = from.y;; y += step) {
            p.vertices.push_back(g.id({receiver, y}));
            if (y == to.y) break;
        }
    } else {
        // ride the token's own row, then the receiver column: reservoir rows
        // of the columns in between are clear by the solvers' invariants
        for (const Vec2 &v : shortest_path(from, to, StepPolicy::horizontal_first))
            p.vertices.push_back(g.id(v));
    }
    p.orientation = virtual_target > virtual_pos(token) ? Orientation::right : Orientation::left;
    p.src_column = token.column;
    p.dst_column = receiver;
    return p;
}

}  // namespace

RealizedEvent realize_event(const Geometry &g, const VirtualEvent &event,
                            const Matching1D &matching, int event_id) {
    assert(matching.use_count.size() == event.instance.sources.size());

    // targets served by each aggregated source, ascending
    std::map<long long, size_t> group_of;
    for (size_t i = 0; i < event.instance.sources.size(); ++i)
        group_of[event.instance.sources[i].pos] = i;
    std::vector<std::vector<long long>> served(event.instance.sources.size());
    for (const auto &[pos, target] : matching.pairs) served[group_of.at(pos)].push_back(target);

    RealizedEvent out;
    std::vector<std::pair<long long, long long>> intervals;  // (virtual source, target)
    std::vector<Path> unordered;

    for (size_t i = 0; i < event.origins.size(); ++i) {
        const std::vector<VirtualToken> &group = event.origins[i];
        const int use = matching.use_count[i];
        assert(static_cast<int>(served[i].size()) == use);
        std::sort(served[i].begin(), served[i].end());

        // drawn = every mandatory token plus the closest optional ones, in
        // draw-preference order; drawn tokens pair with the served targets in
        // that same order (deeper entry rows take deeper band cells)
        std::vector<VirtualToken> drawn;
        int optional_budget = use - event.instance.sources[i].min_use;
        assert(optional_budget >= 0);
        for (const VirtualToken &t : group) {
            if (t.mandatory) {
                drawn.push_back(t);
            } else if (optional_budget > 0) {
                drawn.push_back(t);
                --optional_budget;
            } else {
                out.parked.push_back(t);
            }
        }
        assert(static_cast<int>(drawn.size()) == use);

        for (size_t k = 0; k < drawn.size(); ++k) {
            const long long target = served[i][k];
            out.placed.push_back(drawn[k]);
            if (virtual_pos(drawn[k]) == target) continue;  // already on its band cell
            Path p = physical_path(g, drawn[k], event.receiver, target);
            p.event_id = event_id;
            intervals.emplace_back(virtual_pos(drawn[k]), target);
            unordered.push_back(std::move(p));
        }
    }

    for (int idx : order_1d_intervals(intervals)) out.paths.push_back(std::move(unordered[static_cast<size_t>(idx)]));
    return out;
}

// ---------------------------------------------------------------------------
// dependency structure
// ---------------------------------------------------------------------------

// Edges record real occupancy constraints only.  Every token moves at most
// once, so a path's source holds its token from the start until the path runs,
// and its target stays occupied forever after.  A path crossing another's
// source must wait for it to leave; a path crossing another's target must pass
// before it lands.  Cells two paths merely travel through impose no order;
// executors resolve transient sharing by running moves in schedule order.
MoveDag occupancy_dag(const std::vector<Path> &paths) {
    MoveDag dag;
    dag.node_count = static_cast<int>(paths.size());

    std::unordered_map<Vertex, int> source_of;
    std::unordered_map<Vertex, int> target_of;
    for (int i = 0; i < static_cast<int>(paths.size()); ++i) {
        source_of[paths[static_cast<size_t>(i)].source()] = i;
        target_of[paths[static_cast<size_t>(i)].target()] = i;
    }

    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < static_cast<int>(paths.size()); ++i) {
        for (Vertex v : paths[static_cast<size_t>(i)].vertices) {
            auto s = source_of.find(v);
            if (s != source_of.end() && s->second != i) edges.emplace_back(s->second, i);
            auto t = target_of.find(v);
            if (t != target_of.end() && t->second != i) edges.emplace_back(i, t->second);
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    for (const auto &[a, b] : edges) {
        assert(a < b);  // emission order already satisfies every constraint
        dag.add_edge(a, b);
    }
    return dag;
}

Solution assemble_event_solution(std::vector<Path> paths) {
    MoveDag dag = occupancy_dag(paths);
    std::vector<int> order(paths.size());
    std::iota(order.begin(), order.end(), 0);
    PathSystem system;
    system.paths = std::move(paths);
    return make_solution(std::move(system), std::move(dag), order);
}

}  // namespace recon
