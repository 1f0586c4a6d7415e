#include "recon/bird.hpp"

#include <algorithm>
#include <cassert>

namespace recon {

// ---------------------------------------------------------------------------
// state
// ---------------------------------------------------------------------------

BirdState BirdState::from_problem(const Problem &problem) {
    BirdState st;
    st.geometry = problem.geometry;
    st.band = derive_centered_band(problem);
    st.column_depths.assign(static_cast<size_t>(st.geometry.width), {});
    for (Vertex v : problem.sources.vertices()) {
        const Vec2 p = st.geometry.coords(v);
        st.column_depths[static_cast<size_t>(p.x)].push_back(st.geometry.row_from_top(p.y));
    }
    st.surplus.resize(static_cast<size_t>(st.geometry.width));
    for (int c = 0; c < st.geometry.width; ++c) {
        std::vector<int> &depths = st.column_depths[static_cast<size_t>(c)];
        std::sort(depths.begin(), depths.end());
        st.surplus[static_cast<size_t>(c)] = static_cast<int>(depths.size()) - st.band.h_prime();
    }
    st.solved.assign(static_cast<size_t>(st.geometry.width), 0);
    return st;
}

// ---------------------------------------------------------------------------
// event construction
// ---------------------------------------------------------------------------

VirtualEvent build_generalized_instance(const BirdState &state, int column) {
    const Geometry &g = state.geometry;
    std::vector<VirtualToken> tokens =
        own_column_tokens(g, state.band, column, state.column_depths[static_cast<size_t>(column)]);
    for (int c = 0; c < g.width; ++c) {
        if (c == column) continue;
        for (int depth : state.column_depths[static_cast<size_t>(c)])
            if (!state.band.contains(depth))
                tokens.push_back(virtual_token_at_depth(g, state.band, c, depth, column, false));
    }
    return build_virtual_event(g, column, state.band, std::move(tokens));
}

// ---------------------------------------------------------------------------
// solver
// ---------------------------------------------------------------------------

namespace {

struct BirdRunner {
    BirdState st;
    std::vector<Path> all_paths;
    std::vector<int> *order = nullptr;
    int next_event = 0;

    const Geometry &geometry() const { return st.geometry; }

    // fills column c with one event; a pooled event may pull reservoir
    // tokens out of any other column
    void solve_column(int c, bool pooled) {
        const size_t k = static_cast<size_t>(c);
        const VirtualEvent event =
            pooled ? build_generalized_instance(st, c)
                   : build_virtual_event(geometry(), c, st.band,
                                         own_column_tokens(geometry(), st.band, c,
                                                           st.column_depths[k]));
        const Matching1D matching = assign_1d_generalized(event.instance);
        RealizedEvent realized = realize_event(geometry(), event, matching, next_event);
        if (order) order->push_back(c);
        ++next_event;
        for (Path &p : realized.paths) all_paths.push_back(std::move(p));

        // drawn externals leave their reservoirs; a donor column's deficit
        // may deepen, which only postpones it within the sweep
        for (const VirtualToken &t : realized.placed) {
            if (t.column == c) continue;
            std::vector<int> &donor = st.column_depths[static_cast<size_t>(t.column)];
            const auto it = std::find(donor.begin(), donor.end(), t.depth);
            assert(it != donor.end());
            donor.erase(it);
            --st.surplus[static_cast<size_t>(t.column)];
        }

        std::vector<int> depths;
        for (int depth = st.band.lo; depth <= st.band.hi; ++depth) depths.push_back(depth);
        int leftovers = 0;
        for (const VirtualToken &t : realized.parked)
            if (t.column == c) {
                depths.push_back(t.depth);
                ++leftovers;
            }
        std::sort(depths.begin(), depths.end());
        st.column_depths[k] = std::move(depths);
        st.surplus[k] = leftovers;
        st.solved[k] = 1;
    }
};

}  // namespace

Solution bird(const Problem &problem) { return bird(problem, nullptr); }

Solution bird(const Problem &problem, std::vector<int> *solved_order) {
    BirdRunner runner;
    runner.st = BirdState::from_problem(problem);
    if (solved_order) solved_order->clear();
    runner.order = solved_order;
    const int width = problem.geometry.width;

    for (int c = 0; c < width; ++c)
        if (runner.st.surplus[static_cast<size_t>(c)] >= 0) runner.solve_column(c, false);

    // each remaining column is the leftmost unsolved deficit when reached:
    // pooled draws shrink other columns' reservoirs but never solve them
    for (int c = 0; c < width; ++c)
        if (!runner.st.solved[static_cast<size_t>(c)]) runner.solve_column(c, true);

    return assemble_event_solution(std::move(runner.all_paths));
}

}  // namespace recon
