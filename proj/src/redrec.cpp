#include "recon/redrec.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <stdexcept>
#include <tuple>

namespace recon {

// ---------------------------------------------------------------------------
// state and surpluses
// ---------------------------------------------------------------------------

RedRecState RedRecState::from_problem(const Problem &problem) {
    RedRecState st;
    st.geometry = problem.geometry;
    st.band = derive_centered_band(problem);
    st.column_depths.assign(static_cast<size_t>(st.geometry.width), {});
    st.marks_for.assign(static_cast<size_t>(st.geometry.width), {});
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
// pair selection
// ---------------------------------------------------------------------------

namespace {

// nearest admissible donor on one side of r, or -1; columns in between must
// be solved with zero surplus
int scan_for_donor(const RedRecState &st, int r, int step) {
    for (int c = r + step; c >= 0 && c < st.geometry.width; c += step) {
        const size_t k = static_cast<size_t>(c);
        if (!st.solved[k] && st.surplus[k] > 0) return c;
        if (st.solved[k] && st.surplus[k] == 0) continue;  // cleared transit column
        return -1;  // unsolved receiver or parked surplus blocks the corridor
    }
    return -1;
}

}  // namespace

std::pair<int, int> select_best_pair(const RedRecState &state) {
    // rank: exchangeable desc, distance asc, residual deficit asc, receiver
    // index asc, donor index asc
    std::tuple<int, int, int, int, int> best{};
    std::pair<int, int> best_pair{-1, -1};
    bool have_receiver = false;
    bool have_candidate = false;

    for (int r = 0; r < state.geometry.width; ++r) {
        const size_t k = static_cast<size_t>(r);
        if (state.solved[k] || state.surplus[k] >= 0) continue;
        have_receiver = true;
        for (int side = 0; side < 2; ++side) {
            const int d = scan_for_donor(state, r, side == 0 ? -1 : +1);
            if (d < 0) continue;
            const int deficit = -state.surplus[k];
            const int exchange = std::min(state.surplus[static_cast<size_t>(d)], deficit);
            std::tuple<int, int, int, int, int> key{-exchange, std::abs(d - r), deficit - exchange,
                                                    r, d};
            if (!have_candidate || key < best) {
                best = key;
                best_pair = {d, r};
                have_candidate = true;
            }
        }
    }

    if (!have_receiver) throw std::logic_error("select_best_pair: no deficit column remains");
    if (best_pair.first < 0)
        throw std::logic_error("select_best_pair: deficit column with no admissible donor");
    return best_pair;
}

// ---------------------------------------------------------------------------
// event construction
// ---------------------------------------------------------------------------

VirtualEvent build_redistribution_instance(int donor, int receiver, const RedRecState &state) {
    const Geometry &g = state.geometry;
    if (state.solved[static_cast<size_t>(receiver)]) {
        VirtualEvent empty;
        empty.receiver = receiver;
        empty.band = state.band;
        empty.instance.offset = -(g.width - 1);
        empty.instance.length = g.height + 2 * (g.width - 1);
        return empty;
    }

    std::vector<VirtualToken> tokens;
    for (int depth : state.column_depths[static_cast<size_t>(receiver)])
        tokens.push_back(virtual_token_at_depth(g, state.band, receiver, depth, receiver, true));
    for (const DelayedMark &m : state.marks_for[static_cast<size_t>(receiver)]) {
        assert(m.destination_column == receiver);
        tokens.push_back(virtual_token_at(g, state.band, m.vertex, receiver, true));
    }
    if (donor >= 0)
        for (int depth : state.column_depths[static_cast<size_t>(donor)])
            if (!state.band.contains(depth))  // reservoir pool only; band rows cannot exit
                tokens.push_back(virtual_token_at_depth(g, state.band, donor, depth, receiver, false));

    return build_virtual_event(g, receiver, state.band, std::move(tokens));
}

// ---------------------------------------------------------------------------
// solver
// ---------------------------------------------------------------------------

namespace {

struct Runner {
    RedRecState st;
    std::vector<Path> all_paths;
    std::vector<RedRecEvent> *log = nullptr;
    int next_event = 0;

    const Geometry &geometry() const { return st.geometry; }

    RealizedEvent run(const VirtualEvent &event, int column, int donor, int mark_destination) {
        const Matching1D matching = assign_1d_generalized(event.instance);
        RealizedEvent realized = realize_event(geometry(), event, matching, next_event);
        if (log) log->push_back(RedRecEvent{next_event, column, donor, mark_destination});
        ++next_event;
        for (Path &p : realized.paths) all_paths.push_back(std::move(p));
        realized.paths.clear();
        return realized;
    }

    // compacts column c into its band cells; leftovers stay parked, or become
    // marks for mark_receiver when the column donates by delayed moving
    void solve_own(int c, int mark_receiver) {
        const size_t k = static_cast<size_t>(c);
        const VirtualEvent event = build_virtual_event(
            geometry(), c, st.band, own_column_tokens(geometry(), st.band, c, st.column_depths[k]));
        const RealizedEvent realized = run(event, c, -1, mark_receiver);

        std::vector<int> depths;
        for (int depth = st.band.lo; depth <= st.band.hi; ++depth) depths.push_back(depth);
        if (mark_receiver >= 0) {
            assert(static_cast<int>(realized.parked.size()) == st.surplus[k]);
            for (const VirtualToken &t : realized.parked)
                st.marks_for[static_cast<size_t>(mark_receiver)].push_back(
                    DelayedMark{t.vertex, mark_receiver});
            st.surplus[static_cast<size_t>(mark_receiver)] += st.surplus[k];
            st.surplus[k] = 0;
        } else {
            for (const VirtualToken &t : realized.parked) depths.push_back(t.depth);
            std::sort(depths.begin(), depths.end());
        }
        st.column_depths[k] = std::move(depths);
        st.solved[k] = 1;
    }

    // fills receiver r, drawing its deficit from donor d's reservoir and
    // flushing any marks parked for r along the way
    void flush(int r, int d) {
        const VirtualEvent event = build_redistribution_instance(d, r, st);
        const RealizedEvent realized = run(event, r, d, -1);

        int drawn_from_donor = 0;
        for (const VirtualToken &t : realized.placed) {
            if (t.mandatory) continue;
            assert(t.column == d);
            ++drawn_from_donor;
            std::vector<int> &donor_depths = st.column_depths[static_cast<size_t>(d)];
            auto it = std::find(donor_depths.begin(), donor_depths.end(), t.depth);
            assert(it != donor_depths.end());
            donor_depths.erase(it);
        }
        st.surplus[static_cast<size_t>(d)] -= drawn_from_donor;
        st.marks_for[static_cast<size_t>(r)].clear();

        std::vector<int> depths;
        for (int depth = st.band.lo; depth <= st.band.hi; ++depth) depths.push_back(depth);
        st.column_depths[static_cast<size_t>(r)] = std::move(depths);
        st.surplus[static_cast<size_t>(r)] = 0;
        st.solved[static_cast<size_t>(r)] = 1;
    }

    bool deficit_remains() const {
        for (int c = 0; c < geometry().width; ++c)
            if (!st.solved[static_cast<size_t>(c)] && st.surplus[static_cast<size_t>(c)] < 0)
                return true;
        return false;
    }
};

}  // namespace

Solution red_rec(const Problem &problem) { return red_rec(problem, nullptr); }

Solution red_rec(const Problem &problem, std::vector<RedRecEvent> *events) {
    Runner runner;
    runner.st = RedRecState::from_problem(problem);
    runner.log = events;
    const int width = problem.geometry.width;

    for (int c = 0; c < width; ++c)
        if (runner.st.surplus[static_cast<size_t>(c)] == 0) runner.solve_own(c, -1);

    while (runner.deficit_remains()) {
        const auto [d, r] = select_best_pair(runner.st);
        const int donor_surplus = runner.st.surplus[static_cast<size_t>(d)];
        const int deficit = -runner.st.surplus[static_cast<size_t>(r)];
        assert(donor_surplus > 0 && deficit > 0);

        if (donor_surplus < deficit) {
            runner.solve_own(d, r);  // donor exhausts: park its excess for r
        } else {
            runner.flush(r, d);
            if (donor_surplus == deficit) runner.solve_own(d, -1);
        }
    }

    for (int c = 0; c < width; ++c)
        if (!runner.st.solved[static_cast<size_t>(c)]) runner.solve_own(c, -1);

    return assemble_event_solution(std::move(runner.all_paths));
}

}  // namespace recon
