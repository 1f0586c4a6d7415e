#pragma once

#include <utility>
#include <vector>

#include "recon/path_system.hpp"
#include "recon/problem.hpp"

namespace recon {

// ---------------------------------------------------------------------------
// aro: assignment, rerouting, ordering.
//
// Computes an exact distance-minimizing matching by min-cost max-flow over
// the grid, reroutes paths to cross fewer parked tokens without adding
// length, prunes the path system's edge set until it is cycle-free, and
// orders the moves so every token is displaced at most once without
// collisions.  Exact in total displacement; slower than the column sweeps.
// ---------------------------------------------------------------------------

struct AssignmentResult {
    long long weight = 0;
    std::vector<std::pair<Vertex, Vertex>> matching;  // (source, target), one per target
    PathSystem system;  // system.paths[i] realizes matching[i]; stationary pairs included
};

// Distance-minimizing matching saturating T, plus a shortest-path system
// realizing it.  Successive shortest augmenting paths on the unit-cost flow
// network (doubled grid arcs; super-source to S, T to super-sink), with
// potentials keeping reduced costs non-negative.  InfeasibleError when
// |S| < |T|.
AssignmentResult mcmf_matching(const Geometry &g, const std::vector<Vertex> &S,
                               const std::vector<Vertex> &T);

// True when the undirected edges used by the system's paths contain no cycle.
bool is_forest(const PathSystem &system);

// Replaces each path by an equal-length monotone staircase crossing the
// fewest parked tokens (tokens in `sources` that no path moves), trying up
// to `budget` staircases per path.  Weight and endpoints are preserved.
PathSystem reroute(const Geometry &g, const Configuration &sources, PathSystem system,
                   int budget = 32);

// Repeatedly deletes one edge of the system's own edge set and recomputes a
// distance-minimizing system inside the remaining edges, keeping the first
// deletion that does not increase weight, until the system is cycle-free.
// Weight is preserved exactly (the input is already distance-minimal).
PathSystem break_cycles(const Geometry &g, const std::vector<Vertex> &S,
                        const std::vector<Vertex> &T, PathSystem system);

// Orders a cycle-free system's moves so that execution is collision-free and
// every token moves at most once: paths crossing a parked token are split
// into chains that shift the parked token forward, and the resulting moves
// are scheduled respecting vacate-before-cross and cross-before-land.
// InputError when no such order exists (the system is not valid cycle-free).
Solution order_moves_forest(const Geometry &g, const Configuration &sources,
                            const PathSystem &system);

// Full pipeline.  Total displacement equals the minimum matching weight.
Solution aro(const Problem &problem);

}  // namespace recon
