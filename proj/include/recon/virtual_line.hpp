#pragma once

#include <vector>

#include "recon/exact1d.hpp"
#include "recon/path_system.hpp"
#include "recon/problem.hpp"

namespace recon {

// ---------------------------------------------------------------------------
// Virtualized column transfers.
//
// The grid solvers fill one column's target band per event, drawing tokens
// from the receiver column itself and from reservoir cells of other columns.
// Measuring every token on a depth axis (rows counted from the top) and
// shifting cross-column tokens by their horizontal distance turns each event
// into a generalized line-assignment instance: a top-reservoir token in a
// column at distance d behaves like a token d rows higher in the receiver
// column, a bottom-reservoir token like one d rows lower.  Solving the line
// instance and replaying its schedule with one-bend physical paths keeps the
// event collision-free.
// ---------------------------------------------------------------------------

// Target band shared by every column, as inclusive depths from the top row.
struct BandSpec {
    int lo = 0;
    int hi = -1;

    int h_prime() const { return hi - lo + 1; }
    bool contains(int depth) const { return depth >= lo && depth <= hi; }
};

// The centered full-width band a problem's targets form; InputError when the
// targets are not such a band.
BandSpec derive_centered_band(const Problem &problem);

// Per-column token count minus the band height; negative entries mark
// columns that must import tokens.
using SurplusVector = std::vector<int>;

SurplusVector compute_surpluses(const Problem &problem);

// One candidate token of a transfer event.  `depth` is its row from the top;
// `dist` its horizontal distance to the receiver column; mandatory tokens
// must be placed into the band by this event, optional ones may stay parked.
struct VirtualToken {
    Vertex vertex = -1;
    int column = -1;
    int depth = 0;
    int dist = 0;
    bool top_side = false;  // reservoir side; meaningful when dist > 0
    bool mandatory = false;
};

// Index of a token on the virtual line of a receiver column.
long long virtual_pos(const VirtualToken &token);

// The token on `vertex`, measured relative to the receiver column.
VirtualToken virtual_token_at(const Geometry &g, BandSpec band, Vertex vertex, int receiver,
                              bool mandatory);

// Same, addressed by (column, depth-from-top).
VirtualToken virtual_token_at_depth(const Geometry &g, BandSpec band, int column, int depth,
                                    int receiver, bool mandatory);

// A column's own tokens for a self-fill event: band residents mandatory,
// reservoir tokens an optional pool.  `depths` must be sorted ascending.
std::vector<VirtualToken> own_column_tokens(const Geometry &g, BandSpec band, int column,
                                            const std::vector<int> &depths);

// A transfer event: the line instance plus, per aggregated instance source,
// the physical tokens behind it in draw-preference order (closest column
// first, left before right).
struct VirtualEvent {
    int receiver = -1;
    BandSpec band;
    Generalized1DInstance instance;
    std::vector<std::vector<VirtualToken>> origins;  // parallel to instance.sources

    bool empty() const { return instance.targets.empty(); }
};

// Groups tokens by virtual index into a line instance over the receiver's
// band.  Spans the full band: every band cell is a target, so callers list
// all of the receiver's own tokens as mandatory sources.
VirtualEvent build_virtual_event(const Geometry &g, int receiver, BandSpec band,
                                 std::vector<VirtualToken> tokens);

// A solved transfer event realized on the grid.
struct RealizedEvent {
    std::vector<Path> paths;           // execution order; stationary tokens omitted
    std::vector<VirtualToken> placed;  // tokens now in the band (movers and stationary)
    std::vector<VirtualToken> parked;  // optional tokens the matching left in place
};

// Replays a line matching physically: each drawn token rides its own row to
// the receiver column, then moves vertically to its band cell.  Paths come
// out in a collision-free order (descending targets for tokens entering from
// above, then ascending for tokens entering from below).
RealizedEvent realize_event(const Geometry &g, const VirtualEvent &event,
                            const Matching1D &matching, int event_id);

// Dependency edges from real occupancy constraints: a path crossing another's
// source waits for that token to leave, and a path crossing another's target
// passes before that token lands.  Transient sharing of empty cells adds no
// edge.  All edges point forward in emission order, so the emitted schedule is
// a linear extension.  `node_count` is the total path count.
MoveDag occupancy_dag(const std::vector<Path> &paths);

// Paths (already in execution order) assembled into a validated-shape
// Solution with the vertex-chained dependency DAG.
Solution assemble_event_solution(std::vector<Path> paths);

}  // namespace recon
