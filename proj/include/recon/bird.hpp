#pragma once

#include <vector>

#include "recon/problem.hpp"
#include "recon/virtual_line.hpp"

namespace recon {

// ---------------------------------------------------------------------------
// bird: column transfers drawing from every reservoir at once.
//
// Columns with no deficit compact on their own, left to right.  Each deficit
// column then runs one transfer event whose optional pool spans the reservoir
// cells of every other column — nearer donors sit closer on the virtual line,
// so a single optimal assignment picks the cheapest mix of donors instead of
// committing to one fixed partner column.
// ---------------------------------------------------------------------------

// Mutable sweep state.  Unlike the pairing solver there are no delayed
// marks: every drawn token moves during the event that draws it.
struct BirdState {
    Geometry geometry;
    BandSpec band;
    std::vector<std::vector<int>> column_depths;  // token depths per column, ascending
    SurplusVector surplus;
    std::vector<char> solved;

    static BirdState from_problem(const Problem &problem);
};

// Transfer event for `column`: its own band residents are mandatory, its own
// reservoir tokens plus every other column's reservoir tokens form the
// optional pool.  Band residents of other columns never enter the pool.
VirtualEvent build_generalized_instance(const BirdState &state, int column);

// Columns are filled one event each: non-deficit columns ascending, then
// deficit columns ascending.  `solved_order`, when non-null, receives that
// fill order.
Solution bird(const Problem &problem);
Solution bird(const Problem &problem, std::vector<int> *solved_order);

}  // namespace recon
