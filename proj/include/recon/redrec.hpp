#pragma once

#include <utility>
#include <vector>

#include "recon/path_system.hpp"
#include "recon/problem.hpp"
#include "recon/virtual_line.hpp"

namespace recon {

// ---------------------------------------------------------------------------
// Red-rec: column-redistribution heuristic for centered-band targets.
//
// Columns with no token deficit are solved in place by line assignment.
// Deficit columns are filled by pairing each with a surplus donor column and
// replaying a virtualized transfer; when a donor runs out before its receiver
// is full, the donor's leftover tokens are marked for that receiver and ride
// along with a later transfer, so every token still moves at most once.
// ---------------------------------------------------------------------------

// A token set aside for a receiver column that is not yet full; it stays on
// its cell until that receiver's transfer event flushes it.
struct DelayedMark {
    Vertex vertex = -1;
    int destination_column = -1;
};

// Mutable pairing-loop state.  `surplus` counts marks toward their
// destination column, matching the pairing rules rather than raw occupancy.
struct RedRecState {
    Geometry geometry;
    BandSpec band;
    std::vector<std::vector<int>> column_depths;  // unmarked token depths per column, ascending
    std::vector<std::vector<DelayedMark>> marks_for;  // parked tokens per receiver column
    SurplusVector surplus;
    std::vector<char> solved;

    static RedRecState from_problem(const Problem &problem);
};

// Best admissible donor/receiver pair: every column strictly between the two
// must already be solved with zero surplus.  Ranking maximizes the
// exchangeable amount min(sigma_d, -sigma_r); ties prefer the closer pair,
// then the receiver left nearest to full, then the lower receiver index, then
// the lower donor index.  Throws std::logic_error when no admissible pair
// exists while a deficit column remains.
std::pair<int, int> select_best_pair(const RedRecState &state);

// The transfer instance for one donor/receiver event: the receiver's own
// tokens and its pending marks are mandatory sources, the donor's reservoir
// tokens an optional pool.  donor < 0 builds a marks-only flush; an already
// solved receiver yields an empty event.
VirtualEvent build_redistribution_instance(int donor, int receiver, const RedRecState &state);

// One solver event, for introspection and tests.  Every column is the
// `column` of exactly one event: a plain compaction has donor and
// mark_destination unset; a transfer fills `column` from `donor`; a donating
// compaction parks its leftovers as marks for `mark_destination`.
struct RedRecEvent {
    int event_id = -1;
    int column = -1;            // column whose band this event fills
    int donor = -1;             // reservoir pool drawn from, if any
    int mark_destination = -1;  // receiver the leftovers are marked for, if any
};

Solution red_rec(const Problem &problem);
Solution red_rec(const Problem &problem, std::vector<RedRecEvent> *events);

}  // namespace recon
