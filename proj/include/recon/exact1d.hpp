#pragma once

#include <utility>
#include <vector>

#include "recon/path_system.hpp"
#include "recon/problem.hpp"

namespace recon {

// Pairing of token positions to target positions on a line, sorted by target.
struct Matching1D {
    long long weight = 0;
    std::vector<std::pair<long long, long long>> pairs;  // (source pos, target pos)
    std::vector<int> use_count;  // tokens drawn per instance source (generalized form)
};

// Distance-minimizing assignment of distinct chain vertices S onto T, both
// within [0, n).  Exact; near-linear on typical instances via certified
// interval decomposition with a full dynamic-programming fallback.
Matching1D assign_1d(int n, std::vector<int> S, std::vector<int> T);

struct Generalized1DSource {
    long long pos = 0;     // line index; virtualized instances may leave [0, length)
    int multiplicity = 1;  // tokens available here
    int min_use = 0;       // tokens that must be drawn from here
};

// Line assignment with per-position token counts and usage bounds.  Virtual
// indices outside the physical line are allowed; length/offset describe how
// the line embeds into physical coordinates (metadata for callers).
struct Generalized1DInstance {
    int length = 0;
    long long offset = 0;
    std::vector<Generalized1DSource> sources;  // strictly increasing pos
    std::vector<long long> targets;            // strictly increasing
};

Matching1D assign_1d_generalized(const Generalized1DInstance &instance);

// Prefix balance Δ_i = |S ∩ [0, i]| − |T ∩ [0, i−1]| for i = 0..n−1.
std::vector<int> level_vector(int n, const std::vector<int> &S, const std::vector<int> &T);

// Exact minimum assignment cost without a witness, O(E log E); the optimality
// certificate behind the interval decomposition.
long long min_assignment_cost_1d(const std::vector<long long> &sources,
                                 const std::vector<long long> &targets);

struct Interval1D {
    int lo = 0, hi = 0;  // inclusive, trimmed to the occupied span
    std::vector<int> sources, targets;
};

// Splits the chain into independent sub-instances whose per-interval optima
// provably sum to the global optimum; intervals with no targets are dropped,
// and the split degenerates to one interval when no cut can be certified.
std::vector<Interval1D> decompose_1d(int n, const std::vector<int> &S,
                                     const std::vector<int> &T);

// Straight-line oriented paths from a chain matching.
std::vector<Path> paths_from_matching(const Geometry &g, const Matching1D &m);

// Re-pairs same-orientation paths so no path nests inside another; total
// weight is unchanged.  Input must not mix orientations on any vertex.
std::vector<Path> resolve_nesting(std::vector<Path> paths);

struct Ordering1D {
    std::vector<ElementaryMove> schedule;  // collision-free flat move order
    std::vector<int> path_order;           // execution order over path indices
    MoveDag dag;                           // edges exactly between vertex-sharing pairs
};

// Right-oriented paths by descending target, then left-oriented by ascending
// target; each path's steps run source to target.
Ordering1D order_moves_1d(const std::vector<Path> &paths);

// Execution order of oriented 1D intervals (source, target) under the same
// rule, without materializing paths; shared by the grid solvers.
std::vector<int> order_1d_intervals(const std::vector<std::pair<long long, long long>> &intervals);

// assign_1d -> paths -> resolve_nesting -> order_moves_1d, assembled.
Solution solve_1d(int n, const std::vector<int> &S, const std::vector<int> &T);

}  // namespace recon
