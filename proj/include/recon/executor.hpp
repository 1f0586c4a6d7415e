#pragma once

#include <optional>
#include <string>
#include <vector>

#include "recon/path_system.hpp"
#include "recon/problem.hpp"

namespace recon {

// Applies moves in order.  Throws CollisionError when a move's source is empty
// or its destination occupied at execution time, InputError on a non-adjacent
// or out-of-bounds move.
Configuration execute_schedule(const Geometry &g, Configuration config,
                               const std::vector<ElementaryMove> &schedule);

struct ValidationReport {
    bool pass = true;
    std::vector<std::string> failures;

    void fail(std::string why) {
        pass = false;
        failures.push_back(std::move(why));
    }
    std::string summary() const;
};

// Full solution check: path-system invariants (distinct sources/targets,
// shortest staircase paths), collision-free execution from problem.sources,
// final configuration covering T, schedule multiset equal to the path-system
// edge multiset, schedule a path-level linear extension of the dag, and
// stats consistency.
ValidationReport validate_solution(const Problem &problem, const Solution &solution);

// Extra guarantee some solvers provide: every token is displaced at most once
// (no path starts where another path ended, and all path sources are occupied
// in the initial configuration).
ValidationReport check_one_move_per_token(const Problem &problem, const Solution &solution);

// Attribution of a flat move list to the paths that own each move.  Succeeds
// exactly when the list is a permutation of the path-system edges consistent
// with per-path edge order; the match is unique for any collision-free order
// because pending path fronts always sit on distinct vertices.
struct ScheduleMatch {
    std::vector<int> path_of_move;  // move index -> path id
    std::vector<char> starts_path;  // move index -> move is its path's first edge
    std::vector<int> first_move;    // path id -> move index of first edge (-1 if none)
    std::vector<int> last_move;     // path id -> move index of last edge
};

std::optional<ScheduleMatch> match_schedule(const PathSystem &system,
                                            const std::vector<ElementaryMove> &moves,
                                            ValidationReport &report);

}  // namespace recon
