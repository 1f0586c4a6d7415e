#pragma once

#include <vector>

#include "recon/executor.hpp"
#include "recon/path_system.hpp"
#include "recon/problem.hpp"

namespace recon {

enum class BatchAxis { none, col, row };
enum class BatchDir { none, up, down, left, right };

struct Batch {
    std::vector<ElementaryMove> moves;  // pairwise vertex-disjoint
    BatchAxis axis = BatchAxis::none;   // tag from the deployed constraint
    BatchDir dir = BatchDir::none;
};

struct BatchSchedule {
    std::vector<Batch> batches;

    size_t move_count() const {
        size_t n = 0;
        for (const Batch &b : batches) n += b.moves.size();
        return n;
    }
};

enum class ConstraintPreset { none, column_direction };

// Local (pairwise) batch-admissibility constraints.  The deployed preset
// accepts two moves only when they share a column and both go up or both go
// down, or share a row and both go left or both go right.
struct ConstraintSet {
    ConstraintPreset preset = ConstraintPreset::none;

    bool compatible(const Geometry &g, ElementaryMove a, ElementaryMove b) const;
};

ConstraintSet deployed_constraint();  // column_direction

BatchDir move_dir(const Geometry &g, ElementaryMove m);

struct BatchOptions {
    ConstraintSet constraints;
    // When set, a path joins the ready queue as soon as every dependency
    // predecessor has consumed all edges touching this path's vertices,
    // instead of waiting for predecessors to finish entirely.  Off by default.
    bool edge_level = false;
};

// Groups the solution's moves into simultaneous batches: per iteration, scan
// ready paths in ascending id, take each path's next edge when its destination
// is unoccupied in the configuration before the batch, it is vertex-disjoint
// from the batch so far, and it is pairwise compatible under the constraints.
// Batches execute atomically; exhausted paths release their dependents.
BatchSchedule batch_moves(const Problem &problem, const Solution &solution,
                          const BatchOptions &options = {});

// Replays a batch schedule: checks move-multiset conservation against the
// path system, per-batch vertex-disjointness and constraint compliance,
// simultaneous-execution safety, and the batch-count bound.
ValidationReport validate_batches(const Problem &problem, const Solution &solution,
                                  const BatchSchedule &schedule, const BatchOptions &options = {});

}  // namespace recon
