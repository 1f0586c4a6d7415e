#include "recon/batching.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace recon {

BatchDir move_dir(const Geometry &g, ElementaryMove m) {
    const Vec2 a = g.coords(m.from), b = g.coords(m.to);
    if (b.y > a.y) return BatchDir::up;
    if (b.y < a.y) return BatchDir::down;
    if (b.x < a.x) return BatchDir::left;
    return BatchDir::right;
}

bool ConstraintSet::compatible(const Geometry &g, ElementaryMove a, ElementaryMove b) const {
    if (preset == ConstraintPreset::none) return true;
    const BatchDir da = move_dir(g, a), db = move_dir(g, b);
    if (da != db) return false;
    const Vec2 fa = g.coords(a.from), fb = g.coords(b.from);
    if (da == BatchDir::up || da == BatchDir::down) return fa.x == fb.x;  // same column
    return fa.y == fb.y;                                                 // same row
}

ConstraintSet deployed_constraint() { return ConstraintSet{ConstraintPreset::column_direction}; }

BatchSchedule batch_moves(const Problem &problem, const Solution &solution,
                          const BatchOptions &options) {
    const Geometry &g = problem.geometry;
    const PathSystem &system = solution.path_system;
    const size_t n_paths = system.paths.size();

    if (!solution.dag.is_acyclic()) throw InputError("batching requires an acyclic dependency dag");

    std::vector<std::vector<int>> succ(n_paths);
    std::vector<int> blockers(n_paths, 0);
    // edge-level release: for dag edge (i -> j), how many edges of P_i must be
    // consumed before P_j may start (everything up to P_i's last edge touching
    // a vertex of P_j)
    std::vector<std::vector<std::pair<int, size_t>>> release_at(n_paths);

    std::vector<char> touched(static_cast<size_t>(g.size()), 0);
    for (const auto &[i, j] : solution.dag.edges) {
        succ[static_cast<size_t>(i)].push_back(j);
        ++blockers[static_cast<size_t>(j)];
        if (options.edge_level) {
            const Path &pi = system.paths[static_cast<size_t>(i)];
            const Path &pj = system.paths[static_cast<size_t>(j)];
            for (Vertex v : pj.vertices) touched[static_cast<size_t>(v)] = 1;
            size_t need = 0;
            for (size_t k = 0; k + 1 < pi.vertices.size(); ++k)
                if (touched[static_cast<size_t>(pi.vertices[k])] ||
                    touched[static_cast<size_t>(pi.vertices[k + 1])])
                    need = k + 1;
            for (Vertex v : pj.vertices) touched[static_cast<size_t>(v)] = 0;
            release_at[static_cast<size_t>(j)].emplace_back(i, need);
        }
    }

    std::vector<size_t> next_edge(n_paths, 0);
    std::vector<size_t> edges_left(n_paths, 0);
    std::vector<char> done(n_paths, 0);
    size_t total_left = 0;

    std::vector<int> newly;
    auto finish_path = [&](int pid) {
        done[static_cast<size_t>(pid)] = 1;
        for (int j : succ[static_cast<size_t>(pid)])
            if (--blockers[static_cast<size_t>(j)] == 0) newly.push_back(j);
    };

    // zero-length paths have nothing to execute; complete them up front
    for (size_t i = 0; i < n_paths; ++i) {
        edges_left[i] = static_cast<size_t>(system.paths[i].length());
        total_left += edges_left[i];
        if (edges_left[i] == 0) finish_path(static_cast<int>(i));
    }
    std::set<int> ready;
    for (size_t i = 0; i < n_paths; ++i)
        if (!done[i] && blockers[i] == 0) ready.insert(static_cast<int>(i));
    newly.clear();

    auto edge_level_released = [&](size_t pid) {
        for (const auto &[pred, need] : release_at[pid])
            if (!done[static_cast<size_t>(pred)] && next_edge[static_cast<size_t>(pred)] < need)
                return false;
        return true;
    };

    Configuration occupancy = problem.sources;
    std::vector<char> in_batch(static_cast<size_t>(g.size()), 0);
    BatchSchedule out;

    while (total_left > 0) {
        Batch batch;
        std::vector<int> members;

        std::vector<int> queue;
        if (options.edge_level) {
            for (size_t i = 0; i < n_paths; ++i)
                if (!done[i] && edge_level_released(i)) queue.push_back(static_cast<int>(i));
        } else {
            queue.assign(ready.begin(), ready.end());
        }

        for (int pid : queue) {
            const Path &p = system.paths[static_cast<size_t>(pid)];
            const size_t k = next_edge[static_cast<size_t>(pid)];
            const ElementaryMove e{p.vertices[k], p.vertices[k + 1]};
            if (occupancy.contains(e.to)) continue;  // occupied before this batch
            if (in_batch[static_cast<size_t>(e.from)] || in_batch[static_cast<size_t>(e.to)])
                continue;
            bool ok = true;
            for (const ElementaryMove &other : batch.moves)
                if (!options.constraints.compatible(g, e, other)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            batch.moves.push_back(e);
            members.push_back(pid);
            in_batch[static_cast<size_t>(e.from)] = 1;
            in_batch[static_cast<size_t>(e.to)] = 1;
        }

        if (batch.moves.empty())
            throw InputError("batching made no progress (blocked dependency structure)");

        // atomic application: vacate every source, then fill every destination
        for (const ElementaryMove &m : batch.moves) {
            occupancy.remove(m.from);
            in_batch[static_cast<size_t>(m.from)] = 0;
            in_batch[static_cast<size_t>(m.to)] = 0;
        }
        for (const ElementaryMove &m : batch.moves) occupancy.add(m.to);

        for (int pid : members) {
            ++next_edge[static_cast<size_t>(pid)];
            --edges_left[static_cast<size_t>(pid)];
            --total_left;
            if (edges_left[static_cast<size_t>(pid)] == 0) {
                ready.erase(pid);
                finish_path(pid);
            }
        }
        for (size_t qi = 0; qi < newly.size(); ++qi) ready.insert(newly[qi]);
        newly.clear();

        if (options.constraints.preset != ConstraintPreset::none) {
            const BatchDir d = move_dir(g, batch.moves.front());
            batch.dir = d;
            batch.axis =
                (d == BatchDir::up || d == BatchDir::down) ? BatchAxis::col : BatchAxis::row;
        }
        out.batches.push_back(std::move(batch));
    }
    return out;
}

ValidationReport validate_batches(const Problem &problem, const Solution &solution,
                                  const BatchSchedule &schedule, const BatchOptions &options) {
    ValidationReport report;
    const Geometry &g = problem.geometry;

    // multiset conservation against the path-system edges
    std::map<std::pair<Vertex, Vertex>, long long> balance;
    for (const Path &p : solution.path_system.paths)
        for (size_t i = 0; i + 1 < p.vertices.size(); ++i)
            ++balance[{p.vertices[i], p.vertices[i + 1]}];
    for (const Batch &b : schedule.batches)
        for (const ElementaryMove &m : b.moves) --balance[{m.from, m.to}];
    for (const auto &[edge, count] : balance)
        if (count != 0) {
            report.fail("batched moves do not conserve the path-system edge multiset");
            break;
        }

    if (static_cast<long long>(schedule.batches.size()) > solution.path_system.weight())
        report.fail("more batches than elementary moves");

    Configuration occupancy = problem.sources;
    for (size_t bi = 0; bi < schedule.batches.size(); ++bi) {
        const Batch &b = schedule.batches[bi];
        if (b.moves.empty()) {
            report.fail("batch " + std::to_string(bi) + " is empty");
            continue;
        }
        std::vector<char> used(static_cast<size_t>(g.size()), 0);
        for (const ElementaryMove &m : b.moves) {
            if (!g.in_bounds(m.from) || !g.in_bounds(m.to) || !g.adjacent(m.from, m.to)) {
                report.fail("batch " + std::to_string(bi) + " contains a non-elementary move");
                return report;
            }
            if (used[static_cast<size_t>(m.from)] || used[static_cast<size_t>(m.to)]) {
                report.fail("batch " + std::to_string(bi) + " is not vertex-disjoint");
                return report;
            }
            used[static_cast<size_t>(m.from)] = 1;
            used[static_cast<size_t>(m.to)] = 1;
        }
        for (size_t i = 0; i < b.moves.size(); ++i)
            for (size_t j = i + 1; j < b.moves.size(); ++j)
                if (!options.constraints.compatible(g, b.moves[i], b.moves[j])) {
                    report.fail("batch " + std::to_string(bi) + " violates the constraint set");
                    i = b.moves.size();
                    break;
                }
        // simultaneous execution: every source occupied and every destination
        // free before the batch fires
        for (const ElementaryMove &m : b.moves) {
            if (!occupancy.contains(m.from)) {
                report.fail("batch " + std::to_string(bi) + " moves a token from an empty vertex");
                return report;
            }
            if (occupancy.contains(m.to)) {
                report.fail("batch " + std::to_string(bi) +
                            " moves into a vertex occupied before the batch");
                return report;
            }
        }
        for (const ElementaryMove &m : b.moves) occupancy.remove(m.from);
        for (const ElementaryMove &m : b.moves) occupancy.add(m.to);
    }
    if (!occupancy.contains_all(problem.targets))
        report.fail("batched execution does not cover all targets");
    if (!report.pass) return report;

    // dependency respect: for dag edge (i -> j), no move of P_j may land in a
    // batch before the batch holding P_i's first move
    std::vector<ElementaryMove> flat;
    std::vector<size_t> batch_of_move;
    flat.reserve(schedule.move_count());
    for (size_t bi = 0; bi < schedule.batches.size(); ++bi)
        for (const ElementaryMove &m : schedule.batches[bi].moves) {
            flat.push_back(m);
            batch_of_move.push_back(bi);
        }
    auto match = match_schedule(solution.path_system, flat, report);
    if (!match) return report;
    for (const auto &[i, j] : solution.dag.edges) {
        const int fi = match->first_move[static_cast<size_t>(i)];
        const int fj = match->first_move[static_cast<size_t>(j)];
        if (fi >= 0 && fj >= 0 && batch_of_move[static_cast<size_t>(fj)] <
                                      batch_of_move[static_cast<size_t>(fi)]) {
            report.fail("batch order violates dag edge " + std::to_string(i) + "->" +
                        std::to_string(j));
            break;
        }
    }
    return report;
}

}  // namespace recon
