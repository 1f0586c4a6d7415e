#include "recon/executor.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>

namespace recon {

Configuration execute_schedule(const Geometry &g, Configuration config,
                               const std::vector<ElementaryMove> &schedule) {
    for (size_t i = 0; i < schedule.size(); ++i) {
        const ElementaryMove m = schedule[i];
        if (!g.in_bounds(m.from) || !g.in_bounds(m.to))
            throw InputError("move " + std::to_string(i) + " out of bounds");
        if (!g.adjacent(m.from, m.to))
            throw InputError("move " + std::to_string(i) + " is not elementary");
        if (!config.contains(m.from))
            throw CollisionError("move " + std::to_string(i) + ": source vertex " +
                                 std::to_string(m.from) + " is empty");
        if (config.contains(m.to))
            throw CollisionError("move " + std::to_string(i) + ": destination vertex " +
                                 std::to_string(m.to) + " is occupied");
        config.remove(m.from);
        config.add(m.to);
    }
    return config;
}

std::string ValidationReport::summary() const {
    if (pass) return "pass";
    std::ostringstream os;
    os << "fail:";
    for (const auto &f : failures) os << " [" << f << "]";
    return os.str();
}

namespace {

void check_paths(const Problem &problem, const PathSystem &system, ValidationReport &report) {
    const Geometry &g = problem.geometry;
    std::vector<char> seen_source(static_cast<size_t>(g.size()), 0);
    std::vector<char> seen_target(static_cast<size_t>(g.size()), 0);
    std::vector<int> stamp(static_cast<size_t>(g.size()), -1);
    for (size_t i = 0; i < system.paths.size(); ++i) {
        const Path &p = system.paths[i];
        if (p.vertices.empty()) {
            report.fail("path " + std::to_string(i) + " has no vertices");
            continue;
        }
        bool ok = true;
        for (size_t k = 0; k < p.vertices.size() && ok; ++k) {
            const Vertex v = p.vertices[k];
            if (!g.in_bounds(v)) {
                report.fail("path " + std::to_string(i) + " leaves the grid");
                ok = false;
                break;
            }
            if (stamp[static_cast<size_t>(v)] == static_cast<int>(i)) {
                report.fail("path " + std::to_string(i) + " repeats vertex " + std::to_string(v));
                ok = false;
                break;
            }
            stamp[static_cast<size_t>(v)] = static_cast<int>(i);
            if (k > 0 && !g.adjacent(p.vertices[k - 1], v)) {
                report.fail("path " + std::to_string(i) + " has a non-adjacent step");
                ok = false;
            }
        }
        if (!ok) continue;
        if (p.length() != manhattan_distance(g, p.source(), p.target()))
            report.fail("path " + std::to_string(i) + " is not a shortest path");
        if (seen_source[static_cast<size_t>(p.source())])
            report.fail("two paths share source vertex " + std::to_string(p.source()));
        if (seen_target[static_cast<size_t>(p.target())])
            report.fail("two paths share target vertex " + std::to_string(p.target()));
        seen_source[static_cast<size_t>(p.source())] = 1;
        seen_target[static_cast<size_t>(p.target())] = 1;
    }
}

}  // namespace

std::optional<ScheduleMatch> match_schedule(const PathSystem &system,
                                            const std::vector<ElementaryMove> &schedule,
                                            ValidationReport &report) {
    const size_t n_paths = system.paths.size();
    ScheduleMatch match;
    match.path_of_move.assign(schedule.size(), -1);
    match.starts_path.assign(schedule.size(), 0);
    match.first_move.assign(n_paths, -1);
    match.last_move.assign(n_paths, -1);

    std::vector<size_t> next_edge(n_paths, 0);
    std::map<Vertex, std::vector<int>> pending;  // from-vertex -> path ids
    for (size_t i = 0; i < n_paths; ++i)
        if (system.paths[i].length() > 0)
            pending[system.paths[i].source()].push_back(static_cast<int>(i));

    for (size_t mi = 0; mi < schedule.size(); ++mi) {
        const ElementaryMove m = schedule[mi];
        auto it = pending.find(m.from);
        int matched = -1;
        if (it != pending.end()) {
            for (int pid : it->second) {
                const size_t k = next_edge[static_cast<size_t>(pid)];
                if (system.paths[static_cast<size_t>(pid)].vertices[k + 1] == m.to) {
                    matched = pid;
                    break;
                }
            }
        }
        if (matched < 0) {
            report.fail("scheduled move " + std::to_string(mi) + " (" + std::to_string(m.from) +
                        "->" + std::to_string(m.to) + ") matches no pending path edge");
            return std::nullopt;
        }
        auto &ids = it->second;
        ids.erase(std::find(ids.begin(), ids.end(), matched));
        if (ids.empty()) pending.erase(it);

        match.path_of_move[mi] = matched;
        if (match.first_move[static_cast<size_t>(matched)] < 0) {
            match.first_move[static_cast<size_t>(matched)] = static_cast<int>(mi);
            match.starts_path[mi] = 1;
        }
        match.last_move[static_cast<size_t>(matched)] = static_cast<int>(mi);

        const size_t k = ++next_edge[static_cast<size_t>(matched)];
        const Path &p = system.paths[static_cast<size_t>(matched)];
        if (k + 1 < p.vertices.size()) pending[p.vertices[k]].push_back(matched);
    }
    for (size_t i = 0; i < n_paths; ++i) {
        if (system.paths[i].length() > 0 &&
            next_edge[i] != static_cast<size_t>(system.paths[i].length())) {
            report.fail("path " + std::to_string(i) + " edges missing from the schedule");
            return std::nullopt;
        }
    }
    return match;
}

ValidationReport validate_solution(const Problem &problem, const Solution &solution) {
    ValidationReport report;
    const Geometry &g = problem.geometry;

    check_paths(problem, solution.path_system, report);

    if (!solution.dag.is_acyclic()) report.fail("dependency dag has a cycle");

    if (solution.stats.total_displacement != solution.path_system.weight())
        report.fail("stats.total_displacement does not equal path-system weight");
    if (solution.stats.displaced_tokens != solution.path_system.displaced_count())
        report.fail("stats.displaced_tokens does not equal displaced path count");
    if (static_cast<long long>(solution.schedule.size()) != solution.path_system.weight())
        report.fail("schedule length does not equal path-system weight");
    if (!report.pass) return report;

    Configuration final_config(g.size());
    try {
        final_config = execute_schedule(g, problem.sources, solution.schedule);
    } catch (const std::runtime_error &e) {
        report.fail(std::string("execution failed: ") + e.what());
        return report;
    }
    if (!final_config.contains_all(problem.targets))
        report.fail("final configuration does not cover all targets");

    auto match = match_schedule(solution.path_system, solution.schedule, report);
    if (!match) return report;

    // path-level linear extension: all of P_i precedes all of P_j for edge i->j
    for (const auto &[i, j] : solution.dag.edges) {
        const int li = match->last_move[static_cast<size_t>(i)];
        const int fj = match->first_move[static_cast<size_t>(j)];
        if (li >= 0 && fj >= 0 && li > fj) {
            report.fail("schedule violates dag edge " + std::to_string(i) + "->" +
                        std::to_string(j));
            break;
        }
    }
    return report;
}

ValidationReport check_one_move_per_token(const Problem &problem, const Solution &solution) {
    ValidationReport report;
    auto match = match_schedule(solution.path_system, solution.schedule, report);
    if (!match) return report;

    // follow token identities through the execution; a token may begin at most
    // one path (being some other path's eventual target vertex is fine as long
    // as the occupant left first, which the identity tracking captures)
    const Geometry &g = problem.geometry;
    std::vector<int> token_at(static_cast<size_t>(g.size()), -1);
    std::vector<char> token_began(static_cast<size_t>(problem.sources.count()), 0);
    {
        int next_token = 0;
        for (Vertex v : problem.sources.vertices()) token_at[static_cast<size_t>(v)] = next_token++;
    }
    for (size_t mi = 0; mi < solution.schedule.size(); ++mi) {
        const ElementaryMove m = solution.schedule[mi];
        const int tok = token_at[static_cast<size_t>(m.from)];
        if (tok < 0) {
            report.fail("move " + std::to_string(mi) + " from an empty vertex");
            return report;
        }
        if (match->starts_path[mi]) {
            if (token_began[static_cast<size_t>(tok)]) {
                report.fail("token " + std::to_string(tok) + " begins a second path at move " +
                            std::to_string(mi));
                return report;
            }
            token_began[static_cast<size_t>(tok)] = 1;
        }
        token_at[static_cast<size_t>(m.from)] = -1;
        token_at[static_cast<size_t>(m.to)] = tok;
    }
    return report;
}

}  // namespace recon
