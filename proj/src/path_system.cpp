#include "recon/path_system.hpp"

#include <queue>

namespace recon {

std::vector<int> MoveDag::topo_order() const {
    std::vector<std::vector<int>> adj(static_cast<size_t>(node_count));
    std::vector<int> indeg(static_cast<size_t>(node_count), 0);
    for (const auto &[i, j] : edges) {
        if (i < 0 || i >= node_count || j < 0 || j >= node_count)
            throw InputError("dag edge endpoint out of range");
        adj[static_cast<size_t>(i)].push_back(j);
        ++indeg[static_cast<size_t>(j)];
    }
    std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
    for (int i = 0; i < node_count; ++i)
        if (indeg[static_cast<size_t>(i)] == 0) ready.push(i);
    std::vector<int> order;
    order.reserve(static_cast<size_t>(node_count));
    while (!ready.empty()) {
        const int i = ready.top();
        ready.pop();
        order.push_back(i);
        for (int j : adj[static_cast<size_t>(i)])
            if (--indeg[static_cast<size_t>(j)] == 0) ready.push(j);
    }
    if (static_cast<int>(order.size()) != node_count) throw InputError("dependency dag has a cycle");
    return order;
}

bool MoveDag::is_acyclic() const {
    try {
        topo_order();
    } catch (const InputError &) {
        return false;
    }
    return true;
}

Solution make_solution(PathSystem system, MoveDag dag, const std::vector<int> &path_order) {
    Solution sol;
    sol.stats.displaced_tokens = system.displaced_count();
    sol.stats.total_displacement = system.weight();
    sol.schedule.reserve(static_cast<size_t>(sol.stats.total_displacement));
    for (int idx : path_order) {
        const Path &p = system.paths[static_cast<size_t>(idx)];
        for (size_t i = 0; i + 1 < p.vertices.size(); ++i)
            sol.schedule.push_back({p.vertices[i], p.vertices[i + 1]});
    }
    sol.path_system = std::move(system);
    sol.dag = std::move(dag);
    return sol;
}

}  // namespace recon
