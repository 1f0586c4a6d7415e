#include "recon/aro.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <climits>
#include <numeric>
#include <optional>
#include <queue>
#include <unordered_map>
#include <unordered_set>

#include "recon/virtual_line.hpp"

namespace recon {

namespace {

// ---------------------------------------------------------------------------
// min-cost flow network
// ---------------------------------------------------------------------------

constexpr long long kInf = LLONG_MAX / 4;

struct Arc {
    int to = 0;
    int cap = 0;
    int cost = 0;
    size_t rev = 0;  // index of the reverse arc in adj[to]
};

struct FlowNetwork {
    int nodes = 0;
    std::vector<std::vector<Arc>> adj;

    explicit FlowNetwork(int n) : nodes(n), adj(static_cast<size_t>(n)) {}

    void add_arc(int u, int v, int cap, int cost) {
        adj[static_cast<size_t>(u)].push_back(Arc{v, cap, cost, adj[static_cast<size_t>(v)].size()});
        adj[static_cast<size_t>(v)].push_back(
            Arc{u, 0, -cost, adj[static_cast<size_t>(u)].size() - 1});
    }
};

long long edge_key(int size, Vertex a, Vertex b) {
    if (a > b) std::swap(a, b);
    return static_cast<long long>(a) * size + b;
}

// neighbor order fixed for reproducibility: up, down, left, right
std::array<Vec2, 4> neighbor_steps() {
    return {Vec2{0, 1}, Vec2{0, -1}, Vec2{-1, 0}, Vec2{1, 0}};
}

// Grid arcs doubled into both directions, unit cost, capacity |T|+1 (one more
// than any flow can use); super-source feeds S, T drains into the super-sink,
// both through unit-capacity unit-cost arcs.  `allowed`, when present,
// restricts which undirected grid edges exist.
FlowNetwork build_network(const Geometry &g, const std::vector<Vertex> &S,
                          const std::vector<Vertex> &T,
                          const std::unordered_set<long long> *allowed) {
    const int n = g.size();
    FlowNetwork net(n + 2);
    const int grid_cap = static_cast<int>(T.size()) + 1;
    for (Vertex u = 0; u < n; ++u) {
        const Vec2 p = g.coords(u);
        for (const Vec2 step : neighbor_steps()) {
            const Vec2 q{p.x + step.x, p.y + step.y};
            if (!g.in_bounds(q)) continue;
            const Vertex v = g.id(q);
            if (allowed && !allowed->count(edge_key(n, u, v))) continue;
            net.add_arc(u, v, grid_cap, 1);
        }
    }
    for (Vertex s : S) net.add_arc(n, s, 1, 1);
    for (Vertex t : T) net.add_arc(t, n + 1, 1, 1);
    return net;
}

// One successive-shortest-path augmentation: Dijkstra over reduced costs
// (kept non-negative by the potentials), deterministic tie-break on node id,
// then one unit of flow along the parent arcs.  False when t is unreachable.
bool augment(FlowNetwork &net, int s, int t, std::vector<long long> &potential) {
    const size_t n = static_cast<size_t>(net.nodes);
    std::vector<long long> dist(n, kInf);
    std::vector<std::pair<int, size_t>> parent(n, {-1, 0});  // (node, arc index)
    std::priority_queue<std::pair<long long, int>, std::vector<std::pair<long long, int>>,
                        std::greater<>>
        heap;
    dist[static_cast<size_t>(s)] = 0;
    heap.push({0, s});
    while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[static_cast<size_t>(u)]) continue;
        for (size_t ai = 0; ai < net.adj[static_cast<size_t>(u)].size(); ++ai) {
            const Arc &a = net.adj[static_cast<size_t>(u)][ai];
            if (a.cap <= 0) continue;
            const long long nd = d + a.cost + potential[static_cast<size_t>(u)] -
                                 potential[static_cast<size_t>(a.to)];
            if (nd < dist[static_cast<size_t>(a.to)]) {
                dist[static_cast<size_t>(a.to)] = nd;
                parent[static_cast<size_t>(a.to)] = {u, ai};
                heap.push({nd, a.to});
            }
        }
    }
    const long long reach = dist[static_cast<size_t>(t)];
    if (reach >= kInf) return false;
    // clamping unreached nodes at the sink distance keeps every residual arc's
    // reduced cost non-negative (arcs out of the reached set do not exist)
    for (size_t v = 0; v < n; ++v) potential[v] += std::min(dist[v], reach);
    for (int v = t; v != s;) {
        const auto [u, ai] = parent[static_cast<size_t>(v)];
        Arc &a = net.adj[static_cast<size_t>(u)][ai];
        a.cap -= 1;
        net.adj[static_cast<size_t>(a.to)][a.rev].cap += 1;
        v = u;
    }
    return true;
}

// Matched sources carry one unit each; walk the flow from each matched source,
// consuming arc flow, to recover the path system.  Two rules make the result
// executable with every token moving at most once:
//   - sources walk in topological order of the flow arcs (positive arc costs
//     keep a min-cost flow acyclic), so upstream units move through a vertex
//     before its own token's turn comes;
//   - a walk stops at the first vertex whose drain into the sink is untaken,
//     handing the rest of its flow to that vertex's own token.
// Consequences: no walk crosses a vertex some path later lands on, no walk
// crosses a resting token (a token the flow leaves in place is never on any
// route; a would-be crosser stops there and the resident walks on), and every
// ordering constraint between walks points backward in processing order.
std::optional<AssignmentResult> run_mcmf(const Geometry &g, const std::vector<Vertex> &S,
                                         const std::vector<Vertex> &T,
                                         const std::unordered_set<long long> *allowed) {
    const int n = g.size();
    FlowNetwork net = build_network(g, S, T, allowed);
    std::vector<long long> potential(static_cast<size_t>(net.nodes), 0);
    for (size_t unit = 0; unit < T.size(); ++unit)
        if (!augment(net, n, n + 1, potential)) return std::nullopt;

    // units on each forward grid arc: capacity minus what remains
    const int grid_cap = static_cast<int>(T.size()) + 1;
    std::vector<std::vector<int>> flow(static_cast<size_t>(n));
    for (Vertex u = 0; u < n; ++u) {
        flow[static_cast<size_t>(u)].assign(net.adj[static_cast<size_t>(u)].size(), 0);
        for (size_t ai = 0; ai < net.adj[static_cast<size_t>(u)].size(); ++ai) {
            const Arc &a = net.adj[static_cast<size_t>(u)][ai];
            if (a.to < n && a.cost == 1) flow[static_cast<size_t>(u)][ai] = grid_cap - a.cap;
        }
    }
    std::vector<char> drains(static_cast<size_t>(n), 0);
    for (Vertex t : T)
        for (const Arc &a : net.adj[static_cast<size_t>(t)])
            if (a.to == n + 1 && a.cap == 0) drains[static_cast<size_t>(t)] = 1;

    // vertex order along the flow: Kahn with ascending ids among the ready
    std::vector<int> indegree(static_cast<size_t>(n), 0);
    for (Vertex u = 0; u < n; ++u)
        for (size_t ai = 0; ai < flow[static_cast<size_t>(u)].size(); ++ai)
            if (flow[static_cast<size_t>(u)][ai] > 0)
                ++indegree[static_cast<size_t>(net.adj[static_cast<size_t>(u)][ai].to)];
    std::vector<int> rank(static_cast<size_t>(n), 0);
    {
        std::priority_queue<int, std::vector<int>, std::greater<>> ready;
        for (Vertex v = 0; v < n; ++v)
            if (indegree[static_cast<size_t>(v)] == 0) ready.push(v);
        int next_rank = 0;
        while (!ready.empty()) {
            const Vertex u = ready.top();
            ready.pop();
            rank[static_cast<size_t>(u)] = next_rank++;
            for (size_t ai = 0; ai < flow[static_cast<size_t>(u)].size(); ++ai)
                if (flow[static_cast<size_t>(u)][ai] > 0 &&
                    --indegree[static_cast<size_t>(net.adj[static_cast<size_t>(u)][ai].to)] == 0)
                    ready.push(net.adj[static_cast<size_t>(u)][ai].to);
        }
        assert(next_rank == n && "flow arcs must be acyclic");
    }
    std::vector<Vertex> matched;
    for (const Arc &a : net.adj[static_cast<size_t>(n)])
        if (a.cap == 0) matched.push_back(a.to);
    std::sort(matched.begin(), matched.end(), [&](Vertex a, Vertex b) {
        return rank[static_cast<size_t>(a)] < rank[static_cast<size_t>(b)];
    });

    const auto outflow_left = [&](Vertex u) {
        for (size_t ai = 0; ai < flow[static_cast<size_t>(u)].size(); ++ai)
            if (flow[static_cast<size_t>(u)][ai] > 0) return true;
        return false;
    };

    AssignmentResult out;
    for (Vertex start : matched) {
        Vertex u = start;
        Path path;
        path.vertices.push_back(u);
        if (!(drains[static_cast<size_t>(u)] && !outflow_left(u))) {
            while (true) {
                bool stepped = false;
                auto &row = net.adj[static_cast<size_t>(u)];
                for (size_t ai = 0; ai < row.size() && !stepped; ++ai) {
                    if (flow[static_cast<size_t>(u)][ai] <= 0) continue;
                    flow[static_cast<size_t>(u)][ai] -= 1;
                    u = row[ai].to;
                    path.vertices.push_back(u);
                    stepped = true;
                }
                assert(stepped && "flow walk must progress until it drains");
                if (!stepped) return std::nullopt;
                if (drains[static_cast<size_t>(u)]) break;
            }
        }
        drains[static_cast<size_t>(u)] = 0;
        path.orientation = path.length() == 0 ? Orientation::isolated
                           : path.target() > path.source() ? Orientation::right
                                                           : Orientation::left;
        path.src_column = g.coords(path.source()).x;
        path.dst_column = g.coords(path.target()).x;
        out.weight += path.length();
        out.matching.emplace_back(path.source(), path.target());
        out.system.paths.push_back(std::move(path));
    }
    if (out.matching.size() != T.size()) return std::nullopt;
    return out;
}

std::vector<std::pair<Vertex, Vertex>> distinct_edges(const PathSystem &system) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (const Path &p : system.paths)
        for (size_t i = 0; i + 1 < p.vertices.size(); ++i) {
            Vertex a = p.vertices[i], b = p.vertices[i + 1];
            if (a > b) std::swap(a, b);
            edges.emplace_back(a, b);
        }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

struct UnionFind {
    std::vector<int> parent;

    explicit UnionFind(int n) : parent(static_cast<size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    }
    // false when a and b were already connected
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[static_cast<size_t>(a)] = b;
        return true;
    }
};

bool edges_form_forest(const std::vector<std::pair<Vertex, Vertex>> &edges, int n) {
    UnionFind uf(n);
    for (const auto &[a, b] : edges)
        if (!uf.unite(a, b)) return false;
    return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// public operations
// ---------------------------------------------------------------------------

AssignmentResult mcmf_matching(const Geometry &g, const std::vector<Vertex> &S,
                               const std::vector<Vertex> &T) {
    auto res = run_mcmf(g, S, T, nullptr);
    if (!res) throw InfeasibleError("matching cannot saturate the targets (|S| < |T|)");
    return std::move(*res);
}

bool is_forest(const PathSystem &system) {
    int max_vertex = 0;
    for (const Path &p : system.paths)
        for (Vertex v : p.vertices) max_vertex = std::max(max_vertex, v);
    return edges_form_forest(distinct_edges(system), max_vertex + 1);
}

PathSystem reroute(const Geometry &g, const Configuration &sources, PathSystem system,
                   int budget) {
    std::vector<char> moving_src(static_cast<size_t>(g.size()), 0);
    for (const Path &p : system.paths)
        if (p.length() > 0) moving_src[static_cast<size_t>(p.source())] = 1;
    std::vector<char> parked(static_cast<size_t>(g.size()), 0);
    for (Vertex v : sources.vertices())
        if (!moving_src[static_cast<size_t>(v)]) parked[static_cast<size_t>(v)] = 1;

    const auto crossings = [&](const std::vector<Vertex> &vertices) {
        int c = 0;
        for (size_t i = 1; i + 1 < vertices.size(); ++i)
            if (parked[static_cast<size_t>(vertices[i])]) ++c;
        return c;
    };

    // per-path counts depend only on the fixed parked set, so one improving
    // pass reaches the fixed point; the second pass just confirms it
    bool changed = true;
    while (changed) {
        changed = false;
        for (Path &p : system.paths) {
            if (p.length() < 2) continue;
            const Vec2 a = g.coords(p.source()), b = g.coords(p.target());
            const int ax = std::abs(b.x - a.x), ay = std::abs(b.y - a.y);
            const int sx = b.x > a.x ? 1 : -1, sy = b.y > a.y ? 1 : -1;
            if (ax == 0 || ay == 0) continue;  // straight runs have one staircase

            int best = crossings(p.vertices);
            std::vector<char> steps(static_cast<size_t>(ax + ay), 0);
            std::fill(steps.begin() + ax, steps.end(), 1);  // 0 = x step, 1 = y step
            int tried = 0;
            do {
                if (best == 0 || ++tried > budget) break;
                std::vector<Vertex> vertices{p.source()};
                Vec2 at = a;
                for (char step : steps) {
                    if (step == 0)
                        at.x += sx;
                    else
                        at.y += sy;
                    vertices.push_back(g.id(at));
                }
                const int c = crossings(vertices);
                if (c < best) {
                    best = c;
                    p.vertices = std::move(vertices);
                    changed = true;
                }
            } while (std::next_permutation(steps.begin(), steps.end()));
        }
    }
    return system;
}

PathSystem break_cycles(const Geometry &g, const std::vector<Vertex> &S,
                        const std::vector<Vertex> &T, PathSystem system) {
    long long current = system.weight();
    while (true) {
        const auto edges = distinct_edges(system);
        if (edges_form_forest(edges, g.size())) return system;

        std::unordered_set<long long> allowed;
        for (const auto &[a, b] : edges) allowed.insert(edge_key(g.size(), a, b));

        bool accepted = false;
        for (const auto &[a, b] : edges) {  // ascending (x, y) endpoint order
            allowed.erase(edge_key(g.size(), a, b));
            auto res = run_mcmf(g, S, T, &allowed);
            if (res && res->weight <= current) {
                assert(distinct_edges(res->system).size() < edges.size());
                current = res->weight;
                system = std::move(res->system);
                accepted = true;
                break;
            }
            allowed.insert(edge_key(g.size(), a, b));
        }
        if (!accepted)
            throw InputError("cycle breaking found no deletable edge; path system is not valid");
    }
}

Solution order_moves_forest(const Geometry &g, const Configuration &sources,
                            const PathSystem &system) {
    // tokens no path moves sit still unless a crossing path shifts them
    std::vector<char> moving_src(static_cast<size_t>(g.size()), 0);
    for (const Path &p : system.paths)
        if (p.length() > 0) moving_src[static_cast<size_t>(p.source())] = 1;
    std::vector<char> parked(static_cast<size_t>(g.size()), 0);
    for (Vertex v : sources.vertices())
        if (!moving_src[static_cast<size_t>(v)]) parked[static_cast<size_t>(v)] = 1;

    // a path crossing parked tokens becomes a chain: each parked token shifts
    // forward to the next cut, the path's own token takes the first slot.
    // Every parked token is claimed by one path; later paths cross its cell
    // inside the vacate/land window the dependency rules leave open.
    std::vector<char> claimed(static_cast<size_t>(g.size()), 0);
    std::vector<Path> moves;
    for (const Path &p : system.paths) {
        if (p.length() == 0) continue;
        std::vector<size_t> cuts;
        for (size_t i = 1; i + 1 < p.vertices.size(); ++i) {
            const Vertex v = p.vertices[i];
            if (parked[static_cast<size_t>(v)] && !claimed[static_cast<size_t>(v)]) {
                claimed[static_cast<size_t>(v)] = 1;
                cuts.push_back(i);
            }
        }
        cuts.push_back(p.vertices.size() - 1);
        size_t start = 0;
        for (size_t cut : cuts) {
            Path seg;
            seg.vertices.assign(p.vertices.begin() + static_cast<long>(start),
                                p.vertices.begin() + static_cast<long>(cut) + 1);
            seg.orientation =
                seg.target() > seg.source() ? Orientation::right : Orientation::left;
            seg.src_column = g.coords(seg.source()).x;
            seg.dst_column = g.coords(seg.target()).x;
            moves.push_back(std::move(seg));
            start = cut;
        }
    }

    // necessary ordering constraints: leave a cell before anyone crosses it,
    // cross a cell before anyone lands on it
    std::unordered_map<Vertex, int> source_of, target_of;
    for (size_t i = 0; i < moves.size(); ++i) {
        source_of[moves[i].source()] = static_cast<int>(i);
        target_of[moves[i].target()] = static_cast<int>(i);
    }
    std::vector<std::pair<int, int>> edges;
    for (size_t i = 0; i < moves.size(); ++i)
        for (const Vertex v : moves[i].vertices) {
            const auto s = source_of.find(v);
            if (s != source_of.end() && s->second != static_cast<int>(i))
                edges.emplace_back(s->second, static_cast<int>(i));
            const auto t = target_of.find(v);
            if (t != target_of.end() && t->second != static_cast<int>(i))
                edges.emplace_back(static_cast<int>(i), t->second);
        }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::vector<std::vector<int>> out(moves.size());
    std::vector<int> indegree(moves.size(), 0);
    for (const auto &[a, b] : edges) {
        out[static_cast<size_t>(a)].push_back(b);
        ++indegree[static_cast<size_t>(b)];
    }
    std::priority_queue<int, std::vector<int>, std::greater<>> ready;
    for (size_t i = 0; i < moves.size(); ++i)
        if (indegree[i] == 0) ready.push(static_cast<int>(i));
    std::vector<Path> ordered;
    ordered.reserve(moves.size());
    while (!ready.empty()) {
        const int i = ready.top();
        ready.pop();
        moves[static_cast<size_t>(i)].event_id = static_cast<int>(ordered.size());
        ordered.push_back(std::move(moves[static_cast<size_t>(i)]));
        for (int j : out[static_cast<size_t>(i)])
            if (--indegree[static_cast<size_t>(j)] == 0) ready.push(j);
    }
    if (ordered.size() != moves.size())
        throw InputError("move ordering hit a dependency cycle; system is not valid cycle-free");

    return assemble_event_solution(std::move(ordered));
}

Solution aro(const Problem &problem) {
    const Geometry &g = problem.geometry;
    AssignmentResult base =
        mcmf_matching(g, problem.sources.vertices(), problem.targets.vertices());
    const long long optimum = base.weight;
    PathSystem sys = reroute(g, problem.sources, std::move(base.system));
    if (!is_forest(sys))
        sys = break_cycles(g, problem.sources.vertices(), problem.targets.vertices(),
                           std::move(sys));
    Solution sol = order_moves_forest(g, problem.sources, sys);
    assert(sol.stats.total_displacement == optimum);
    (void)optimum;
    return sol;
}

}  // namespace recon
