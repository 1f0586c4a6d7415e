#pragma once

#include <utility>
#include <vector>

#include "recon/geometry.hpp"

namespace recon {

// 1D orientation of a path: right means target index > source index on the
// line; isolated paths have zero length (the token is already in place).
enum class Orientation { right, left, isolated };

struct Path {
    std::vector<Vertex> vertices;  // v0 .. vl, consecutive vertices adjacent
    Orientation orientation = Orientation::isolated;

    // accounting labels, used by batching/simulation overlays
    int event_id = -1;    // solver emission event this path belongs to
    int src_column = -1;  // column the token is extracted from
    int dst_column = -1;  // column the token is implanted in

    Vertex source() const { return vertices.front(); }
    Vertex target() const { return vertices.back(); }
    int length() const { return static_cast<int>(vertices.size()) - 1; }
};

struct ElementaryMove {
    Vertex from = -1;
    Vertex to = -1;

    friend bool operator==(const ElementaryMove &a, const ElementaryMove &b) {
        return a.from == b.from && a.to == b.to;
    }
};

inline std::vector<ElementaryMove> moves_of(const Path &p) {
    std::vector<ElementaryMove> out;
    out.reserve(static_cast<size_t>(p.length()));
    for (size_t i = 0; i + 1 < p.vertices.size(); ++i)
        out.push_back({p.vertices[i], p.vertices[i + 1]});
    return out;
}

struct PathSystem {
    std::vector<Path> paths;

    long long weight() const {
        long long w = 0;
        for (const Path &p : paths) w += p.length();
        return w;
    }

    int displaced_count() const {
        int c = 0;
        for (const Path &p : paths) c += p.length() > 0 ? 1 : 0;
        return c;
    }
};

// Dependency DAG over paths: edge (i, j) means path i executes before path j.
struct MoveDag {
    int node_count = 0;
    std::vector<std::pair<int, int>> edges;

    void add_edge(int i, int j) { edges.emplace_back(i, j); }

    // Kahn topological order popping the smallest ready id first; throws
    // InputError when the edge set contains a cycle.
    std::vector<int> topo_order() const;
    bool is_acyclic() const;
};

struct SolutionStats {
    int displaced_tokens = 0;
    long long total_displacement = 0;
};

struct Solution {
    PathSystem path_system;
    std::vector<ElementaryMove> schedule;  // canonical linear extension of dag
    MoveDag dag;
    SolutionStats stats;
};

// assemble stats + flat schedule from an already ordered path list
Solution make_solution(PathSystem system, MoveDag dag, const std::vector<int> &path_order);

}  // namespace recon
