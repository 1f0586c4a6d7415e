#pragma once

#include <array>
#include <cassert>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace recon {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

// malformed input: out-of-bounds vertices, duplicate tokens, bad files
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// |S| < |T|, or a solver cannot saturate the targets
struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// a scheduled move enters an occupied vertex or leaves an empty one
struct CollisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Vertices
// ---------------------------------------------------------------------------

using Vertex = int32_t;  // flat vertex id, column-major

struct Vec2 {
    int x = 0;
    int y = 0;

    friend bool operator==(const Vec2 &a, const Vec2 &b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(const Vec2 &a, const Vec2 &b) { return !(a == b); }
    friend bool operator<(const Vec2 &a, const Vec2 &b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    }
};

inline int manhattan_distance(Vec2 u, Vec2 v) {
    return std::abs(u.x - v.x) + std::abs(u.y - v.y);
}

enum class GeomKind { chain, grid };

// W x H grid graph; a chain is the W x 1 special case.  Vertices are addressed
// as (x, y) with columns indexed left to right and rows bottom to top; the
// top-down row convention used by the diagonal remapping is exposed through
// row_from_top so the two never get mixed up silently.
struct Geometry {
    GeomKind kind = GeomKind::chain;
    int width = 1;
    int height = 1;

    static Geometry chain(int n) {
        if (n <= 0) throw InputError("chain length must be positive");
        Geometry g;
        g.kind = GeomKind::chain;
        g.width = n;
        g.height = 1;
        return g;
    }

    static Geometry grid(int w, int h) {
        if (w <= 0 || h <= 0) throw InputError("grid dimensions must be positive");
        Geometry g;
        g.kind = h == 1 ? GeomKind::chain : GeomKind::grid;
        g.width = w;
        g.height = h;
        return g;
    }

    int size() const { return width * height; }

    bool in_bounds(Vec2 p) const {
        return p.x >= 0 && p.x < width && p.y >= 0 && p.y < height;
    }
    bool in_bounds(Vertex v) const { return v >= 0 && v < size(); }

    Vertex id(Vec2 p) const {
        assert(in_bounds(p));
        return static_cast<Vertex>(p.x * height + p.y);
    }
    Vertex id_checked(Vec2 p) const {
        if (!in_bounds(p))
            throw InputError("vertex (" + std::to_string(p.x) + "," + std::to_string(p.y) +
                             ") outside " + std::to_string(width) + "x" + std::to_string(height));
        return id(p);
    }

    Vec2 coords(Vertex v) const {
        assert(in_bounds(v));
        return Vec2{static_cast<int>(v) / height, static_cast<int>(v) % height};
    }

    int row_from_top(int y) const { return height - 1 - y; }
    int y_of_top_row(int r) const { return height - 1 - r; }

    // neighbor ids in fixed order up, down, left, right; -1 when off the grid
    std::array<Vertex, 4> neighbors(Vertex v) const {
        const Vec2 p = coords(v);
        std::array<Vertex, 4> out{-1, -1, -1, -1};
        if (p.y + 1 < height) out[0] = id({p.x, p.y + 1});
        if (p.y - 1 >= 0) out[1] = id({p.x, p.y - 1});
        if (p.x - 1 >= 0) out[2] = id({p.x - 1, p.y});
        if (p.x + 1 < width) out[3] = id({p.x + 1, p.y});
        return out;
    }

    bool adjacent(Vertex a, Vertex b) const {
        return manhattan_distance(coords(a), coords(b)) == 1;
    }
};

inline int manhattan_distance(const Geometry &g, Vertex u, Vertex v) {
    if (!g.in_bounds(u) || !g.in_bounds(v)) throw InputError("manhattan_distance: vertex out of bounds");
    return manhattan_distance(g.coords(u), g.coords(v));
}

enum class StepPolicy { vertical_first, horizontal_first };

// monotone staircase from u to v with a single bend
std::vector<Vec2> shortest_path(Vec2 u, Vec2 v, StepPolicy policy = StepPolicy::vertical_first);

}  // namespace recon
