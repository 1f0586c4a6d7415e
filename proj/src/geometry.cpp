#include "recon/geometry.hpp"

namespace recon {

std::vector<Vec2> shortest_path(Vec2 u, Vec2 v, StepPolicy policy) {
    std::vector<Vec2> path;
    path.reserve(static_cast<size_t>(manhattan_distance(u, v)) + 1);
    path.push_back(u);
    const int dx = v.x > u.x ? 1 : -1;
    const int dy = v.y > u.y ? 1 : -1;
    Vec2 cur = u;
    auto walk_vertical = [&] {
        while (cur.y != v.y) {
            cur.y += dy;
            path.push_back(cur);
        }
    };
    auto walk_horizontal = [&] {
        while (cur.x != v.x) {
            cur.x += dx;
            path.push_back(cur);
        }
    };
    if (policy == StepPolicy::vertical_first) {
        walk_vertical();
        walk_horizontal();
    } else {
        walk_horizontal();
        walk_vertical();
    }
    return path;
}

}  // namespace recon
