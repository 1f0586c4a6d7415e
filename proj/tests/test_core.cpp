#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <set>

#include "doctest.h"
#include "recon/executor.hpp"
#include "recon/path_system.hpp"
#include "recon/problem.hpp"
#include "recon/rng.hpp"

using namespace recon;

// ---------------------------------------------------------------------------
// geometry
// ---------------------------------------------------------------------------

TEST_CASE("manhattan distance") {
    CHECK(manhattan_distance(Vec2{0, 0}, Vec2{2, 3}) == 5);
    CHECK(manhattan_distance(Vec2{1, 4}, Vec2{1, 0}) == 4);
    CHECK(manhattan_distance(Vec2{3, 3}, Vec2{3, 3}) == 0);

    const Geometry g = Geometry::grid(4, 5);
    CHECK(manhattan_distance(g, g.id({0, 0}), g.id({2, 3})) == 5);
    CHECK_THROWS_AS(manhattan_distance(g, 0, g.size()), InputError);
}

TEST_CASE("geometry addressing") {
    const Geometry g = Geometry::grid(3, 4);
    CHECK(g.size() == 12);
    for (Vertex v = 0; v < g.size(); ++v) CHECK(g.id(g.coords(v)) == v);
    CHECK(g.id({1, 0}) == 4);  // column-major
    CHECK(!g.in_bounds(Vec2{3, 0}));
    CHECK(!g.in_bounds(Vec2{0, -1}));
    CHECK_THROWS_AS(g.id_checked(Vec2{3, 0}), InputError);

    const Geometry c = Geometry::chain(6);
    CHECK(c.kind == GeomKind::chain);
    CHECK(c.height == 1);
    CHECK(Geometry::grid(6, 1).kind == GeomKind::chain);
    CHECK(Geometry::grid(2, 2).kind == GeomKind::grid);
    CHECK_THROWS_AS(Geometry::chain(0), InputError);

    CHECK(g.row_from_top(3) == 0);
    CHECK(g.row_from_top(0) == 3);
    CHECK(g.y_of_top_row(0) == 3);
}

TEST_CASE("geometry neighbors in fixed order") {
    const Geometry g = Geometry::grid(3, 3);
    const auto nb = g.neighbors(g.id({1, 1}));
    CHECK(nb[0] == g.id({1, 2}));  // up
    CHECK(nb[1] == g.id({1, 0}));  // down
    CHECK(nb[2] == g.id({0, 1}));  // left
    CHECK(nb[3] == g.id({2, 1}));  // right

    const auto corner = g.neighbors(g.id({0, 0}));
    CHECK(corner[0] == g.id({0, 1}));
    CHECK(corner[1] == -1);
    CHECK(corner[2] == -1);
    CHECK(corner[3] == g.id({1, 0}));

    CHECK(g.adjacent(g.id({0, 0}), g.id({0, 1})));
    CHECK(!g.adjacent(g.id({0, 0}), g.id({1, 1})));
    CHECK(!g.adjacent(g.id({0, 0}), g.id({0, 0})));
}

TEST_CASE("shortest path staircases") {
    const auto v = shortest_path({0, 0}, {1, 1}, StepPolicy::vertical_first);
    CHECK(v == std::vector<Vec2>{{0, 0}, {0, 1}, {1, 1}});

    const auto h = shortest_path({0, 0}, {1, 1}, StepPolicy::horizontal_first);
    CHECK(h == std::vector<Vec2>{{0, 0}, {1, 0}, {1, 1}});

    CHECK(shortest_path({2, 2}, {2, 2}) == std::vector<Vec2>{{2, 2}});

    const auto line = shortest_path({4, 0}, {1, 0});
    CHECK(line == std::vector<Vec2>{{4, 0}, {3, 0}, {2, 0}, {1, 0}});

    const auto down = shortest_path({3, 4}, {1, 1}, StepPolicy::vertical_first);
    CHECK(down.size() == 6);
    CHECK(down.front() == Vec2{3, 4});
    CHECK(down[3] == Vec2{3, 1});  // vertical leg first
    CHECK(down.back() == Vec2{1, 1});
    for (size_t i = 0; i + 1 < down.size(); ++i)
        CHECK(manhattan_distance(down[i], down[i + 1]) == 1);
}

// ---------------------------------------------------------------------------
// configuration / problem
// ---------------------------------------------------------------------------

TEST_CASE("configuration occupancy") {
    Configuration c(5);
    CHECK(c.empty());
    c.add(3);
    c.add(1);
    CHECK(c.count() == 2);
    CHECK(c.contains(1));
    CHECK(!c.contains(2));
    CHECK(!c.contains(-1));
    CHECK(!c.contains(5));
    CHECK(c.vertices() == std::vector<Vertex>{1, 3});
    CHECK_THROWS_AS(c.add(1), InputError);
    CHECK_THROWS_AS(c.add(5), InputError);
    c.remove(1);
    CHECK(!c.contains(1));
    CHECK_THROWS_AS(c.remove(1), InputError);

    const Configuration all = Configuration::from_vertices(5, {1, 3});
    Configuration sub = Configuration::from_vertices(5, {3});
    CHECK(all.contains_all(sub));
    CHECK(!sub.contains_all(all));
    CHECK(all == Configuration::from_vertices(5, {3, 1}));
}

TEST_CASE("centered target region") {
    const Geometry g = Geometry::grid(4, 5);
    const TargetRegion band{1};
    CHECK(band.row_lo(g) == 2);
    CHECK(band.row_hi(g) == 2);

    const TargetRegion two{2};
    CHECK(two.row_lo(g) == 1);  // floor((5-2)/2)
    CHECK(two.row_hi(g) == 2);

    const Configuration t = band.expand(g);
    CHECK(t.count() == 4);
    for (int x = 0; x < 4; ++x) CHECK(t.contains(g.id({x, 2})));

    CHECK_THROWS_AS(TargetRegion{0}.expand(g), InputError);
    CHECK_THROWS_AS(TargetRegion{5}.expand(g), InputError);
}

TEST_CASE("problem feasibility gate") {
    const Geometry g = Geometry::chain(4);
    CHECK_NOTHROW(Problem::make(g, {0, 3}, {1, 2}));
    CHECK_THROWS_AS(Problem::make(g, {0}, {1, 2}), InfeasibleError);

    const Geometry grid = Geometry::grid(4, 5);
    const Problem p = Problem::make_centered(grid, {0, 1, 2, 3, 4}, 1);
    CHECK(p.targets.count() == 4);
    CHECK(p.target_region.has_value());
}

// ---------------------------------------------------------------------------
// schedule execution
// ---------------------------------------------------------------------------

TEST_CASE("execute schedule moves tokens") {
    const Geometry g = Geometry::chain(4);
    const Configuration start = Configuration::from_vertices(4, {0, 3});
    const Configuration out = execute_schedule(g, start, {{0, 1}, {1, 2}});
    CHECK(out == Configuration::from_vertices(4, {2, 3}));
}

TEST_CASE("execute schedule rejects collisions") {
    const Geometry g = Geometry::chain(4);
    const Configuration start = Configuration::from_vertices(4, {0, 1});
    // destination occupied
    CHECK_THROWS_AS(execute_schedule(g, start, {{0, 1}}), CollisionError);
    // source empty
    CHECK_THROWS_AS(execute_schedule(g, start, {{2, 3}}), CollisionError);
    // non-adjacent
    CHECK_THROWS_AS(execute_schedule(g, start, {{1, 3}}), InputError);
    // out of bounds
    CHECK_THROWS_AS(execute_schedule(g, start, {{3, 4}}), InputError);
}

// ---------------------------------------------------------------------------
// move dag
// ---------------------------------------------------------------------------

TEST_CASE("topological order pops smallest ready id") {
    MoveDag d;
    d.node_count = 4;
    d.add_edge(3, 1);
    d.add_edge(1, 0);
    CHECK(d.topo_order() == std::vector<int>{2, 3, 1, 0});
    CHECK(d.is_acyclic());

    MoveDag cyc;
    cyc.node_count = 2;
    cyc.add_edge(0, 1);
    cyc.add_edge(1, 0);
    CHECK(!cyc.is_acyclic());
    CHECK_THROWS_AS(cyc.topo_order(), InputError);
}

// ---------------------------------------------------------------------------
// solution assembly + validation
// ---------------------------------------------------------------------------

namespace {

Solution two_path_chain_solution() {
    // chain 0..4, tokens at 2 and 1 moving right: path 0 = 2->3, path 1 = 1->2
    PathSystem ps;
    ps.paths.push_back({{2, 3}, Orientation::right, 0, -1, -1});
    ps.paths.push_back({{1, 2}, Orientation::right, 0, -1, -1});
    MoveDag dag;
    dag.node_count = 2;
    dag.add_edge(0, 1);  // vacate 2 before entering it
    return make_solution(ps, dag, {0, 1});
}

}  // namespace

TEST_CASE("make_solution flattens paths in order") {
    const Solution s = two_path_chain_solution();
    CHECK(s.schedule.size() == 2);
    CHECK(s.schedule[0] == ElementaryMove{2, 3});
    CHECK(s.schedule[1] == ElementaryMove{1, 2});
    CHECK(s.stats.displaced_tokens == 2);
    CHECK(s.stats.total_displacement == 2);
}

TEST_CASE("validate_solution accepts a correct solution") {
    const Problem p = Problem::make(Geometry::chain(5), {1, 2}, {2, 3});
    const Solution s = two_path_chain_solution();
    const ValidationReport r = validate_solution(p, s);
    CHECK(r.pass);
    CHECK(r.failures.empty());

    const ValidationReport one = check_one_move_per_token(p, s);
    CHECK(one.pass);
}

TEST_CASE("validate_solution rejects a colliding order") {
    const Problem p = Problem::make(Geometry::chain(5), {1, 2}, {2, 3});
    Solution s = two_path_chain_solution();
    std::swap(s.schedule[0], s.schedule[1]);  // 1->2 while 2 occupied
    CHECK(!validate_solution(p, s).pass);
}

TEST_CASE("validate_solution rejects dag order violations") {
    const Problem p = Problem::make(Geometry::chain(6), {0, 3}, {1, 4});
    // disjoint paths, but dag says 1 before 0 and the schedule does 0 first
    PathSystem ps;
    ps.paths.push_back({{0, 1}, Orientation::right, 0, -1, -1});
    ps.paths.push_back({{3, 4}, Orientation::right, 0, -1, -1});
    MoveDag dag;
    dag.node_count = 2;
    dag.add_edge(1, 0);
    Solution s = make_solution(ps, dag, {1, 0});
    CHECK(validate_solution(p, s).pass);
    std::swap(s.schedule[0], s.schedule[1]);
    CHECK(!validate_solution(p, s).pass);
}

TEST_CASE("validate_solution rejects non-shortest paths") {
    const Problem p = Problem::make(Geometry::chain(4), {0}, {1});
    PathSystem ps;
    ps.paths.push_back({{0, 1, 2, 1}, Orientation::right, 0, -1, -1});
    MoveDag dag;
    dag.node_count = 1;
    const Solution s = make_solution(ps, dag, {0});
    CHECK(!validate_solution(p, s).pass);
}

TEST_CASE("validate_solution rejects uncovered targets") {
    const Problem p = Problem::make(Geometry::chain(4), {0, 2}, {1, 3});
    PathSystem ps;
    ps.paths.push_back({{0, 1}, Orientation::right, 0, -1, -1});
    ps.paths.push_back({{2}, Orientation::isolated, 0, -1, -1});  // 2 stays, 3 uncovered
    MoveDag dag;
    dag.node_count = 2;
    const Solution s = make_solution(ps, dag, {0, 1});
    CHECK(!validate_solution(p, s).pass);
}

TEST_CASE("one-move-per-token catches chained displacement") {
    // path 0 moves token 0->1, path 1 moves the same token 1->2
    const Problem p = Problem::make(Geometry::chain(3), {0}, {2});
    PathSystem ps;
    ps.paths.push_back({{0, 1}, Orientation::right, 0, -1, -1});
    ps.paths.push_back({{1, 2}, Orientation::right, 0, -1, -1});
    MoveDag dag;
    dag.node_count = 2;
    dag.add_edge(0, 1);
    const Solution s = make_solution(ps, dag, {0, 1});
    CHECK(validate_solution(p, s).pass);  // legal schedule
    CHECK(!check_one_move_per_token(p, s).pass);  // but the token moved twice
}

// ---------------------------------------------------------------------------
// rng
// ---------------------------------------------------------------------------

TEST_CASE("rng determinism and ranges") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

    Rng r(7);
    for (int i = 0; i < 1000; ++i) {
        const int v = r.range_int(-3, 3);
        CHECK(v >= -3);
        CHECK(v <= 3);
        const double u = r.u01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("rng sampling") {
    Rng r(99);
    const std::vector<int> s = r.sample_without_replacement(50, 10);
    CHECK(s.size() == 10);
    CHECK(std::is_sorted(s.begin(), s.end()));
    CHECK(std::set<int>(s.begin(), s.end()).size() == 10);
    for (int v : s) {
        CHECK(v >= 0);
        CHECK(v < 50);
    }

    std::vector<int> perm{1, 2, 3, 4, 5, 6};
    Rng rs(5);
    rs.shuffle(perm);
    std::vector<int> sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::vector<int>{1, 2, 3, 4, 5, 6});
}
