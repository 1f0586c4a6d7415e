#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <utility>
#include <vector>

#include "doctest.h"
#include "recon/aro.hpp"
#include "recon/bird.hpp"
#include "recon/exact1d.hpp"
#include "recon/executor.hpp"
#include "recon/oracle.hpp"
#include "recon/redrec.hpp"
#include "recon/rng.hpp"

using namespace recon;

namespace {

// random grid instance with arbitrary target set, |S| >= |T|
Problem random_grid_problem(Rng &rng, int max_w, int max_h, int max_targets) {
    const int width = rng.range_int(1, max_w);
    const int height = rng.range_int(1, max_h);
    const int n = width * height;
    const int n_targets = rng.range_int(1, std::min(max_targets, n));
    const int n_sources = rng.range_int(n_targets, n);
    std::vector<Vertex> S, T;
    for (int v : rng.sample_without_replacement(n, n_sources)) S.push_back(v);
    for (int v : rng.sample_without_replacement(n, n_targets)) T.push_back(v);
    return Problem::make(Geometry::grid(width, height), S, T);
}

Problem random_band_problem(Rng &rng, int max_w, int max_h) {
    const int width = rng.range_int(1, max_w);
    const int height = rng.range_int(2, max_h);
    const int h_prime = rng.range_int(1, height - 1);
    const int n_targets = width * h_prime;
    const int n = width * height;
    const int n_sources = rng.range_int(n_targets, n);
    std::vector<Vertex> S;
    for (int v : rng.sample_without_replacement(n, n_sources)) S.push_back(v);
    return Problem::make_centered(Geometry::grid(width, height), S, h_prime);
}

std::vector<std::pair<Vertex, Vertex>> sorted_matching(const AssignmentResult &res) {
    auto pairs = res.matching;
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

Path make_path(const Geometry &g, std::vector<Vertex> vertices) {
    Path p;
    p.vertices = std::move(vertices);
    p.orientation = p.length() == 0           ? Orientation::isolated
                    : p.target() > p.source() ? Orientation::right
                                              : Orientation::left;
    p.src_column = g.coords(p.source()).x;
    p.dst_column = g.coords(p.target()).x;
    return p;
}

int parked_crossings(const Problem &problem, const PathSystem &system) {
    std::vector<char> moving(static_cast<size_t>(problem.geometry.size()), 0);
    for (const Path &p : system.paths)
        if (p.length() > 0) moving[static_cast<size_t>(p.source())] = 1;
    int total = 0;
    for (const Path &p : system.paths)
        for (size_t i = 1; i + 1 < p.vertices.size(); ++i) {
            const Vertex v = p.vertices[i];
            if (problem.sources.contains(v) && !moving[static_cast<size_t>(v)]) ++total;
        }
    return total;
}

}  // namespace

// ---------------------------------------------------------------------------
// matching by min-cost flow
// ---------------------------------------------------------------------------

TEST_CASE("a single pair is matched along a shortest staircase") {
    const Geometry g = Geometry::grid(2, 2);
    const auto res = mcmf_matching(g, {g.id({0, 0})}, {g.id({1, 1})});
    CHECK(res.weight == 2);
    REQUIRE(res.matching.size() == 1);
    CHECK(res.matching[0] == std::pair<Vertex, Vertex>{g.id({0, 0}), g.id({1, 1})});
    REQUIRE(res.system.paths.size() == 1);
    CHECK(res.system.paths[0].vertices.size() == 3);
    CHECK(res.system.weight() == 2);
}

TEST_CASE("coinciding sources and targets cost nothing") {
    const Geometry g = Geometry::grid(3, 3);
    const std::vector<Vertex> spots = {0, 4, 8};
    const auto res = mcmf_matching(g, spots, spots);
    CHECK(res.weight == 0);
    REQUIRE(res.system.paths.size() == 3);
    for (const Path &p : res.system.paths) {
        CHECK(p.length() == 0);
        CHECK(p.orientation == Orientation::isolated);
    }
    CHECK(sorted_matching(res) == std::vector<std::pair<Vertex, Vertex>>{{0, 0}, {4, 4}, {8, 8}});
}

TEST_CASE("interleaved chain pairs take unit steps instead of one long haul") {
    // greedy hop-count search would match 0 -> 1 then force 2 -> 3 via a detour;
    // the cost-aware search pays 1 + 1
    const Geometry g = Geometry::chain(4);
    const auto res = mcmf_matching(g, {0, 2}, {1, 3});
    CHECK(res.weight == 2);
    CHECK(sorted_matching(res) == std::vector<std::pair<Vertex, Vertex>>{{0, 1}, {2, 3}});
}

TEST_CASE("matching requires enough sources") {
    const Geometry g = Geometry::chain(4);
    CHECK_THROWS_AS(mcmf_matching(g, {0}, {1, 3}), InfeasibleError);
}

TEST_CASE("matching weight agrees with the exhaustive oracle") {
    Rng rng(0x5eedf10a11c3ul);
    for (int trial = 0; trial < 200; ++trial) {
        const Problem p = random_grid_problem(rng, 6, 6, 8);
        const auto S = p.sources.vertices();
        const auto T = p.targets.vertices();
        const auto res = mcmf_matching(p.geometry, S, T);
        const auto oracle = brute_force_min_matching(p.geometry, S, T);
        REQUIRE(res.weight == oracle.weight);
        REQUIRE(res.system.paths.size() == T.size());

        // the system realizes the matching with shortest paths
        std::vector<Vertex> matched_targets, matched_sources;
        long long total = 0;
        for (const Path &path : res.system.paths) {
            REQUIRE(path.length() ==
                    manhattan_distance(p.geometry, path.source(), path.target()));
            matched_sources.push_back(path.source());
            matched_targets.push_back(path.target());
            total += path.length();
        }
        REQUIRE(total == res.weight);
        std::sort(matched_targets.begin(), matched_targets.end());
        REQUIRE(matched_targets == T);
        std::sort(matched_sources.begin(), matched_sources.end());
        REQUIRE(std::adjacent_find(matched_sources.begin(), matched_sources.end()) ==
                matched_sources.end());
        for (Vertex s : matched_sources) REQUIRE(p.sources.contains(s));
    }
}

TEST_CASE("matching is deterministic") {
    Rng rng(0xdecaf);
    const Problem p = random_grid_problem(rng, 6, 6, 8);
    const auto a = mcmf_matching(p.geometry, p.sources.vertices(), p.targets.vertices());
    const auto b = mcmf_matching(p.geometry, p.sources.vertices(), p.targets.vertices());
    CHECK(a.matching == b.matching);
    REQUIRE(a.system.paths.size() == b.system.paths.size());
    for (size_t i = 0; i < a.system.paths.size(); ++i)
        CHECK(a.system.paths[i].vertices == b.system.paths[i].vertices);
}

// ---------------------------------------------------------------------------
// forest test and rerouting
// ---------------------------------------------------------------------------

TEST_CASE("edge-disjoint paths form a forest, a closed square does not") {
    const Geometry g = Geometry::grid(2, 2);
    PathSystem forest;
    forest.paths.push_back(make_path(g, {g.id({0, 0}), g.id({0, 1})}));
    forest.paths.push_back(make_path(g, {g.id({1, 0}), g.id({1, 1})}));
    CHECK(is_forest(forest));

    PathSystem square;
    square.paths.push_back(make_path(g, {g.id({0, 0}), g.id({0, 1}), g.id({1, 1})}));
    square.paths.push_back(make_path(g, {g.id({0, 0}), g.id({1, 0}), g.id({1, 1})}));
    CHECK_FALSE(is_forest(square));
}

TEST_CASE("rerouting steps around a parked token") {
    const Geometry g = Geometry::grid(2, 2);
    const Vertex a = g.id({0, 0}), blocked = g.id({1, 0}), free_corner = g.id({0, 1}),
                 goal = g.id({1, 1});
    const Problem p = Problem::make(g, {a, blocked}, {goal});
    PathSystem sys;
    sys.paths.push_back(make_path(g, {a, blocked, goal}));

    const PathSystem routed = reroute(g, p.sources, sys);
    REQUIRE(routed.paths.size() == 1);
    CHECK(routed.paths[0].vertices == std::vector<Vertex>{a, free_corner, goal});
    CHECK(routed.paths[0].length() == 2);
}

TEST_CASE("a clean staircase is kept as-is") {
    const Geometry g = Geometry::grid(2, 2);
    const Vertex a = g.id({0, 0}), free_corner = g.id({0, 1}), goal = g.id({1, 1});
    const Problem p = Problem::make(g, {a, g.id({1, 0})}, {goal});
    PathSystem sys;
    sys.paths.push_back(make_path(g, {a, free_corner, goal}));
    const PathSystem routed = reroute(g, p.sources, sys);
    CHECK(routed.paths[0].vertices == std::vector<Vertex>{a, free_corner, goal});
}

TEST_CASE("rerouting preserves endpoints and weight while reducing crossings") {
    Rng rng(0xab5eed);
    for (int trial = 0; trial < 120; ++trial) {
        const Problem p = random_grid_problem(rng, 7, 7, 9);
        const auto base =
            mcmf_matching(p.geometry, p.sources.vertices(), p.targets.vertices());
        const int before = parked_crossings(p, base.system);
        const long long weight = base.system.weight();
        const auto pairs_before = sorted_matching(base);

        const PathSystem routed = reroute(p.geometry, p.sources, base.system);
        REQUIRE(routed.weight() == weight);
        REQUIRE(parked_crossings(p, routed) <= before);
        std::vector<std::pair<Vertex, Vertex>> pairs_after;
        for (const Path &path : routed.paths) {
            REQUIRE(path.length() ==
                    manhattan_distance(p.geometry, path.source(), path.target()));
            pairs_after.emplace_back(path.source(), path.target());
        }
        std::sort(pairs_after.begin(), pairs_after.end());
        REQUIRE(pairs_after == pairs_before);
    }
}

// ---------------------------------------------------------------------------
// cycle breaking
// ---------------------------------------------------------------------------

TEST_CASE("cycle breaking restores a forest without losing optimality") {
    // pinned dense instance whose matched paths close a cycle
    Rng rng(221ull * 1000003ull);
    const int width = rng.range_int(3, 12);
    const int height = rng.range_int(3, 12);
    const int n = width * height;
    const int n_targets = rng.range_int(n / 4 + 1, n / 2);
    const int n_sources = rng.range_int(n_targets, n);
    std::vector<Vertex> S, T;
    for (int v : rng.sample_without_replacement(n, n_sources)) S.push_back(v);
    for (int v : rng.sample_without_replacement(n, n_targets)) T.push_back(v);
    const Geometry g = Geometry::grid(width, height);
    const Problem p = Problem::make(g, S, T);

    const auto base = mcmf_matching(g, S, T);
    PathSystem sys = reroute(g, p.sources, base.system);
    REQUIRE_FALSE(is_forest(sys));  // precondition of this test, not of the op

    const PathSystem broken = break_cycles(g, S, T, std::move(sys));
    REQUIRE(is_forest(broken));
    REQUIRE(broken.weight() == base.weight);

    const Solution sol = order_moves_forest(g, p.sources, broken);
    CHECK(sol.stats.total_displacement == base.weight);
    CHECK(validate_solution(p, sol).pass);
    CHECK(check_one_move_per_token(p, sol).pass);
}

TEST_CASE("a forest passes through cycle breaking untouched") {
    const Geometry g = Geometry::grid(2, 2);
    const std::vector<Vertex> S = {g.id({0, 0})}, T = {g.id({1, 1})};
    const auto base = mcmf_matching(g, S, T);
    REQUIRE(is_forest(base.system));
    const PathSystem broken = break_cycles(g, S, T, base.system);
    REQUIRE(broken.paths.size() == base.system.paths.size());
    for (size_t i = 0; i < broken.paths.size(); ++i)
        CHECK(broken.paths[i].vertices == base.system.paths[i].vertices);
}

// ---------------------------------------------------------------------------
// move ordering
// ---------------------------------------------------------------------------

TEST_CASE("a path through parked tokens becomes a chain of unit shifts") {
    const Geometry g = Geometry::chain(4);
    const Problem p = Problem::make(g, {0, 1, 2}, {3});
    PathSystem sys;
    sys.paths.push_back(make_path(g, {0, 1, 2, 3}));

    const Solution sol = order_moves_forest(g, p.sources, sys);
    CHECK(sol.stats.displaced_tokens == 3);
    CHECK(sol.stats.total_displacement == 3);
    REQUIRE(sol.schedule.size() == 3);
    // the parked tokens shift forward before the mover advances
    CHECK(sol.schedule[0] == ElementaryMove{2, 3});
    CHECK(sol.schedule[1] == ElementaryMove{1, 2});
    CHECK(sol.schedule[2] == ElementaryMove{0, 1});
    CHECK(validate_solution(p, sol).pass);
    CHECK(check_one_move_per_token(p, sol).pass);
}

TEST_CASE("ordering a settled system yields an empty schedule") {
    const Geometry g = Geometry::grid(3, 2);
    const Problem p = Problem::make(g, {0, 3}, {0, 3});
    PathSystem sys;
    sys.paths.push_back(make_path(g, {0}));
    sys.paths.push_back(make_path(g, {3}));
    const Solution sol = order_moves_forest(g, p.sources, sys);
    CHECK(sol.schedule.empty());
    CHECK(sol.stats.displaced_tokens == 0);
    CHECK(validate_solution(p, sol).pass);
}

// ---------------------------------------------------------------------------
// full pipeline
// ---------------------------------------------------------------------------

TEST_CASE("a crossing over a resting token is resolved by shifting it") {
    // source 0 must reach depth 3; the resting token on 2 is drafted into a
    // chain so no token moves twice
    const Geometry g = Geometry::chain(5);
    const Problem p = Problem::make(g, {0, 2, 4}, {2, 3, 4});
    const Solution sol = aro(p);
    CHECK(sol.stats.total_displacement == 3);
    CHECK(validate_solution(p, sol).pass);
    CHECK(check_one_move_per_token(p, sol).pass);
}

TEST_CASE("an already-solved problem produces no moves") {
    const Geometry g = Geometry::grid(4, 4);
    const Problem p = Problem::make(g, {1, 5, 9}, {1, 5, 9});
    const Solution sol = aro(p);
    CHECK(sol.schedule.empty());
    CHECK(sol.stats.total_displacement == 0);
    CHECK(validate_solution(p, sol).pass);
}

TEST_CASE("pipeline displacement matches the oracle on random grids") {
    Rng rng(0xa120aced);
    for (int trial = 0; trial < 150; ++trial) {
        const Problem p = random_grid_problem(rng, 8, 8, 10);
        const auto oracle =
            brute_force_min_matching(p.geometry, p.sources.vertices(), p.targets.vertices());
        const Solution sol = aro(p);
        REQUIRE(sol.stats.total_displacement == oracle.weight);
        REQUIRE(validate_solution(p, sol).pass);
        REQUIRE(check_one_move_per_token(p, sol).pass);
    }
}

TEST_CASE("dense instances stay optimal through the full pipeline") {
    Rng rng(0xde5e5eed);
    for (int trial = 0; trial < 60; ++trial) {
        const int width = rng.range_int(3, 10);
        const int height = rng.range_int(3, 10);
        const int n = width * height;
        const int n_targets = rng.range_int(n / 4 + 1, n / 2);
        const int n_sources = rng.range_int(n_targets, n);
        std::vector<Vertex> S, T;
        for (int v : rng.sample_without_replacement(n, n_sources)) S.push_back(v);
        for (int v : rng.sample_without_replacement(n, n_targets)) T.push_back(v);
        const Geometry g = Geometry::grid(width, height);
        const Problem p = Problem::make(g, S, T);
        const auto oracle = hungarian_min_matching(g, S, T);
        const Solution sol = aro(p);
        REQUIRE(sol.stats.total_displacement == oracle.weight);
        REQUIRE(validate_solution(p, sol).pass);
        REQUIRE(check_one_move_per_token(p, sol).pass);
    }
}

TEST_CASE("pipeline displacement matches the line solver on chains") {
    Rng rng(0x11e5eed);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = rng.range_int(2, 24);
        const int n_targets = rng.range_int(1, n);
        const int n_sources = rng.range_int(n_targets, n);
        std::vector<int> S, T;
        for (int v : rng.sample_without_replacement(n, n_sources)) S.push_back(v);
        for (int v : rng.sample_without_replacement(n, n_targets)) T.push_back(v);
        const Solution line = solve_1d(n, S, T);

        std::vector<Vertex> SV(S.begin(), S.end()), TV(T.begin(), T.end());
        const Problem p = Problem::make(Geometry::chain(n), SV, TV);
        const Solution sol = aro(p);
        REQUIRE(sol.stats.total_displacement == line.stats.total_displacement);
        REQUIRE(validate_solution(p, sol).pass);
        REQUIRE(check_one_move_per_token(p, sol).pass);
    }
}

TEST_CASE("exact displacement never exceeds the column sweeps") {
    Rng rng(0xbead5eed);
    for (int trial = 0; trial < 40; ++trial) {
        const Problem p = random_band_problem(rng, 8, 10);
        const Solution exact = aro(p);
        const Solution paired = red_rec(p);
        const Solution pooled = bird(p);
        REQUIRE(validate_solution(p, exact).pass);
        REQUIRE(exact.stats.total_displacement <= paired.stats.total_displacement);
        REQUIRE(exact.stats.total_displacement <= pooled.stats.total_displacement);
    }
}

TEST_CASE("pipeline runs are reproducible") {
    Rng rng(0xd5eed);
    const Problem p = random_grid_problem(rng, 8, 8, 10);
    const Solution a = aro(p);
    const Solution b = aro(p);
    REQUIRE(a.schedule.size() == b.schedule.size());
    for (size_t i = 0; i < a.schedule.size(); ++i) CHECK(a.schedule[i] == b.schedule[i]);
}
