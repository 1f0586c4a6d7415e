#include "recon/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace recon {

using nlohmann::ordered_json;

namespace {

Vec2 parse_xy(const ordered_json &j, const char *what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
        throw InputError(std::string(what) + " must be an [x, y] pair");
    return Vec2{j[0].get<int>(), j[1].get<int>()};
}

ordered_json xy_json(const Geometry &g, Vertex v) {
    const Vec2 p = g.coords(v);
    return ordered_json::array({p.x, p.y});
}

}  // namespace

Problem parse_instance(const std::string &text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception &e) {
        throw InputError(std::string("bad instance JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("width") || !j.contains("height"))
        throw InputError("instance needs integer width and height");
    if (!j["width"].is_number_integer() || !j["height"].is_number_integer())
        throw InputError("instance needs integer width and height");
    const Geometry g = Geometry::grid(j["width"].get<int>(), j["height"].get<int>());

    if (!j.contains("sources") || !j["sources"].is_array())
        throw InputError("instance needs a sources array");
    std::vector<Vertex> S;
    for (const auto &e : j["sources"]) S.push_back(g.id_checked(parse_xy(e, "source")));

    if (j.contains("target_region")) {
        const auto &tr = j["target_region"];
        if (!tr.is_object() || !tr.contains("h_prime") || !tr["h_prime"].is_number_integer())
            throw InputError("target_region needs an integer h_prime");
        return Problem::make_centered(g, S, tr["h_prime"].get<int>());
    }
    if (!j.contains("targets") || !j["targets"].is_array())
        throw InputError("instance needs targets or target_region");
    std::vector<Vertex> T;
    for (const auto &e : j["targets"]) T.push_back(g.id_checked(parse_xy(e, "target")));
    return Problem::make(g, S, T);
}

Problem load_instance(const std::string &path) { return parse_instance(read_text_file(path)); }

std::string instance_to_json(const Problem &problem) {
    const Geometry &g = problem.geometry;
    ordered_json j;
    j["width"] = g.width;
    j["height"] = g.height;
    auto src = ordered_json::array();
    for (Vertex v : problem.sources.vertices()) src.push_back(xy_json(g, v));
    j["sources"] = std::move(src);
    if (problem.target_region) {
        j["target_region"] = ordered_json{{"h_prime", problem.target_region->h_prime}};
    } else {
        auto tgt = ordered_json::array();
        for (Vertex v : problem.targets.vertices()) tgt.push_back(xy_json(g, v));
        j["targets"] = std::move(tgt);
    }
    return j.dump(2) + "\n";
}

std::string solution_to_json(const Geometry &g, const Solution &solution) {
    ordered_json j;
    auto moves = ordered_json::array();
    for (const ElementaryMove &m : solution.schedule)
        moves.push_back(ordered_json::array({xy_json(g, m.from), xy_json(g, m.to)}));
    j["moves"] = std::move(moves);
    auto dag_edges = ordered_json::array();
    for (const auto &[a, b] : solution.dag.edges) dag_edges.push_back(ordered_json::array({a, b}));
    j["dag_edges"] = std::move(dag_edges);
    auto paths = ordered_json::array();
    for (const Path &p : solution.path_system.paths) {
        auto verts = ordered_json::array();
        for (Vertex v : p.vertices) verts.push_back(xy_json(g, v));
        paths.push_back(std::move(verts));
    }
    j["paths"] = std::move(paths);
    j["stats"] = ordered_json{{"displaced_tokens", solution.stats.displaced_tokens},
                              {"total_displacement", solution.stats.total_displacement}};
    return j.dump(2) + "\n";
}

Solution parse_solution(const Geometry &g, const std::string &text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception &e) {
        throw InputError(std::string("bad solution JSON: ") + e.what());
    }
    Solution sol;
    if (!j.is_object() || !j.contains("moves") || !j.contains("paths") || !j.contains("dag_edges"))
        throw InputError("solution needs moves, paths and dag_edges");
    for (const auto &m : j["moves"]) {
        if (!m.is_array() || m.size() != 2) throw InputError("each move must be a [from, to] pair");
        sol.schedule.push_back(
            {g.id_checked(parse_xy(m[0], "move from")), g.id_checked(parse_xy(m[1], "move to"))});
    }
    for (const auto &pv : j["paths"]) {
        Path p;
        for (const auto &v : pv) p.vertices.push_back(g.id_checked(parse_xy(v, "path vertex")));
        if (p.vertices.empty()) throw InputError("path without vertices");
        if (g.height == 1) {
            if (p.target() > p.source()) p.orientation = Orientation::right;
            else if (p.target() < p.source()) p.orientation = Orientation::left;
        }
        sol.path_system.paths.push_back(std::move(p));
    }
    sol.dag.node_count = static_cast<int>(sol.path_system.paths.size());
    for (const auto &e : j["dag_edges"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
            !e[1].is_number_integer())
            throw InputError("each dag edge must be an [i, j] pair");
        sol.dag.add_edge(e[0].get<int>(), e[1].get<int>());
    }
    sol.stats.displaced_tokens = sol.path_system.displaced_count();
    sol.stats.total_displacement = sol.path_system.weight();
    return sol;
}

std::string batch_schedule_to_json(const Geometry &g, const BatchSchedule &schedule) {
    ordered_json j;
    auto batches = ordered_json::array();
    for (const Batch &b : schedule.batches) {
        ordered_json bj;
        switch (b.axis) {
            case BatchAxis::col: bj["axis"] = "col"; break;
            case BatchAxis::row: bj["axis"] = "row"; break;
            case BatchAxis::none: bj["axis"] = nullptr; break;
        }
        switch (b.dir) {
            case BatchDir::up: bj["dir"] = "up"; break;
            case BatchDir::down: bj["dir"] = "down"; break;
            case BatchDir::left: bj["dir"] = "left"; break;
            case BatchDir::right: bj["dir"] = "right"; break;
            case BatchDir::none: bj["dir"] = nullptr; break;
        }
        auto moves = ordered_json::array();
        for (const ElementaryMove &m : b.moves)
            moves.push_back(ordered_json::array({xy_json(g, m.from), xy_json(g, m.to)}));
        bj["moves"] = std::move(moves);
        batches.push_back(std::move(bj));
    }
    j["batches"] = std::move(batches);
    return j.dump(2) + "\n";
}

void write_text_file(const std::string &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open " + path + " for writing");
    out << content;
    if (!out) throw InputError("write to " + path + " failed");
}

std::string read_text_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string format_fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    // normalize negative zero so equal values print identically
    if (buf[0] == '-' && std::strtod(buf, nullptr) == 0.0) return std::string(buf + 1);
    return std::string(buf);
}

}  // namespace recon
