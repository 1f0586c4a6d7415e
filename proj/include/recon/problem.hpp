#pragma once

#include <optional>
#include <vector>

#include "recon/geometry.hpp"

namespace recon {

// Occupancy of a trap array: at most one token per vertex.  Backed by a flat
// bool vector plus a count so membership tests are O(1) during execution.
class Configuration {
  public:
    Configuration() = default;
    explicit Configuration(int n_vertices) : occupied_(static_cast<size_t>(n_vertices), false) {}

    static Configuration from_vertices(int n_vertices, const std::vector<Vertex> &vs) {
        Configuration c(n_vertices);
        for (Vertex v : vs) c.add(v);
        return c;
    }

    int capacity() const { return static_cast<int>(occupied_.size()); }
    int count() const { return count_; }
    bool empty() const { return count_ == 0; }

    bool contains(Vertex v) const {
        return v >= 0 && v < capacity() && occupied_[static_cast<size_t>(v)];
    }

    void add(Vertex v) {
        if (v < 0 || v >= capacity()) throw InputError("token vertex out of bounds");
        if (occupied_[static_cast<size_t>(v)]) throw InputError("two tokens on one vertex");
        occupied_[static_cast<size_t>(v)] = true;
        ++count_;
    }

    void remove(Vertex v) {
        if (!contains(v)) throw InputError("removing a token from an empty vertex");
        occupied_[static_cast<size_t>(v)] = false;
        --count_;
    }

    // ascending vertex ids
    std::vector<Vertex> vertices() const {
        std::vector<Vertex> out;
        out.reserve(static_cast<size_t>(count_));
        for (size_t v = 0; v < occupied_.size(); ++v)
            if (occupied_[v]) out.push_back(static_cast<Vertex>(v));
        return out;
    }

    bool contains_all(const Configuration &other) const {
        if (other.capacity() != capacity()) return false;
        for (size_t v = 0; v < occupied_.size(); ++v)
            if (other.occupied_[v] && !occupied_[v]) return false;
        return true;
    }

    friend bool operator==(const Configuration &a, const Configuration &b) {
        return a.occupied_ == b.occupied_;
    }

  private:
    std::vector<bool> occupied_;
    int count_ = 0;
};

// Centered W x H' band of target rows: row_lo = (H - H') / 2 rows from the
// bottom, H' consecutive rows.
struct TargetRegion {
    int h_prime = 0;

    int row_lo(const Geometry &g) const { return (g.height - h_prime) / 2; }
    int row_hi(const Geometry &g) const { return row_lo(g) + h_prime - 1; }

    Configuration expand(const Geometry &g) const {
        if (h_prime <= 0 || h_prime >= g.height)
            throw InputError("target region height must be in (0, H)");
        Configuration c(g.size());
        const int lo = row_lo(g), hi = row_hi(g);
        for (int x = 0; x < g.width; ++x)
            for (int y = lo; y <= hi; ++y) c.add(g.id({x, y}));
        return c;
    }
};

struct Problem {
    Geometry geometry;
    Configuration sources;
    Configuration targets;
    std::optional<TargetRegion> target_region;  // set when T is a centered band

    static Problem make(Geometry g, std::vector<Vertex> S, std::vector<Vertex> T) {
        Problem p;
        p.geometry = g;
        p.sources = Configuration::from_vertices(g.size(), S);
        p.targets = Configuration::from_vertices(g.size(), T);
        p.check();
        return p;
    }

    static Problem make_centered(Geometry g, std::vector<Vertex> S, int h_prime) {
        Problem p;
        p.geometry = g;
        p.sources = Configuration::from_vertices(g.size(), S);
        p.target_region = TargetRegion{h_prime};
        p.targets = p.target_region->expand(g);
        p.check();
        return p;
    }

    void check() const {
        if (sources.count() < targets.count())
            throw InfeasibleError("fewer sources than targets (|S| < |T|)");
    }
};

}  // namespace recon
