#pragma once

#include <utility>
#include <vector>

#include "recon/problem.hpp"

namespace recon {

struct OracleResult {
    long long weight = 0;
    std::vector<std::pair<Vertex, Vertex>> matching;  // (source, target), one per target
};

// Exact minimum of sum d_G(s, t) over all injections T -> S, by dynamic
// programming over target subsets (complete enumeration, O(|S| 2^|T| |T|)).
// Requires |T| <= 20 or so; intended for desk-scale checks.
OracleResult brute_force_min_matching(const Geometry &g, const std::vector<Vertex> &S,
                                      const std::vector<Vertex> &T);

// Same minimum via the O(n^3) rectangular Hungarian method with potentials.
// Must agree with brute_force_min_matching wherever both run.
OracleResult hungarian_min_matching(const Geometry &g, const std::vector<Vertex> &S,
                                    const std::vector<Vertex> &T);

// Line variant on explicit integer positions (virtual indices allowed).
long long brute_force_line_matching(const std::vector<long long> &sources,
                                    const std::vector<long long> &targets);

// Line variant with per-position multiplicities and usage bounds: position i
// supplies between min_use[i] and max_use[i] tokens.  Exhaustive search over
// all admissible target assignments; returns -1 when infeasible.
long long brute_force_line_matching_bounded(const std::vector<long long> &positions,
                                            const std::vector<int> &min_use,
                                            const std::vector<int> &max_use,
                                            const std::vector<long long> &targets);

struct EquivalenceVerdict {
    bool ok = false;
    long long gap = 0;  // solver weight minus oracle weight
};

// exact solvers must match the oracle; heuristics must not beat it
EquivalenceVerdict check_equivalence(long long solver_weight, long long oracle_weight,
                                     bool expect_exact);

}  // namespace recon
