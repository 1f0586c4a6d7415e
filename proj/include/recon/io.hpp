#pragma once

#include <string>

#include "recon/batching.hpp"
#include "recon/path_system.hpp"
#include "recon/problem.hpp"

namespace recon {

// Instance files:
//   {"width": W, "height": H, "sources": [[x,y],...], "targets": [[x,y],...]}
// or, for centered-compact targets,
//   {"width": W, "height": H, "sources": [...], "target_region": {"h_prime": H'}}
Problem parse_instance(const std::string &text);
Problem load_instance(const std::string &path);
std::string instance_to_json(const Problem &problem);

// Solution files:
//   {"moves": [[[x,y],[x,y]],...], "dag_edges": [[i,j],...], "paths": [[[x,y],...],...]}
std::string solution_to_json(const Geometry &g, const Solution &solution);
Solution parse_solution(const Geometry &g, const std::string &text);

// Batch schedule files:
//   {"batches": [{"axis": "col"|"row"|null, "dir": "up"|...|null, "moves": [...]}]}
std::string batch_schedule_to_json(const Geometry &g, const BatchSchedule &schedule);

void write_text_file(const std::string &path, const std::string &content);
std::string read_text_file(const std::string &path);

// fixed-point decimal with a stable textual form across platforms
std::string format_fixed(double v, int digits);

}  // namespace recon
