#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>

#include "mlfrac/cauchy_solver.hpp"
#include "mlfrac/random_motion.hpp"

namespace mlfrac {

// Problem schema:
//   { "nu": real,
//     "lambda": [complex, ...],            // lambda_0 .. lambda_N
//     "roots": [[re,im], ...],             // optional, with "mults"
//     "mults": [int, ...],
//     "init_conds": [complex, ...],
//     "forcing": { "kind": "constant", "value": complex }
//              | { "kind": "table", "times": [...], "values": [complex...] } }
// A complex value is either a number or a [re, im] pair.
CauchyProblem problem_from_json(const nlohmann::json& j);
nlohmann::json problem_to_json(const CauchyProblem& p);
CauchyProblem load_problem_file(const std::string& path);

// Motion schema: { "velocities": [[..]..], "rate": r,
//                  "initial_dist": [..], "switch_matrix": [[..]..] }
MotionSpec motion_from_json(const nlohmann::json& j);
MotionSpec load_motion_file(const std::string& path);

}  // namespace mlfrac
