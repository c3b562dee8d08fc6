#pragma once

#include <utility>
#include <vector>

#include "arbortile/rational.hpp"

namespace arbortile {

// max c·x  s.t.  A x <= rhs, x >= 0, with rhs >= 0 so the slack basis starts
// feasible. Columns are sparse. Multiple objective levels are optimized
// lexicographically (level 0 first); Bland's rule throughout, so the pivot
// sequence — and hence the reported optimum — is deterministic.
struct LpProblem {
    int rows = 0;
    std::vector<Rat> rhs;
    std::vector<std::vector<std::pair<int, Rat>>> cols; // (row, coeff)
    std::vector<std::vector<Rat>> objectives;           // objectives[level][col]
};

struct LpSolution {
    std::vector<Rat> level_values; // optimum per objective level
    std::vector<Rat> x;            // per column
    std::vector<Rat> dual;         // per row; certifies level-0 optimality
    long pivots = 0;
};

LpSolution solve_lp(const LpProblem& p);

// Exact certificate check: primal feasible, dual feasible for level 0, strong
// duality, complementary slackness. Returns false and fills why on failure.
bool lp_check_certificate(const LpProblem& p, const LpSolution& s, std::string* why = nullptr);

} // namespace arbortile
