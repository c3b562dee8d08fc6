#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "arbortile/graph.hpp"
#include "arbortile/simplex.hpp"

using namespace arbortile;

namespace {

LpProblem box_problem() {
    // x <= 2, y <= 3, x + y <= 4
    LpProblem p;
    p.rows = 3;
    p.rhs = {Rat(2), Rat(3), Rat(4)};
    p.cols = {{{0, Rat(1)}, {2, Rat(1)}}, {{1, Rat(1)}, {2, Rat(1)}}};
    p.objectives = {{Rat(1), Rat(1)}};
    return p;
}

} // namespace

TEST_CASE("two-variable box, exact optimum with certificate") {
    LpProblem p = box_problem();
    LpSolution s = solve_lp(p);
    CHECK(s.level_values[0] == Rat(4));
    std::string why;
    CHECK_MESSAGE(lp_check_certificate(p, s, &why), why);

    LpSolution again = solve_lp(p);
    CHECK(s.x == again.x);
    CHECK(s.dual == again.dual);
}

TEST_CASE("optimum is an exact rational, not a rounded value") {
    LpProblem p;
    p.rows = 1;
    p.rhs = {Rat(1)};
    p.cols = {{{0, Rat(3)}}};
    p.objectives = {{Rat(1)}};
    LpSolution s = solve_lp(p);
    CHECK(s.level_values[0] == rat(1, 3));
    CHECK(s.x[0] == rat(1, 3));
    CHECK(lp_check_certificate(p, s));
}

TEST_CASE("fractional matching on a five-cycle") {
    // one column per edge of C5, one row per vertex
    Graph c5 = Graph::cycle(5);
    LpProblem p;
    p.rows = 5;
    p.rhs.assign(5, Rat(1));
    for (auto [u, v] : c5.edges) p.cols.push_back({{u, Rat(1)}, {v, Rat(1)}});
    p.objectives.assign(1, std::vector<Rat>(p.cols.size(), Rat(1)));
    LpSolution s = solve_lp(p);
    CHECK(s.level_values[0] == rat(5, 2));
    for (const Rat& y : s.dual) CHECK(y == rat(1, 2));
    CHECK(lp_check_certificate(p, s));
}

TEST_CASE("second objective level breaks ties among level-0 optima") {
    LpProblem p = box_problem();
    p.objectives.push_back({Rat(-1), Rat(0)}); // among max x+y, minimize x
    LpSolution s = solve_lp(p);
    CHECK(s.level_values[0] == Rat(4));
    CHECK(s.level_values[1] == Rat(-1));
    CHECK(s.x[0] == Rat(1));
    CHECK(s.x[1] == Rat(3));
    CHECK(lp_check_certificate(p, s));
}

TEST_CASE("unbounded and malformed problems are rejected") {
    LpProblem p;
    p.rows = 1;
    p.rhs = {Rat(1)};
    p.cols = {{}, {{0, Rat(1)}}}; // first column unconstrained
    p.objectives = {{Rat(1), Rat(0)}};
    CHECK_THROWS_AS(solve_lp(p), Error);

    LpProblem q;
    q.rows = 1;
    q.rhs = {Rat(-1)};
    q.cols = {{{0, Rat(1)}}};
    q.objectives = {{Rat(1)}};
    CHECK_THROWS_AS(solve_lp(q), BadInput);
}
