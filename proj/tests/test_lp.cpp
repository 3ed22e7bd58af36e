#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "frontier/lp.hpp"
#include "oracles.hpp"

using namespace frontier;

TEST_CASE("max x subject to x <= 3") {
    LpProblem p;
    p.objective = {1.0};
    p.maximize = true;
    p.constraints = Matrix(1, 1);
    p.constraints(0, 0) = 1.0;
    p.senses = {ConstraintSense::Le};
    p.rhs = {3.0};
    const LpSolution s = lp_solve(p);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.objective_value == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(s.x[0] == doctest::Approx(3.0));
}

TEST_CASE("x >= 1 and x <= 0 is infeasible") {
    LpProblem p;
    p.objective = {0.0};
    p.constraints = Matrix(2, 1);
    p.constraints(0, 0) = 1.0;
    p.constraints(1, 0) = 1.0;
    p.senses = {ConstraintSense::Ge, ConstraintSense::Le};
    p.rhs = {1.0, 0.0};
    CHECK(lp_solve(p).status == LpStatus::Infeasible);
}

TEST_CASE("unbounded detection") {
    LpProblem p;
    p.objective = {-1.0}; // min -x, x >= 0, no upper bound
    p.constraints = Matrix(1, 1);
    p.constraints(0, 0) = 1.0;
    p.senses = {ConstraintSense::Ge};
    p.rhs = {0.0};
    CHECK(lp_solve(p).status == LpStatus::Unbounded);
}

TEST_CASE("equality constraints work") {
    // min x0 + x1 s.t. x0 + x1 = 2, x0 - x1 <= 0 -> any point on the segment,
    // objective 2.
    LpProblem p;
    p.objective = {1.0, 1.0};
    p.constraints = Matrix(2, 2);
    p.constraints(0, 0) = 1.0;
    p.constraints(0, 1) = 1.0;
    p.constraints(1, 0) = 1.0;
    p.constraints(1, 1) = -1.0;
    p.senses = {ConstraintSense::Eq, ConstraintSense::Le};
    p.rhs = {2.0, 0.0};
    const LpSolution s = lp_solve(p);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.objective_value == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("dimension mismatch is rejected") {
    LpProblem p;
    p.objective = {1.0, 2.0};
    p.constraints = Matrix(1, 1);
    p.senses = {ConstraintSense::Le};
    p.rhs = {1.0};
    CHECK_THROWS_AS(lp_solve(p), std::invalid_argument);
}

TEST_CASE("random dense LPs match the vertex enumeration oracle") {
    std::mt19937_64 rng(424242);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::uniform_real_distribution<double> pos(0.1, 1.0);

    for (int instance = 0; instance < 40; ++instance) {
        const std::size_t n = 4 + instance % 3; // 4..6 variables
        const std::size_t m = 5;
        // Feasible by construction: pick x0 >= 0, set ≤ rows with slack and
        // a couple of generous >= rows; a box row keeps it bounded.
        std::vector<double> x0(n);
        for (auto& v : x0) v = pos(rng);

        Matrix a(m + 1, n);
        std::vector<double> b(m + 1);
        std::vector<ConstraintSense> senses(m + 1, ConstraintSense::Le);
        for (std::size_t i = 0; i < m; ++i) {
            double dot = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) = unif(rng);
                dot += a(i, j) * x0[j];
            }
            if (i < 3) {
                b[i] = dot + pos(rng);
            } else {
                senses[i] = ConstraintSense::Ge;
                b[i] = dot - pos(rng);
            }
        }
        for (std::size_t j = 0; j < n; ++j) a(m, j) = 1.0;
        b[m] = 50.0; // box

        LpProblem p;
        p.objective.resize(n);
        for (auto& c : p.objective) c = unif(rng);
        p.constraints = a;
        p.senses = senses;
        p.rhs = b;

        const LpSolution s = lp_solve(p);
        REQUIRE(s.status == LpStatus::Optimal);
        const auto o = oracle::lp_min_by_vertex_enumeration(p.objective, a, senses, b);
        REQUIRE(o.feasible);
        CHECK(s.objective_value == doctest::Approx(o.objective).epsilon(1e-8));
    }
}
