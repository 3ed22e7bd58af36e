#include "frontier/lp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "frontier/errors.hpp"

namespace frontier {

namespace {

constexpr double kTol = 1e-9;

// Dense tableau simplex working on
//   rows:    m constraints, all with rhs >= 0
//   columns: structural vars | slack/surplus | artificials | rhs
struct Tableau {
    std::size_t m = 0;
    std::size_t total = 0;          // columns excluding rhs
    std::size_t art_begin = 0;      // first artificial column
    std::vector<std::vector<double>> a; // m rows, total+1 entries each
    std::vector<std::size_t> basis;     // basic variable per row

    double& rhs(std::size_t i) { return a[i][total]; }

    void pivot(std::size_t row, std::size_t col) {
        const double p = a[row][col];
        for (std::size_t j = 0; j <= total; ++j) a[row][j] /= p;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == row) continue;
            const double f = a[i][col];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= total; ++j) a[i][j] -= f * a[row][j];
        }
        basis[row] = col;
    }

    // Minimize cost over the current basis. Bland's rule: entering column is
    // the lowest index with negative reduced cost, leaving row the one whose
    // basic variable has the lowest index among ratio-test ties.
    // `allowed` excludes columns (artificials in phase 2) from entering.
    // Returns false when unbounded.
    bool run(const std::vector<double>& cost, std::size_t allowed_end) {
        // Reduced costs computed from scratch each iteration; problems here
        // are small enough that clarity wins over tableau cost-row updates.
        const std::size_t iter_cap = 5000 * (m + total + 1);
        for (std::size_t iter = 0; iter < iter_cap; ++iter) {
            std::size_t enter = total;
            for (std::size_t j = 0; j < allowed_end; ++j) {
                double red = cost[j];
                for (std::size_t i = 0; i < m; ++i) {
                    const double cb = cost[basis[i]];
                    if (cb != 0.0) red -= cb * a[i][j];
                }
                if (red < -kTol) {
                    enter = j;
                    break; // lowest index, Bland
                }
            }
            if (enter == total) return true; // optimal

            std::size_t leave = m;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < m; ++i) {
                if (a[i][enter] > kTol) {
                    const double ratio = rhs(i) / a[i][enter];
                    if (ratio < best_ratio - kTol ||
                        (ratio < best_ratio + kTol && (leave == m || basis[i] < basis[leave]))) {
                        best_ratio = ratio;
                        leave = i;
                    }
                }
            }
            if (leave == m) return false; // unbounded
            pivot(leave, enter);
        }
        throw AnalysisError("simplex iteration cap reached");
    }
};

} // namespace

LpSolution lp_solve(const LpProblem& p) {
    const std::size_t n = p.objective.size();
    const std::size_t m = p.constraints.rows();
    if (p.constraints.cols() != n || p.senses.size() != m || p.rhs.size() != m)
        throw std::invalid_argument("lp_solve: dimension mismatch");

    // Normalize rows to rhs >= 0.
    Matrix a = p.constraints;
    std::vector<double> b = p.rhs;
    std::vector<ConstraintSense> senses = p.senses;
    for (std::size_t i = 0; i < m; ++i) {
        if (b[i] < 0.0) {
            b[i] = -b[i];
            for (std::size_t j = 0; j < n; ++j) a(i, j) = -a(i, j);
            if (senses[i] == ConstraintSense::Le) senses[i] = ConstraintSense::Ge;
            else if (senses[i] == ConstraintSense::Ge) senses[i] = ConstraintSense::Le;
        }
    }

    // Column layout: structural | slack/surplus (one per inequality) | artificials.
    std::size_t n_slack = 0;
    std::size_t n_art = 0;
    for (auto s : senses) {
        if (s != ConstraintSense::Eq) ++n_slack;
        if (s != ConstraintSense::Le) ++n_art;
    }
    Tableau t;
    t.m = m;
    t.total = n + n_slack + n_art;
    t.art_begin = n + n_slack;
    t.a.assign(m, std::vector<double>(t.total + 1, 0.0));
    t.basis.assign(m, 0);

    std::size_t slack_at = n;
    std::size_t art_at = t.art_begin;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) t.a[i][j] = a(i, j);
        t.a[i][t.total] = b[i];
        switch (senses[i]) {
            case ConstraintSense::Le:
                t.a[i][slack_at] = 1.0;
                t.basis[i] = slack_at++;
                break;
            case ConstraintSense::Ge:
                t.a[i][slack_at] = -1.0;
                ++slack_at;
                t.a[i][art_at] = 1.0;
                t.basis[i] = art_at++;
                break;
            case ConstraintSense::Eq:
                t.a[i][art_at] = 1.0;
                t.basis[i] = art_at++;
                break;
        }
    }

    LpSolution sol;

    if (n_art > 0) {
        // Phase 1: drive artificials to zero.
        std::vector<double> cost1(t.total, 0.0);
        for (std::size_t j = t.art_begin; j < t.total; ++j) cost1[j] = 1.0;
        if (!t.run(cost1, t.total))
            throw AnalysisError("phase-1 simplex reported unbounded"); // cannot happen
        double art_sum = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            if (t.basis[i] >= t.art_begin) art_sum += t.rhs(i);
        if (art_sum > 1e-7) {
            sol.status = LpStatus::Infeasible;
            return sol;
        }
        // Pivot remaining artificials out of the basis where possible.
        for (std::size_t i = 0; i < m; ++i) {
            if (t.basis[i] < t.art_begin) continue;
            std::size_t col = t.total;
            for (std::size_t j = 0; j < t.art_begin; ++j) {
                if (std::fabs(t.a[i][j]) > kTol) {
                    col = j;
                    break;
                }
            }
            if (col < t.total) {
                t.pivot(i, col);
            } else {
                // Redundant row; neutralize it.
                for (std::size_t j = 0; j <= t.total; ++j) t.a[i][j] = 0.0;
                t.a[i][t.basis[i]] = 1.0;
            }
        }
    }

    // Phase 2 with the real objective (internally a minimization).
    std::vector<double> cost2(t.total, 0.0);
    for (std::size_t j = 0; j < n; ++j)
        cost2[j] = p.maximize ? -p.objective[j] : p.objective[j];
    if (!t.run(cost2, t.art_begin)) {
        sol.status = LpStatus::Unbounded;
        return sol;
    }

    sol.status = LpStatus::Optimal;
    sol.x.assign(n, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        if (t.basis[i] < n) sol.x[t.basis[i]] = t.rhs(i);
    double value = 0.0;
    for (std::size_t j = 0; j < n; ++j) value += p.objective[j] * sol.x[j];
    sol.objective_value = value;
    return sol;
}

} // namespace frontier
