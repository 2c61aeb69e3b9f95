#pragma once

// Phase-1 simplex over exact rationals: decides feasibility of
// { x >= 0, A x (=,<=,>=) b } and, when feasible, returns one feasible point.
// Bland's rule, so termination is guaranteed. Exact arithmetic makes an
// infeasibility verdict a certificate rather than a numeric judgement.

#include <cstddef>
#include <optional>
#include <vector>

#include "qmachine/rational.hpp"

namespace qmachine::lp {

enum class Relation { Eq, Le, Ge };

struct Constraint {
    std::vector<Rational> coeffs; // one per structural variable
    Relation rel = Relation::Eq;
    Rational rhs;
};

struct FeasibilityResult {
    bool feasible = false;
    std::vector<Rational> point;  // structural variables, when feasible
    Rational infeasibility_gap;   // phase-1 optimum, > 0 when infeasible
};

inline FeasibilityResult solve_feasibility(std::size_t num_vars,
                                           std::vector<Constraint> constraints) {
    // Normalize to b >= 0.
    for (auto& c : constraints) {
        if (c.rhs < Rational(0)) {
            for (auto& a : c.coeffs) a = -a;
            c.rhs = -c.rhs;
            if (c.rel == Relation::Le) c.rel = Relation::Ge;
            else if (c.rel == Relation::Ge) c.rel = Relation::Le;
        }
    }

    const std::size_t m = constraints.size();
    std::size_t num_slack = 0;
    for (const auto& c : constraints)
        if (c.rel != Relation::Eq) ++num_slack;

    // Columns: structural | slack/surplus | artificial. A <= row with b >= 0
    // can use its slack as the basic variable; >= and = rows need artificials.
    std::size_t num_art = 0;
    for (const auto& c : constraints)
        if (c.rel != Relation::Le) ++num_art;

    const std::size_t n = num_vars + num_slack + num_art;
    std::vector<std::vector<Rational>> tab(m, std::vector<Rational>(n + 1, Rational(0)));
    std::vector<std::size_t> basis(m);
    std::vector<bool> is_artificial(n, false);

    std::size_t slack_col = num_vars;
    std::size_t art_col = num_vars + num_slack;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& c = constraints[i];
        for (std::size_t j = 0; j < num_vars && j < c.coeffs.size(); ++j) tab[i][j] = c.coeffs[j];
        tab[i][n] = c.rhs;
        if (c.rel == Relation::Le) {
            tab[i][slack_col] = Rational(1);
            basis[i] = slack_col++;
        } else {
            if (c.rel == Relation::Ge) tab[i][slack_col++] = Rational(-1);
            tab[i][art_col] = Rational(1);
            is_artificial[art_col] = true;
            basis[i] = art_col++;
        }
    }

    // Phase-1 objective: minimize the sum of artificials. Reduced-cost row
    // z[j] = sum over artificial-basic rows of tab[i][j].
    std::vector<Rational> z(n + 1, Rational(0));
    for (std::size_t i = 0; i < m; ++i) {
        if (is_artificial[basis[i]]) {
            for (std::size_t j = 0; j <= n; ++j) z[j] += tab[i][j];
        }
    }

    const auto pivot = [&](std::size_t row, std::size_t col) {
        const Rational p = tab[row][col];
        for (std::size_t j = 0; j <= n; ++j) tab[row][j] /= p;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == row || tab[i][col] == Rational(0)) continue;
            const Rational f = tab[i][col];
            for (std::size_t j = 0; j <= n; ++j) tab[i][j] -= f * tab[row][j];
        }
        if (z[col] != Rational(0)) {
            const Rational f = z[col];
            for (std::size_t j = 0; j <= n; ++j) z[j] -= f * tab[row][j];
        }
        basis[row] = col;
    };

    while (true) {
        // Bland: smallest-index entering column with positive reduced cost
        // (minimization written as maximizing -z, artificials excluded).
        std::optional<std::size_t> enter;
        for (std::size_t j = 0; j < n; ++j) {
            if (!is_artificial[j] && z[j] > Rational(0)) {
                enter = j;
                break;
            }
        }
        if (!enter) break;

        std::optional<std::size_t> leave;
        Rational best_ratio;
        for (std::size_t i = 0; i < m; ++i) {
            if (tab[i][*enter] <= Rational(0)) continue;
            const Rational ratio = tab[i][n] / tab[i][*enter];
            if (!leave || ratio < best_ratio ||
                (ratio == best_ratio && basis[i] < basis[*leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (!leave) break; // unbounded direction cannot reduce artificials further
        pivot(*leave, *enter);
    }

    FeasibilityResult result;
    result.infeasibility_gap = z[n];
    result.feasible = (z[n] == Rational(0));
    if (result.feasible) {
        result.point.assign(num_vars, Rational(0));
        for (std::size_t i = 0; i < m; ++i) {
            if (basis[i] < num_vars) result.point[basis[i]] = tab[i][n];
        }
    }
    return result;
}

} // namespace qmachine::lp
