#pragma once

// Test-only feasibility oracle, independent of the simplex implementation:
// Gaussian elimination of the equality rows followed by Fourier-Motzkin
// elimination of the remaining variables, all in exact rationals. Intended
// for desk-scale systems (k <= 4 experiments, 16 vertex variables).

#include <set>
#include <vector>

#include "qmachine/rational.hpp"
#include "qmachine/simplex.hpp"

namespace qmtest {

using qmachine::Rational;
using qmachine::lp::Constraint;
using qmachine::lp::Relation;

// Row a.x <= b over the active variable set.
struct Row {
    std::vector<Rational> a;
    Rational b;
};

inline bool fm_feasible(std::size_t num_vars, const std::vector<Constraint>& constraints) {
    std::vector<Row> ineqs;
    std::vector<Row> eqs;

    const auto widen = [&](const std::vector<Rational>& coeffs) {
        std::vector<Rational> a(num_vars, Rational(0));
        for (std::size_t j = 0; j < coeffs.size() && j < num_vars; ++j) a[j] = coeffs[j];
        return a;
    };

    for (const auto& c : constraints) {
        Row r{widen(c.coeffs), c.rhs};
        if (c.rel == Relation::Eq) {
            eqs.push_back(r);
        } else if (c.rel == Relation::Le) {
            ineqs.push_back(r);
        } else {
            for (auto& v : r.a) v = -v;
            r.b = -r.b;
            ineqs.push_back(r);
        }
    }
    for (std::size_t j = 0; j < num_vars; ++j) {
        Row nonneg{std::vector<Rational>(num_vars, Rational(0)), Rational(0)};
        nonneg.a[j] = Rational(-1);
        ineqs.push_back(nonneg);
    }

    std::vector<bool> active(num_vars, true);

    // Substitute equalities: x_j = (b - sum_l a_l x_l) / a_j.
    while (!eqs.empty()) {
        Row eq = eqs.back();
        eqs.pop_back();
        std::size_t pivot = num_vars;
        for (std::size_t j = 0; j < num_vars; ++j) {
            if (active[j] && eq.a[j] != Rational(0)) {
                pivot = j;
                break;
            }
        }
        if (pivot == num_vars) {
            if (eq.b != Rational(0)) return false; // 0 = b contradiction
            continue;
        }
        const Rational piv = eq.a[pivot];
        const auto substitute = [&](Row& r) {
            if (r.a[pivot] == Rational(0)) return;
            const Rational f = r.a[pivot] / piv;
            for (std::size_t j = 0; j < num_vars; ++j) r.a[j] -= f * eq.a[j];
            r.b -= f * eq.b;
            r.a[pivot] = Rational(0);
        };
        for (auto& r : eqs) substitute(r);
        for (auto& r : ineqs) substitute(r);
        active[pivot] = false;
    }

    // Canonical form for dedup: scale so the first nonzero coefficient is +-1.
    const auto canonical = [&](const Row& r) {
        Row out = r;
        Rational scale(0);
        for (std::size_t j = 0; j < num_vars; ++j) {
            if (out.a[j] != Rational(0)) {
                scale = boost::abs(out.a[j]);
                break;
            }
        }
        if (scale != Rational(0)) {
            for (auto& v : out.a) v /= scale;
            out.b /= scale;
        }
        return out;
    };

    const auto key_of = [&](const Row& r) {
        std::vector<Rational> key = r.a;
        key.push_back(r.b);
        return key;
    };

    // Fourier-Motzkin elimination of the remaining variables.
    for (std::size_t j = 0; j < num_vars; ++j) {
        if (!active[j]) continue;
        std::vector<Row> pos, neg, zero;
        for (const auto& r : ineqs) {
            if (r.a[j] > Rational(0)) pos.push_back(r);
            else if (r.a[j] < Rational(0)) neg.push_back(r);
            else zero.push_back(r);
        }
        std::vector<Row> next = zero;
        std::set<std::vector<Rational>> seen;
        for (const auto& r : next) seen.insert(key_of(canonical(r)));
        for (const auto& p : pos) {
            for (const auto& n : neg) {
                // p: a_j x_j <= bp - rest_p, n gives a lower bound; combine.
                Row combined{std::vector<Rational>(num_vars, Rational(0)), Rational(0)};
                const Rational fp = p.a[j];
                const Rational fn = -n.a[j];
                for (std::size_t l = 0; l < num_vars; ++l) {
                    combined.a[l] = fn * p.a[l] + fp * n.a[l];
                }
                combined.b = fn * p.b + fp * n.b;
                combined.a[j] = Rational(0);
                const Row canon = canonical(combined);
                if (seen.insert(key_of(canon)).second) next.push_back(canon);
            }
        }
        ineqs = std::move(next);
        active[j] = false;
    }

    for (const auto& r : ineqs) {
        bool all_zero = true;
        for (const auto& v : r.a) {
            if (v != Rational(0)) {
                all_zero = false;
                break;
            }
        }
        if (all_zero && r.b < Rational(0)) return false;
    }
    return true;
}

} // namespace qmtest
