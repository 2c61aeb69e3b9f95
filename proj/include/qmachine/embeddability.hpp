#pragma once

// Kolmogorov embeddability: do the stated statistics admit one classical
// probability space? The hidden-variable space is the set of deterministic
// outcome assignments (2^k vertices for k two-outcome experiments); a
// scenario is embeddable iff some distribution mu over the vertices
// reproduces every stated joint and conditional. That is a linear
// feasibility problem, solved exactly.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qmachine/scenario.hpp"
#include "qmachine/simplex.hpp"

namespace qmachine::prob {

struct ViolatedFacet {
    std::string name;
    double margin = 0.0;
};

struct LPResult {
    bool feasible = false;
    std::vector<Rational> witness; // distribution over the 2^k assignments
    std::optional<ViolatedFacet> violated_facet;
};

constexpr std::size_t kMaxExperiments = 10;

// Outcome of experiment e under deterministic assignment lambda (a bitmask).
inline std::size_t assigned_outcome(std::size_t lambda, std::size_t e) {
    return (lambda >> e) & 1u;
}

namespace detail {

inline Rational lp_tolerance() { return Rational(1, BigInt(1000000000)); }

// Joint constraint rows: sum over matching assignments = stated value,
// widened to a +-1e-9 band for inexact values.
inline void append_value_rows(std::vector<lp::Constraint>& rows,
                              std::vector<Rational> coeffs, const StatedValue& v) {
    if (v.exact) {
        rows.push_back({coeffs, lp::Relation::Eq, v.value});
    } else {
        rows.push_back({coeffs, lp::Relation::Le, v.value + lp_tolerance()});
        rows.push_back({std::move(coeffs), lp::Relation::Ge, v.value - lp_tolerance()});
    }
}

} // namespace detail

inline std::vector<lp::Constraint> embedding_constraints(const ConditionalScenario& s) {
    const std::size_t k = s.experiments.size();
    const std::size_t vertices = std::size_t{1} << k;
    std::vector<lp::Constraint> rows;

    std::vector<Rational> ones(vertices, Rational(1));
    rows.push_back({std::move(ones), lp::Relation::Eq, Rational(1)});

    for (const auto& j : s.joints) {
        for (std::size_t i = 0; i < 2; ++i) {
            for (std::size_t o = 0; o < 2; ++o) {
                std::vector<Rational> coeffs(vertices, Rational(0));
                for (std::size_t lambda = 0; lambda < vertices; ++lambda) {
                    if (assigned_outcome(lambda, j.exp_a) == i &&
                        assigned_outcome(lambda, j.exp_b) == o) {
                        coeffs[lambda] = Rational(1);
                    }
                }
                detail::append_value_rows(rows, std::move(coeffs), j.table[2 * i + o]);
            }
        }
    }

    // P(then | given) = q linearized as P(then, given) - q P(given) = 0.
    for (const auto& c : s.conditionals) {
        std::vector<Rational> coeffs(vertices, Rational(0));
        for (std::size_t lambda = 0; lambda < vertices; ++lambda) {
            const bool given = assigned_outcome(lambda, c.given_exp) == c.given_outcome;
            const bool then = assigned_outcome(lambda, c.then_exp) == c.then_outcome;
            if (given) coeffs[lambda] = (then ? Rational(1) - c.p.value : -c.p.value);
        }
        detail::append_value_rows(rows, std::move(coeffs), StatedValue{Rational(0), c.p.exact});
    }
    return rows;
}

// CHSH facet scan over correlation-only four-experiment scenarios; used to
// name the violated inequality when the LP says infeasible.
inline std::optional<ViolatedFacet> chsh_facet_violation(const ConditionalScenario& s) {
    if (s.experiments.size() != 4 || s.joints.size() < 4) return std::nullopt;
    // Correlations E(a,b) from the stated joints.
    struct Edge {
        std::size_t a, b;
        double e;
    };
    std::vector<Edge> edges;
    for (const auto& j : s.joints) {
        if (j.exp_a == j.exp_b) continue;
        const double e = to_double(j.table[0].value) + to_double(j.table[3].value) -
                         to_double(j.table[1].value) - to_double(j.table[2].value);
        edges.push_back({j.exp_a, j.exp_b, e});
    }
    if (edges.size() != 4) return std::nullopt;

    const auto find_edge = [&](std::size_t a, std::size_t b) -> const Edge* {
        for (const auto& e : edges)
            if ((e.a == a && e.b == b) || (e.a == b && e.b == a)) return &e;
        return nullptr;
    };

    // Identify the bipartition: experiments a, a' measured against b, b'.
    for (std::size_t a = 0; a < 4; ++a) {
        for (std::size_t ap = a + 1; ap < 4; ++ap) {
            std::vector<std::size_t> rest;
            for (std::size_t x = 0; x < 4; ++x)
                if (x != a && x != ap) rest.push_back(x);
            const Edge* ab = find_edge(a, rest[0]);
            const Edge* abp = find_edge(a, rest[1]);
            const Edge* apb = find_edge(ap, rest[0]);
            const Edge* apbp = find_edge(ap, rest[1]);
            if (!ab || !abp || !apb || !apbp) continue;
            const double e1 = ab->e, e2 = abp->e, e3 = apb->e, e4 = apbp->e;
            const double combos[4] = {e1 + e2 + e3 - e4, e1 + e2 - e3 + e4,
                                      e1 - e2 + e3 + e4, -e1 + e2 + e3 + e4};
            for (int ci = 0; ci < 4; ++ci) {
                if (std::abs(combos[ci]) > 2.0) {
                    return ViolatedFacet{
                        "CHSH(" + s.experiments[a].name + "," + s.experiments[ap].name + ";" +
                            s.experiments[rest[0]].name + "," + s.experiments[rest[1]].name + ")",
                        std::abs(combos[ci]) - 2.0};
                }
            }
            return std::nullopt; // a valid bipartition exists but no facet is violated
        }
    }
    return std::nullopt;
}

inline LPResult kolmogorov_embeddable(const ConditionalScenario& s) {
    s.validate();
    const std::size_t k = s.experiments.size();
    if (k == 0) throw std::invalid_argument("kolmogorov_embeddable: no experiments");
    if (k > kMaxExperiments) {
        throw std::invalid_argument("kolmogorov_embeddable: more than " +
                                    std::to_string(kMaxExperiments) + " experiments");
    }
    // A conditional whose conditioning event is stated to have zero
    // probability cannot be linearized meaningfully.
    for (const auto& c : s.conditionals) {
        for (const auto& j : s.joints) {
            if (j.exp_a != c.given_exp && j.exp_b != c.given_exp) continue;
            Rational marginal(0);
            for (std::size_t i = 0; i < 2; ++i) {
                for (std::size_t o = 0; o < 2; ++o) {
                    const bool match = (j.exp_a == c.given_exp && i == c.given_outcome) ||
                                       (j.exp_b == c.given_exp && o == c.given_outcome);
                    if (match) marginal += j.table[2 * i + o].value;
                }
            }
            if (marginal == Rational(0)) {
                throw std::invalid_argument(
                    "conditional on zero-probability event: experiment " +
                    s.experiments[c.given_exp].name + " outcome " +
                    s.experiments[c.given_exp].outcomes[c.given_outcome]);
            }
        }
    }

    const std::size_t vertices = std::size_t{1} << k;
    const auto rows = embedding_constraints(s);
    const auto lp = lp::solve_feasibility(vertices, rows);

    LPResult result;
    result.feasible = lp.feasible;
    if (lp.feasible) {
        result.witness = lp.point;
    } else {
        if (auto facet = chsh_facet_violation(s)) {
            result.violated_facet = facet;
        } else {
            result.violated_facet =
                ViolatedFacet{"phase1-infeasibility", to_double(lp.infeasibility_gap)};
        }
    }
    return result;
}

// Independent re-check that a witness reproduces every constraint within
// 1e-9; does not reuse any solver state.
inline bool witness_reproduces(const ConditionalScenario& s,
                               const std::vector<Rational>& witness) {
    const Rational tol = detail::lp_tolerance();
    Rational total(0);
    for (const auto& w : witness) {
        if (w < Rational(0)) return false;
        total += w;
    }
    if (boost::abs(total - Rational(1)) > tol) return false;

    const std::size_t vertices = witness.size();
    for (const auto& j : s.joints) {
        for (std::size_t i = 0; i < 2; ++i) {
            for (std::size_t o = 0; o < 2; ++o) {
                Rational sum(0);
                for (std::size_t lambda = 0; lambda < vertices; ++lambda) {
                    if (assigned_outcome(lambda, j.exp_a) == i &&
                        assigned_outcome(lambda, j.exp_b) == o) {
                        sum += witness[lambda];
                    }
                }
                if (boost::abs(sum - j.table[2 * i + o].value) > tol) return false;
            }
        }
    }
    for (const auto& c : s.conditionals) {
        Rational joint(0), marginal(0);
        for (std::size_t lambda = 0; lambda < vertices; ++lambda) {
            if (assigned_outcome(lambda, c.given_exp) != c.given_outcome) continue;
            marginal += witness[lambda];
            if (assigned_outcome(lambda, c.then_exp) == c.then_outcome) joint += witness[lambda];
        }
        if (boost::abs(joint - c.p.value * marginal) > tol) return false;
    }
    return true;
}

} // namespace qmachine::prob
