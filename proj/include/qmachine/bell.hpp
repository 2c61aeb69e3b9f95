#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include "qmachine/embeddability.hpp"
#include "qmachine/geometry.hpp"
#include "qmachine/hilbert.hpp"

namespace qmachine::prob {

struct BellScenario {
    UnitVector3 a, a_prime, b, b_prime;
    // E(x,y) for the four setting pairs.
    double e_ab, e_abp, e_apb, e_apbp;

    void validate() const {
        for (double e : {e_ab, e_abp, e_apb, e_apbp}) {
            if (std::abs(e) > 1.0 + 1e-12) {
                throw std::invalid_argument("BellScenario: |E| must not exceed 1");
            }
        }
    }
};

inline double chsh_score(const BellScenario& s) {
    s.validate();
    return s.e_ab + s.e_abp + s.e_apb - s.e_apbp;
}

// All eight CHSH-type combinations within the classical bound.
inline bool fine_consistency(const BellScenario& s) {
    s.validate();
    const double e1 = s.e_ab, e2 = s.e_abp, e3 = s.e_apb, e4 = s.e_apbp;
    const double combos[4] = {e1 + e2 + e3 - e4, e1 + e2 - e3 + e4,
                              e1 - e2 + e3 + e4, -e1 + e2 + e3 + e4};
    for (double c : combos) {
        if (std::abs(c) > 2.0) return false;
    }
    return true;
}

// Correlation-only encoding with uniform marginals:
// P(i,j) = (1 + (-1)^{i+j} E)/4.
inline ConditionalScenario bell_correlation_scenario(const BellScenario& s) {
    s.validate();
    ConditionalScenario sc;
    sc.experiments = {{"a", {{"+", "-"}}}, {"a'", {{"+", "-"}}},
                      {"b", {{"+", "-"}}}, {"b'", {{"+", "-"}}}};

    const auto joint = [](std::size_t ea, std::size_t eb, double e) {
        JointConstraint j;
        j.exp_a = ea;
        j.exp_b = eb;
        for (std::size_t i = 0; i < 2; ++i) {
            for (std::size_t o = 0; o < 2; ++o) {
                const double sign = (i == o) ? 1.0 : -1.0;
                j.table[2 * i + o] = StatedValue{rational_from_double((1.0 + sign * e) / 4.0), false};
            }
        }
        return j;
    };
    sc.joints = {joint(0, 2, s.e_ab), joint(0, 3, s.e_abp),
                 joint(1, 2, s.e_apb), joint(1, 3, s.e_apbp)};
    return sc;
}

// Scenario built from the four singlet joint tables at the given settings.
inline ConditionalScenario singlet_chsh_scenario(const UnitVector3& a, const UnitVector3& ap,
                                                 const UnitVector3& b, const UnitVector3& bp) {
    ConditionalScenario sc;
    sc.experiments = {{"a", {{"+", "-"}}}, {"a'", {{"+", "-"}}},
                      {"b", {{"+", "-"}}}, {"b'", {{"+", "-"}}}};
    const std::array<std::pair<std::size_t, std::size_t>, 4> pairs{
        {{0, 2}, {0, 3}, {1, 2}, {1, 3}}};
    const std::array<std::pair<UnitVector3, UnitVector3>, 4> dirs{
        {{a, b}, {a, bp}, {ap, b}, {ap, bp}}};
    for (std::size_t q = 0; q < 4; ++q) {
        const auto table = hilbert::joint_spin_probabilities(dirs[q].first, dirs[q].second);
        JointConstraint j;
        j.exp_a = pairs[q].first;
        j.exp_b = pairs[q].second;
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t o = 0; o < 2; ++o)
                j.table[2 * i + o] = StatedValue{rational_from_double(table.p[i][o]), false};
        sc.joints.push_back(j);
    }
    return sc;
}

} // namespace qmachine::prob
