#pragma once

// The sphere machine: a point particle sits at v on the unit sphere, an
// elastic band is stretched between u and -u, the particle falls onto the
// elastic and sticks at the projection cos(theta). The elastic breaks at an
// unknown point; the particle is pulled to whichever endpoint its piece is
// still attached to. The fluctuation parameter epsilon shrinks the breakable
// segment: epsilon = 1 gives the full quantum statistics, epsilon = 0 a
// deterministic classical machine.

#include <stdexcept>
#include <utility>

#include "qmachine/geometry.hpp"

namespace qmachine {

struct MachineState {
    UnitVector3 direction;
};

class EpsilonMeasurement {
public:
    EpsilonMeasurement(UnitVector3 direction, double epsilon)
        : direction_(direction), epsilon_(epsilon) {
        if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
            throw std::invalid_argument("EpsilonMeasurement: epsilon must be in [0,1]");
        }
    }

    const UnitVector3& direction() const { return direction_; }
    double epsilon() const { return epsilon_; }

private:
    UnitVector3 direction_;
    double epsilon_;
};

enum class Outcome {
    O1, // particle ends up at u
    O2  // particle ends up at -u
};

class OutcomeDistribution {
public:
    OutcomeDistribution(double p1, double p2) : p1_(p1), p2_(p2) {
        if (p1 < -1e-12 || p1 > 1.0 + 1e-12 || std::abs(p1 + p2 - 1.0) > 1e-12) {
            throw std::invalid_argument("OutcomeDistribution: not a normalized two-outcome distribution");
        }
    }

    double p1() const { return p1_; }
    double p2() const { return p2_; }

private:
    double p1_, p2_;
};

// Break coordinate along the elastic, +1 at u and -1 at -u.
struct BreakPoint {
    double s;
};

inline OutcomeDistribution outcome_probabilities(const EpsilonMeasurement& m,
                                                 const MachineState& p) {
    const double c = std::clamp(m.direction().dot(p.direction), -1.0, 1.0);
    double p1;
    if (m.epsilon() > 0.0) {
        p1 = std::clamp((m.epsilon() + c) / (2.0 * m.epsilon()), 0.0, 1.0);
    } else {
        // Zero fluctuation: deterministic sign rule, c = 0 resolves to O1.
        p1 = (c >= 0.0) ? 1.0 : 0.0;
    }
    return OutcomeDistribution(p1, 1.0 - p1);
}

inline BreakPoint sample_break_point(const EpsilonMeasurement& m, double unit_draw) {
    return BreakPoint{-m.epsilon() + 2.0 * m.epsilon() * unit_draw};
}

inline Outcome resolve_outcome(const EpsilonMeasurement& m, const MachineState& p,
                               const BreakPoint& b) {
    if (std::abs(b.s) > m.epsilon() + 1e-15) {
        throw std::invalid_argument("resolve_outcome: break point outside [-epsilon, epsilon]");
    }
    const double c = std::clamp(m.direction().dot(p.direction), -1.0, 1.0);
    // Breaking below the projection leaves the particle attached to the piece
    // ending at u. The tie s = c resolves to O1.
    return (b.s <= c) ? Outcome::O1 : Outcome::O2;
}

inline MachineState collapse(const EpsilonMeasurement& m, Outcome o) {
    return MachineState{o == Outcome::O1 ? m.direction() : -m.direction()};
}

inline std::pair<Outcome, MachineState> measure(const EpsilonMeasurement& m,
                                                const MachineState& p,
                                                double unit_draw) {
    const Outcome o = resolve_outcome(m, p, sample_break_point(m, unit_draw));
    return {o, collapse(m, o)};
}

} // namespace qmachine
