#pragma once

// Frame functions on the rays of real 3-space: w(u, .) in [0,1] with
// w(u,u) = 1. The frame property -- summing to 1 over every orthogonal
// triad -- singles out the squared inner product; the defect functions
// below measure how far a candidate rule is from having it.

#include <cmath>
#include <cstdint>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmachine/geometry.hpp"
#include "qmachine/rng.hpp"

namespace qmachine::gleason {

class FrameRule {
public:
    virtual ~FrameRule() = default;
    virtual double weight(const UnitVector3& u, const UnitVector3& v) const = 0;
    virtual std::string name() const = 0;
};

// w(u,v) = <u,v>^2, the Born rule.
class BornSquared final : public FrameRule {
public:
    double weight(const UnitVector3& u, const UnitVector3& v) const override {
        const double d = u.dot(v);
        return d * d;
    }
    std::string name() const override { return "born2"; }
};

// w(u,v) = |<u,v>|^p.
class AbsPower final : public FrameRule {
public:
    explicit AbsPower(double p) : p_(p) {
        if (p <= 0.0) throw std::invalid_argument("AbsPower: exponent must be positive");
    }
    double weight(const UnitVector3& u, const UnitVector3& v) const override {
        return std::pow(std::abs(u.dot(v)), p_);
    }
    std::string name() const override { return "abspow:" + std::to_string(p_); }
    double exponent() const { return p_; }

private:
    double p_;
};

class MixtureRule final : public FrameRule {
public:
    MixtureRule(std::vector<std::shared_ptr<const FrameRule>> rules, std::vector<double> weights)
        : rules_(std::move(rules)), weights_(std::move(weights)) {
        if (rules_.empty() || rules_.size() != weights_.size()) {
            throw std::invalid_argument("MixtureRule: rules and weights must match and be nonempty");
        }
        double total = 0.0;
        for (double w : weights_) {
            if (w < 0.0) throw std::invalid_argument("MixtureRule: negative weight");
            total += w;
        }
        if (std::abs(total - 1.0) > 1e-12) {
            throw std::invalid_argument("MixtureRule: weights must sum to 1");
        }
    }
    double weight(const UnitVector3& u, const UnitVector3& v) const override {
        double acc = 0.0;
        for (std::size_t i = 0; i < rules_.size(); ++i) acc += weights_[i] * rules_[i]->weight(u, v);
        return acc;
    }
    std::string name() const override {
        std::string out = "mixture(";
        for (std::size_t i = 0; i < rules_.size(); ++i) {
            if (i) out += ",";
            out += rules_[i]->name();
        }
        return out + ")";
    }

private:
    std::vector<std::shared_ptr<const FrameRule>> rules_;
    std::vector<double> weights_;
};

inline std::shared_ptr<const FrameRule> mixture_rule(
    std::vector<std::shared_ptr<const FrameRule>> rules, std::vector<double> weights) {
    return std::make_shared<MixtureRule>(std::move(rules), std::move(weights));
}

inline double frame_defect(const FrameRule& rule, const UnitVector3& u, const Triad& triad) {
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            if (std::abs(triad.axes[static_cast<std::size_t>(i)].dot(triad.axes[static_cast<std::size_t>(j)])) > 1e-10) {
                throw std::invalid_argument("frame_defect: triad is not orthogonal");
            }
        }
    }
    double sum = 0.0;
    for (const auto& axis : triad.axes) sum += rule.weight(u, axis);
    return std::abs(sum - 1.0);
}

// Uniformly random rotation from a normalized quaternion of the seeded
// stream, applied to the coordinate axes.
inline Triad random_triad(SequentialRng& rng) {
    double q0, q1, q2, q3, n2;
    do {
        q0 = rng.normal();
        q1 = rng.normal();
        q2 = rng.normal();
        q3 = rng.normal();
        n2 = q0 * q0 + q1 * q1 + q2 * q2 + q3 * q3;
    } while (n2 < 1e-12);
    const double n = std::sqrt(n2);
    q0 /= n; q1 /= n; q2 /= n; q3 /= n;

    // Rotation matrix columns = rotated axes.
    return Triad{{UnitVector3::normalized(1 - 2 * (q2 * q2 + q3 * q3), 2 * (q1 * q2 + q0 * q3),
                                          2 * (q1 * q3 - q0 * q2)),
                  UnitVector3::normalized(2 * (q1 * q2 - q0 * q3), 1 - 2 * (q1 * q1 + q3 * q3),
                                          2 * (q2 * q3 + q0 * q1)),
                  UnitVector3::normalized(2 * (q1 * q3 + q0 * q2), 2 * (q2 * q3 - q0 * q1),
                                          1 - 2 * (q1 * q1 + q2 * q2))}};
}

inline UnitVector3 random_ray(SequentialRng& rng) {
    double x, y, z, n2;
    do {
        x = rng.normal();
        y = rng.normal();
        z = rng.normal();
        n2 = x * x + y * y + z * z;
    } while (n2 < 1e-12);
    return UnitVector3::normalized(x, y, z);
}

struct DefectSearchResult {
    double max_defect = 0.0;
    Triad argmax;
};

inline DefectSearchResult max_frame_defect(const FrameRule& rule, const UnitVector3& u,
                                           std::uint64_t trials, std::uint64_t seed) {
    SequentialRng rng(seed);
    DefectSearchResult result{0.0, Triad{{UnitVector3::normalized(1, 0, 0),
                                          UnitVector3::normalized(0, 1, 0),
                                          UnitVector3::normalized(0, 0, 1)}}};
    for (std::uint64_t t = 0; t < trials; ++t) {
        const Triad triad = random_triad(rng);
        const double d = frame_defect(rule, u, triad);
        if (d > result.max_defect) {
            result.max_defect = d;
            result.argmax = triad;
        }
    }
    return result;
}

} // namespace qmachine::gleason
