#pragma once

// Observed probability tables over named two-outcome experiments, the input
// to the Kolmogorov-embeddability decision. Values carry an exactness flag:
// values stated as decimals or fractions are exact constraints; values
// computed from floating-point sources (e.g. quantum joint tables) are held
// to a 1e-9 band instead.

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qmachine/rational.hpp"

namespace qmachine::prob {

struct StatedValue {
    Rational value;
    bool exact = true;
};

struct Experiment {
    std::string name;
    std::array<std::string, 2> outcomes{{"+", "-"}};
};

struct JointConstraint {
    std::size_t exp_a = 0;
    std::size_t exp_b = 0;
    std::array<StatedValue, 4> table{}; // row-major over (a_out, b_out)
};

struct ConditionalConstraint {
    std::size_t given_exp = 0;
    std::size_t given_outcome = 0;
    std::size_t then_exp = 0;
    std::size_t then_outcome = 0;
    StatedValue p;
};

class ConditionalScenario {
public:
    std::vector<Experiment> experiments;
    std::vector<JointConstraint> joints;
    std::vector<ConditionalConstraint> conditionals;

    std::size_t experiment_index(const std::string& name) const {
        for (std::size_t i = 0; i < experiments.size(); ++i)
            if (experiments[i].name == name) return i;
        throw std::invalid_argument("scenario references undeclared experiment: " + name);
    }

    std::size_t outcome_index(std::size_t exp, const std::string& outcome) const {
        const auto& e = experiments[exp];
        if (outcome == e.outcomes[0]) return 0;
        if (outcome == e.outcomes[1]) return 1;
        throw std::invalid_argument("unknown outcome '" + outcome + "' for experiment " + e.name);
    }

    void validate() const {
        for (const auto& j : joints) {
            Rational total(0);
            for (const auto& v : j.table) {
                if (v.value < Rational(0) || v.value > Rational(1))
                    throw std::invalid_argument("joint table entry outside [0,1]");
                total += v.value;
            }
            if (boost::abs(total - Rational(1)) > Rational(1, 1000000000))
                throw std::invalid_argument("joint table does not sum to 1");
        }
        for (const auto& c : conditionals) {
            if (c.p.value < Rational(0) || c.p.value > Rational(1))
                throw std::invalid_argument("conditional probability outside [0,1]");
        }
    }
};

inline StatedValue stated_from_json(const nlohmann::json& v) {
    if (v.is_string()) return {parse_rational(v.get<std::string>()), true};
    if (v.is_number_integer()) return {Rational(BigInt(v.get<long long>())), true};
    if (v.is_number_float()) {
        // Decimal literals round-trip through their shortest representation.
        return {parse_rational(nlohmann::json(v.get<double>()).dump()), true};
    }
    throw std::invalid_argument("scenario value must be a number or a \"n/d\" string");
}

inline ConditionalScenario scenario_from_json(const nlohmann::json& j) {
    ConditionalScenario s;
    for (const auto& e : j.at("experiments")) {
        Experiment exp;
        exp.name = e.at("name").get<std::string>();
        const auto& outs = e.at("outcomes");
        if (outs.size() != 2) throw std::invalid_argument("experiments must have exactly 2 outcomes");
        exp.outcomes = {outs[0].get<std::string>(), outs[1].get<std::string>()};
        s.experiments.push_back(exp);
    }
    if (j.contains("joints")) {
        for (const auto& jt : j.at("joints")) {
            JointConstraint c;
            c.exp_a = s.experiment_index(jt.at("a").get<std::string>());
            c.exp_b = s.experiment_index(jt.at("b").get<std::string>());
            const auto& table = jt.at("table");
            if (table.size() != 4) throw std::invalid_argument("joint table must have 4 entries");
            for (std::size_t i = 0; i < 4; ++i) c.table[i] = stated_from_json(table[i]);
            s.joints.push_back(c);
        }
    }
    if (j.contains("conditionals")) {
        for (const auto& ct : j.at("conditionals")) {
            ConditionalConstraint c;
            c.given_exp = s.experiment_index(ct.at("given").at("exp").get<std::string>());
            c.given_outcome = s.outcome_index(c.given_exp, ct.at("given").at("outcome").get<std::string>());
            c.then_exp = s.experiment_index(ct.at("then").at("exp").get<std::string>());
            c.then_outcome = s.outcome_index(c.then_exp, ct.at("then").at("outcome").get<std::string>());
            c.p = stated_from_json(ct.at("p"));
            s.conditionals.push_back(c);
        }
    }
    s.validate();
    return s;
}

} // namespace qmachine::prob
