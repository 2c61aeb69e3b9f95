#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qmachine/machine.hpp"
#include "qmachine/rng.hpp"

namespace qmachine::montecarlo {

struct EstimatorConfig {
    std::uint64_t samples = 1;
    std::uint64_t seed = 0;
    std::uint64_t shards = 1;

    void validate() const {
        if (samples == 0) throw std::invalid_argument("EstimatorConfig: samples must be >= 1");
        if (shards == 0) throw std::invalid_argument("EstimatorConfig: shards must be >= 1");
        if (shards > samples) throw std::invalid_argument("EstimatorConfig: shards must be <= samples");
    }
};

struct FrequencyEstimate {
    std::uint64_t count_o1 = 0;
    std::uint64_t count_o2 = 0;
    double freq_o1 = 0.0;
    double freq_o2 = 0.0;
    double standard_error = 0.0;
    double z_vs_analytic = 0.0;
};

// Ensemble statistics: each sample measures a fresh copy of p, no collapse
// chaining. Samples are distributed over shards; shard k draws from the
// substream keyed (seed, k), so counts are identical for a fixed (seed,
// shards) no matter how shards are scheduled.
inline FrequencyEstimate estimate(const EpsilonMeasurement& m, const MachineState& p,
                                  const EstimatorConfig& cfg) {
    cfg.validate();

    std::uint64_t count_o1 = 0;
    const std::uint64_t per_shard = cfg.samples / cfg.shards;
    const std::uint64_t remainder = cfg.samples % cfg.shards;
    for (std::uint64_t shard = 0; shard < cfg.shards; ++shard) {
        const std::uint64_t n = per_shard + (shard < remainder ? 1 : 0);
        const CounterRng rng(cfg.seed, shard);
        std::uint64_t local = 0;
        for (std::uint64_t i = 0; i < n; ++i) {
            if (measure(m, p, rng.uniform_at(i)).first == Outcome::O1) ++local;
        }
        count_o1 += local;
    }

    FrequencyEstimate est;
    est.count_o1 = count_o1;
    est.count_o2 = cfg.samples - count_o1;
    const double n = static_cast<double>(cfg.samples);
    est.freq_o1 = static_cast<double>(count_o1) / n;
    est.freq_o2 = 1.0 - est.freq_o1;
    est.standard_error = std::sqrt(est.freq_o1 * est.freq_o2 / n);

    const double p1 = outcome_probabilities(m, p).p1();
    const double se_analytic = std::sqrt(p1 * (1.0 - p1) / n);
    est.z_vs_analytic = se_analytic > 0.0 ? (est.freq_o1 - p1) / se_analytic : 0.0;
    return est;
}

struct SweepRow {
    double theta;
    double analytic_p1;
    double empirical_f1;
    double z;
};

// One estimate per grid point, against the state at polar angle theta from
// the measurement axis. Rows preserve grid order.
inline std::vector<SweepRow> sweep_theta(double epsilon, const std::vector<double>& theta_grid,
                                         const EstimatorConfig& cfg) {
    std::vector<SweepRow> rows;
    rows.reserve(theta_grid.size());
    const UnitVector3 u = UnitVector3::normalized(0.0, 0.0, 1.0);
    for (std::size_t i = 0; i < theta_grid.size(); ++i) {
        const double theta = theta_grid[i];
        const MachineState p{UnitVector3::normalized(std::sin(theta), 0.0, std::cos(theta))};
        const EpsilonMeasurement m(u, epsilon);
        EstimatorConfig point_cfg = cfg;
        point_cfg.seed = cfg.seed + i; // independent stream per grid point
        const FrequencyEstimate est = estimate(m, p, point_cfg);
        rows.push_back({theta, outcome_probabilities(m, p).p1(), est.freq_o1, est.z_vs_analytic});
    }
    return rows;
}

} // namespace qmachine::montecarlo
