#pragma once

// Interferometer models on top of the Hilbert module: the delayed-choice
// Mach-Zehnder (insert or remove the second beam splitter) and the
// spinor-rotation interferometer, where a magnetic coil rotates the spin on
// one path and the detection curve shows the 4-pi periodicity. Plus the
// EPR/CHSH demonstration chaining the singlet correlations into the
// embeddability decision.

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "qmachine/bell.hpp"
#include "qmachine/geometry.hpp"
#include "qmachine/hilbert.hpp"

namespace qmachine::experiments {

struct InterferometerConfig {
    bool with_second_splitter = true;
    double extra_phase = 0.0;        // path-difference dial, radians
    double spin_rotation_angle = 0.0; // coil angle chi, radians
};

class DetectorStats {
public:
    DetectorStats(double p_d1, double p_d2) : p_d1_(p_d1), p_d2_(p_d2) {
        if (std::abs(p_d1 + p_d2 - 1.0) > 1e-12) {
            throw std::invalid_argument("DetectorStats: probabilities must sum to 1");
        }
    }
    double p_d1() const { return p_d1_; }
    double p_d2() const { return p_d2_; }

private:
    double p_d1_, p_d2_;
};

namespace detail {

using Complex = std::complex<double>;

// Symmetric beam splitter, i on reflection.
inline std::array<Complex, 2> beam_splitter(const std::array<Complex, 2>& in) {
    const double r = 1.0 / std::sqrt(2.0);
    return {r * (in[0] + Complex(0, 1) * in[1]), r * (Complex(0, 1) * in[0] + in[1])};
}

} // namespace detail

// Two-mode amplitude propagation through the Mach-Zehnder. Detector labels
// are fixed so that the closed interferometer at zero extra phase sends
// everything to D1.
inline DetectorStats wheeler_mz(const InterferometerConfig& cfg) {
    if (!std::isfinite(cfg.extra_phase)) {
        throw std::invalid_argument("wheeler_mz: phase must be finite");
    }
    using detail::Complex;
    std::array<Complex, 2> amps = detail::beam_splitter({Complex(1.0), Complex(0.0)});
    // Mirrors add equal phases on both paths (global, dropped); the dial adds
    // extra_phase on the second path.
    amps[1] *= std::polar(1.0, cfg.extra_phase);
    if (!cfg.with_second_splitter) {
        // Open configuration: each path hits its own detector.
        return DetectorStats(std::norm(amps[0]), std::norm(amps[1]));
    }
    amps = detail::beam_splitter(amps);
    // Two splitters with zero dial route the input to the second output port;
    // that port is D1.
    return DetectorStats(std::norm(amps[1]), std::norm(amps[0]));
}

// Closed interferometer with a spin rotation by chi on one path only; the
// detection probability follows the recombined spinor overlap and is
// 4-pi periodic.
inline DetectorStats rauch_interference(double chi) {
    if (!std::isfinite(chi)) throw std::invalid_argument("rauch_interference: angle must be finite");
    using detail::Complex;
    const UnitVector3 z_axis = UnitVector3::normalized(0.0, 0.0, 1.0);
    const hilbert::Operator2 u = hilbert::spin_rotation(z_axis, chi);
    const std::array<Complex, 2> spin_in = {Complex(1.0), Complex(0.0)};
    const std::array<Complex, 2> rotated = u.apply(spin_in);

    // Coherent recombination: D1 amplitude (per spin component) is
    // (psi + U psi)/2, D2 gets (psi - U psi)/2.
    double p_d1 = 0.0;
    for (int i = 0; i < 2; ++i) {
        p_d1 += std::norm(0.5 * (spin_in[static_cast<std::size_t>(i)] + rotated[static_cast<std::size_t>(i)]));
    }
    p_d1 = std::clamp(p_d1, 0.0, 1.0);
    return DetectorStats(p_d1, 1.0 - p_d1);
}

struct ChshDemoResult {
    double e_ab, e_abp, e_apb, e_apbp;
    double s;
    bool embeddable;
    prob::LPResult lp;
};

inline ChshDemoResult epr_chsh_demo(const UnitVector3& a, const UnitVector3& ap,
                                    const UnitVector3& b, const UnitVector3& bp) {
    ChshDemoResult r{};
    r.e_ab = hilbert::correlation(a, b);
    r.e_abp = hilbert::correlation(a, bp);
    r.e_apb = hilbert::correlation(ap, b);
    r.e_apbp = hilbert::correlation(ap, bp);
    r.s = prob::chsh_score(prob::BellScenario{a, ap, b, bp, r.e_ab, r.e_abp, r.e_apb, r.e_apbp});
    r.lp = prob::kolmogorov_embeddable(prob::singlet_chsh_scenario(a, ap, b, bp));
    r.embeddable = r.lp.feasible;
    return r;
}

} // namespace qmachine::experiments
