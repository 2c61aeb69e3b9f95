#pragma once

// Independent quantum-mechanical oracle for the sphere machine: spin-1/2
// states as 2-dimensional complex vectors, the singlet in the 2x2 tensor
// space, and SU(2) rotations. Everything here is standard quantum mechanics;
// none of it touches the elastic-band mechanics, so the two routes to the
// same probabilities stay independent.

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "qmachine/geometry.hpp"

namespace qmachine::hilbert {

using Complex = std::complex<double>;

class Spinor {
public:
    Spinor(Complex a0, Complex a1) : a0_(a0), a1_(a1) {
        const double n2 = std::norm(a0) + std::norm(a1);
        if (std::abs(n2 - 1.0) > 1e-12) {
            throw std::invalid_argument("Spinor: amplitudes not unit-norm");
        }
    }

    Complex a0() const { return a0_; }
    Complex a1() const { return a1_; }

private:
    Complex a0_, a1_;
};

// Amplitudes indexed by (s1, s2) in {+,-}^2, row-major: ++, +-, -+, --.
class Ket4 {
public:
    explicit Ket4(std::array<Complex, 4> amps) : amps_(amps) {
        double n2 = 0.0;
        for (const auto& a : amps_) n2 += std::norm(a);
        if (std::abs(n2 - 1.0) > 1e-12) {
            throw std::invalid_argument("Ket4: amplitudes not unit-norm");
        }
    }

    Complex operator[](int i) const { return amps_[static_cast<std::size_t>(i)]; }

private:
    std::array<Complex, 4> amps_;
};

// 2x2 complex matrix, row-major.
struct Operator2 {
    std::array<Complex, 4> m;

    Complex operator()(int r, int c) const { return m[static_cast<std::size_t>(2 * r + c)]; }

    Operator2 operator*(const Operator2& o) const {
        Operator2 out{};
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c)
                out.m[static_cast<std::size_t>(2 * r + c)] =
                    (*this)(r, 0) * o(0, c) + (*this)(r, 1) * o(1, c);
        return out;
    }

    std::array<Complex, 2> apply(const std::array<Complex, 2>& v) const {
        return {(*this)(0, 0) * v[0] + (*this)(0, 1) * v[1],
                (*this)(1, 0) * v[0] + (*this)(1, 1) * v[1]};
    }
};

// |v> = (cos(theta/2), e^{i phi} sin(theta/2)) with (theta, phi) the polar
// angles of v.
inline Spinor bloch_to_spinor(const UnitVector3& v) {
    const double theta = std::acos(std::clamp(v.z(), -1.0, 1.0));
    const double phi = std::atan2(v.y(), v.x());
    return Spinor(std::cos(theta / 2.0),
                  std::polar(std::sin(theta / 2.0), phi));
}

// Expectation values of the Pauli observables.
inline UnitVector3 spinor_to_bloch(const Spinor& s) {
    const Complex cross = std::conj(s.a0()) * s.a1();
    const double x = 2.0 * cross.real();
    const double y = 2.0 * cross.imag();
    const double z = std::norm(s.a0()) - std::norm(s.a1());
    return UnitVector3::normalized(x, y, z);
}

// Born rule: |<u|v>|^2, equal to cos^2(theta/2) for the angle between u and v.
inline double born_transition(const UnitVector3& u, const UnitVector3& v) {
    const Spinor su = bloch_to_spinor(u);
    const Spinor sv = bloch_to_spinor(v);
    const Complex inner = std::conj(su.a0()) * sv.a0() + std::conj(su.a1()) * sv.a1();
    return std::norm(inner);
}

// (|+-> - |-+>)/sqrt(2) in the z-basis.
inline Ket4 singlet_state() {
    const double r = 1.0 / std::sqrt(2.0);
    return Ket4({Complex(0.0), Complex(r), Complex(-r), Complex(0.0)});
}

// Projector |v><v| for spin-up along v.
inline Operator2 up_projector(const UnitVector3& v) {
    const Spinor s = bloch_to_spinor(v);
    return Operator2{{s.a0() * std::conj(s.a0()), s.a0() * std::conj(s.a1()),
                      s.a1() * std::conj(s.a0()), s.a1() * std::conj(s.a1())}};
}

struct JointTable {
    // p[i][j]: probability of outcome i on side a (0 = up along a) and j on
    // side b.
    std::array<std::array<double, 2>, 2> p;
};

// Born rule on the singlet with projectors along a (first factor) and b
// (second factor), evaluated as a dense 4-dimensional quadratic form.
inline JointTable joint_spin_probabilities(const UnitVector3& a, const UnitVector3& b) {
    const Ket4 psi = singlet_state();
    const Operator2 pa_up = up_projector(a);
    const Operator2 pb_up = up_projector(b);
    const Operator2 id{{Complex(1.0), Complex(0.0), Complex(0.0), Complex(1.0)}};

    JointTable t{};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            Operator2 pa = pa_up;
            Operator2 pb = pb_up;
            if (i == 1) {
                for (int k = 0; k < 4; ++k) pa.m[static_cast<std::size_t>(k)] = id.m[static_cast<std::size_t>(k)] - pa.m[static_cast<std::size_t>(k)];
            }
            if (j == 1) {
                for (int k = 0; k < 4; ++k) pb.m[static_cast<std::size_t>(k)] = id.m[static_cast<std::size_t>(k)] - pb.m[static_cast<std::size_t>(k)];
            }
            // <psi| Pa (x) Pb |psi> over the 4-dim index (r1, r2).
            Complex val(0.0);
            for (int r1 = 0; r1 < 2; ++r1)
                for (int r2 = 0; r2 < 2; ++r2)
                    for (int c1 = 0; c1 < 2; ++c1)
                        for (int c2 = 0; c2 < 2; ++c2)
                            val += std::conj(psi[2 * r1 + r2]) * pa(r1, c1) * pb(r2, c2) *
                                   psi[2 * c1 + c2];
            t.p[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = val.real();
        }
    }
    return t;
}

// E(a,b) = P(++) + P(--) - P(+-) - P(-+); equals -a.b for the singlet.
inline double correlation(const UnitVector3& a, const UnitVector3& b) {
    const JointTable t = joint_spin_probabilities(a, b);
    return t.p[0][0] + t.p[1][1] - t.p[0][1] - t.p[1][0];
}

// exp(-i angle/2 (axis . sigma)) via the closed-form SU(2) exponential.
inline Operator2 spin_rotation(const UnitVector3& axis, double angle) {
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    return Operator2{{Complex(c, -s * axis.z()), Complex(-s * axis.y(), -s * axis.x()),
                      Complex(s * axis.y(), -s * axis.x()), Complex(c, s * axis.z())}};
}

} // namespace qmachine::hilbert
